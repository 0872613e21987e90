#ifndef OECS_CURVE_HPP
#define OECS_CURVE_HPP

#include <vector>

#include "oecs/grid.hpp"
#include "oecs/vec2.hpp"

namespace oecs {

enum class ChiBranch { Plus, Minus };

inline const char* branch_name(ChiBranch b) { return b == ChiBranch::Plus ? "plus" : "minus"; }

// Arclength-parametrized, counterclockwise closed polyline. Vertices are in
// grid coordinates, arclengths in meters (tangent-plane metric); the last
// vertex is NOT a repeat of the first.
struct ClosedCurve {
    std::vector<Vec2> vertices;
    std::vector<double> arclength;  // cumulative, arclength[0] = 0
    double sigma = 0.0;             // perimeter [m]
    double mu = 0.0;                // tangential stretching rate [1/s]
    ChiBranch branch = ChiBranch::Plus;
    double time_days = 0.0;
    bool hyperbolic = true;         // cleared when |1 - rho2| <= eps_floq

    int size() const { return static_cast<int>(vertices.size()); }
};

// Physical distance between two grid-coordinate points, metric evaluated at
// the segment midpoint.
double physical_distance(const Vec2& a, const Vec2& b, const GridSpec& grid);

// Signed enclosed area [m^2]; positive for counterclockwise rings.
// Cartesian: shoelace. Geographic: Green's theorem on the sphere,
// A = -R^2 * closed-integral sin(lat) d(lon), trapezoid per edge.
double polygon_signed_area(const std::vector<Vec2>& ring, const GridSpec& grid);

double ring_perimeter(const std::vector<Vec2>& ring, const GridSpec& grid);

// Plain grid-coordinate centroid of the polygon (used for grouping and
// deterministic ordering, not for physical quantities).
Vec2 polygon_centroid(const std::vector<Vec2>& ring);

bool point_in_polygon(const std::vector<Vec2>& ring, const Vec2& p);

// True when no two non-adjacent edges intersect (x-sweep over edges).
bool is_simple_polygon(const std::vector<Vec2>& ring);

// True when any edge of `a` properly intersects an edge of `b`.
bool rings_intersect(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

// Recomputes arclengths/perimeter and enforces counterclockwise orientation.
void finalize_curve(ClosedCurve& curve, const GridSpec& grid);

// Resamples the closed polyline to uniform physical arclength spacing of
// approximately `target_spacing` (at least min_vertices samples). Returns the
// new ring and the exact spacing h = sigma / N.
struct ResampledRing {
    std::vector<Vec2> pos;
    double spacing = 0.0;  // [m]
    double sigma = 0.0;    // [m]
};
ResampledRing resample_uniform(const ClosedCurve& curve, const GridSpec& grid,
                               double target_spacing, int min_vertices = 48);

// Convex hull (monotone chain) of a point set, counterclockwise.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

} // namespace oecs

#endif
