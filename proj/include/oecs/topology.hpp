#ifndef OECS_TOPOLOGY_HPP
#define OECS_TOPOLOGY_HPP

#include <optional>
#include <vector>

#include "oecs/detect_params.hpp"
#include "oecs/flow_field.hpp"

namespace oecs {

enum class SingularityKind { Wedge, Trisector };

// Rate-of-strain tensor singularity: S11 = S22 and S12 = 0, so the
// eigenvector field is undefined there. Generic ones carry Poincare index
// +1/2 (wedge) or -1/2 (trisector).
struct Singularity {
    Vec2 position;           // grid coordinates
    SingularityKind kind = SingularityKind::Wedge;
    double index = 0.0;      // measured e1 winding / 2pi
};

// Transverse segment seeded across a wedge pair, used to start and detect
// limit cycles through the first-return map.
struct PoincareSection {
    Vec2 base;        // grid coordinates (midpoint of the parent pair)
    Vec2 direction;   // unit vector, physical (tangent-plane) components
    double half_length = 0.0;  // [m]
    int parent_a = -1;
    int parent_b = -1;

    // Grid-coordinate point at signed physical offset xi along the section.
    Vec2 at(double xi, const GridSpec& grid) const {
        const Vec2 m = grid.meters_per_unit(base);
        return {base.x + xi * direction.x / m.x, base.y + xi * direction.y / m.y};
    }
};

// Sub-cell zeros of (S11-S22, S12): every cell where both components change
// sign yields a Newton-refined candidate; candidates closer than one cell are
// merged. Degenerate fields (S identically zero) report no transverse zeros.
std::vector<Vec2> find_singularity_positions(const FlowField& field, double t_days,
                                             const DetectParams& params = {});

// Poincare index of the e1 direction field on a small circle around s:
// +1/2 -> wedge, -1/2 -> trisector. Throws NumericalDegeneracy when the
// winding is not a half-integer within tolerance (degenerate or crowded).
SingularityKind classify_singularity(const FlowField& field, double t_days, const Vec2& s,
                                     const DetectParams& params = {});

// Positions + classification; candidates whose classification fails are
// dropped (logged to stderr), matching the non-fatal contract.
std::vector<Singularity> find_singularities(const FlowField& field, double t_days,
                                            const DetectParams& params = {});

// Mutual-nearest-neighbor wedge pairs within d_pair_max become sections based
// at the pair midpoint, directed along the perpendicular bisector, with
// half-length equal to the pair separation (clipped to the grid).
std::vector<PoincareSection> place_sections(const std::vector<Singularity>& singularities,
                                            const FlowField& field,
                                            const DetectParams& params = {});

// e1 winding (radians, multiple of pi for closed loops away from
// singularities) along an arbitrary polyline loop; exposed for the index
// conservation property test.
double e1_winding(const FlowField& field, double t_days, const std::vector<Vec2>& loop);

} // namespace oecs

#endif
