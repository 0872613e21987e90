#ifndef OECS_GRID_HPP
#define OECS_GRID_HPP

#include <cstddef>
#include <string>

#include "oecs/errors.hpp"
#include "oecs/vec2.hpp"

namespace oecs {

enum class CoordinateMode { Cartesian, Geographic };

// Regular rectangular grid of nodes. In geographic mode coordinates are
// longitude/latitude in degrees; in cartesian mode they are meters.
// Differential operators and arclengths are always expressed on the local
// tangent plane in meters, via meters_per_unit().
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double x0 = 0.0;  // lon0 [deg] or x-origin [m]
    double y0 = 0.0;  // lat0 [deg] or y-origin [m]
    double dx = 0.0;  // dlon [deg] or spacing [m]
    double dy = 0.0;  // dlat [deg] or spacing [m]
    CoordinateMode mode = CoordinateMode::Cartesian;
    double earth_radius = 6.371e6;  // [m], geographic mode only

    void validate() const {
        if (nx < 4 || ny < 4)
            throw DataError("grid: nx and ny must both be >= 4 (got " +
                            std::to_string(nx) + "x" + std::to_string(ny) + ")");
        if (!(dx > 0.0) || !(dy > 0.0))
            throw DataError("grid: dlon and dlat must be positive");
        if (mode == CoordinateMode::Geographic) {
            if (!(earth_radius > 0.0))
                throw DataError("grid: earth_radius must be positive in geographic mode");
            if (y0 <= -90.0 || y_max() >= 90.0)
                throw DataError("grid: latitudes must lie strictly inside (-90, 90) degrees");
        }
    }

    double x_max() const { return x0 + dx * (nx - 1); }
    double y_max() const { return y0 + dy * (ny - 1); }

    bool contains(const Vec2& p) const {
        return p.x >= x0 && p.x <= x_max() && p.y >= y0 && p.y <= y_max();
    }

    // Meters per grid coordinate unit at p (local tangent-plane metric).
    Vec2 meters_per_unit(const Vec2& p) const {
        if (mode == CoordinateMode::Cartesian) return {1.0, 1.0};
        const double cos_lat = std::cos(p.y * kDegToRad);
        return {earth_radius * cos_lat * kDegToRad, earth_radius * kDegToRad};
    }

    // Smallest physical cell edge over the whole grid [m].
    double min_cell_meters() const {
        if (mode == CoordinateMode::Cartesian) return std::min(dx, dy);
        const double lat_edge = std::max(std::abs(y0), std::abs(y_max()));
        const double mx = earth_radius * std::cos(lat_edge * kDegToRad) * kDegToRad * dx;
        const double my = earth_radius * kDegToRad * dy;
        return std::min(mx, my);
    }

    // Physical perimeter of the grid bounding box [m].
    double domain_perimeter_meters() const {
        if (mode == CoordinateMode::Cartesian)
            return 2.0 * (dx * (nx - 1) + dy * (ny - 1));
        const double mid_lat = 0.5 * (y0 + y_max());
        const double wx = earth_radius * std::cos(mid_lat * kDegToRad) * kDegToRad * dx * (nx - 1);
        const double wy = earth_radius * kDegToRad * dy * (ny - 1);
        return 2.0 * (wx + wy);
    }

    Vec2 node_coord(int ix, int iy) const { return {x0 + dx * ix, y0 + dy * iy}; }

    std::size_t node_count() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    }
};

} // namespace oecs

#endif
