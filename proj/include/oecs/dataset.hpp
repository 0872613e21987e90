#ifndef OECS_DATASET_HPP
#define OECS_DATASET_HPP

#include <cmath>
#include <string>
#include <vector>

#include "oecs/errors.hpp"
#include "oecs/grid.hpp"

namespace oecs {

enum class Provenance { Direct, FromSsh };

// Time-indexed gridded 2D velocity field. Arrays are row-major [t][y][x],
// velocities in m/s on the local tangent plane, times in days, strictly
// increasing. Immutable after validation; all sampling goes through
// GriddedField.
struct VelocityDataset {
    GridSpec grid;
    std::vector<double> times;  // [days]
    std::vector<double> u;      // nt*ny*nx [m/s]
    std::vector<double> v;      // nt*ny*nx [m/s]
    Provenance provenance = Provenance::Direct;

    int nt() const { return static_cast<int>(times.size()); }

    std::size_t index(int it, int iy, int ix) const {
        return (static_cast<std::size_t>(it) * grid.ny + iy) * grid.nx + ix;
    }

    void validate() const {
        grid.validate();
        if (times.empty()) throw DataError("dataset: no time snapshots");
        for (std::size_t k = 1; k < times.size(); ++k) {
            if (!(times[k] > times[k - 1]))
                throw DataError("dataset: times must be strictly increasing (times[" +
                                std::to_string(k - 1) + "]=" + std::to_string(times[k - 1]) +
                                ", times[" + std::to_string(k) + "]=" + std::to_string(times[k]) + ")");
        }
        const std::size_t expect = static_cast<std::size_t>(nt()) * grid.node_count();
        if (u.size() != expect || v.size() != expect)
            throw DataError("dataset: field shape mismatch, expected nt*ny*nx=" +
                            std::to_string(expect) + " samples, got u=" +
                            std::to_string(u.size()) + " v=" + std::to_string(v.size()));
        for (std::size_t k = 0; k < expect; ++k) {
            if (!std::isfinite(u[k]) || !std::isfinite(v[k]))
                throw DataError("dataset: non-finite sample at flat index " + std::to_string(k));
        }
    }

    // Native time step in days (first interval); the default backward-difference
    // step for time derivatives.
    double native_dt_days() const {
        return times.size() > 1 ? times[1] - times[0] : 1.0;
    }
};

// Sea-surface-height snapshots on a geographic grid, the stream-function
// input of the geostrophic conversion.
struct SshDataset {
    GridSpec grid;
    std::vector<double> times;  // [days]
    std::vector<double> h;      // nt*ny*nx [m]

    int nt() const { return static_cast<int>(times.size()); }

    void validate() const {
        grid.validate();
        if (times.empty()) throw DataError("ssh dataset: no time snapshots");
        for (std::size_t k = 1; k < times.size(); ++k)
            if (!(times[k] > times[k - 1]))
                throw DataError("ssh dataset: times must be strictly increasing");
        const std::size_t expect = static_cast<std::size_t>(nt()) * grid.node_count();
        if (h.size() != expect)
            throw DataError("ssh dataset: field shape mismatch, expected " +
                            std::to_string(expect) + " samples, got " + std::to_string(h.size()));
        for (double s : h)
            if (!std::isfinite(s)) throw DataError("ssh dataset: non-finite sample");
    }
};

} // namespace oecs

#endif
