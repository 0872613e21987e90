#ifndef OECS_INTERP_HPP
#define OECS_INTERP_HPP

#include <cstddef>
#include <vector>

#include "oecs/grid.hpp"
#include "oecs/vec2.hpp"

namespace oecs {

// Catmull-Rom cubic convolution weights for the 4-node stencil
// {i-1, i, i+1, i+2} at fractional offset f in [0,1) from node i.
// C1 across cell edges and exact on quadratics in the interior.
inline void cubic_weights(double f, double w[4]) {
    const double f2 = f * f, f3 = f2 * f;
    w[0] = -0.5 * f3 + f2 - 0.5 * f;
    w[1] = 1.5 * f3 - 2.5 * f2 + 1.0;
    w[2] = -1.5 * f3 + 2.0 * f2 + 0.5 * f;
    w[3] = 0.5 * f3 - 0.5 * f2;
}

// One scalar snapshot on a grid, with linear-extrapolation ghost nodes so the
// 4x4 stencil is usable over the full grid box (keeps linear fields exact at
// the edges).
class BicubicSlice {
public:
    BicubicSlice(const double* data, int nx, int ny) : data_(data), nx_(nx), ny_(ny) {}

    // ix in [-1, nx], iy in [-1, ny]; one ghost ring, linearly extrapolated.
    double node(int ix, int iy) const {
        if (ix < 0) return 2.0 * node(0, iy) - node(1, iy);
        if (ix > nx_ - 1) return 2.0 * node(nx_ - 1, iy) - node(nx_ - 2, iy);
        if (iy < 0) return 2.0 * at(ix, 0) - at(ix, 1);
        if (iy > ny_ - 1) return 2.0 * at(ix, ny_ - 1) - at(ix, ny_ - 2);
        return at(ix, iy);
    }

    // gx, gy: fractional grid indices.
    double sample(double gx, double gy) const {
        int ix = static_cast<int>(std::floor(gx));
        int iy = static_cast<int>(std::floor(gy));
        // Keep queries at the far edge inside the last cell.
        if (ix > nx_ - 2) ix = nx_ - 2;
        if (ix < 0) ix = 0;
        if (iy > ny_ - 2) iy = ny_ - 2;
        if (iy < 0) iy = 0;
        double wx[4], wy[4];
        cubic_weights(gx - ix, wx);
        cubic_weights(gy - iy, wy);
        double acc = 0.0;
        if (ix >= 1 && ix <= nx_ - 3 && iy >= 1 && iy <= ny_ - 3) {
            // Interior fast path: whole stencil is in the stored grid.
            const double* base = data_ + static_cast<std::size_t>(iy - 1) * nx_ + (ix - 1);
            for (int j = 0; j < 4; ++j) {
                const double* row = base + static_cast<std::size_t>(j) * nx_;
                acc += wy[j] * (wx[0] * row[0] + wx[1] * row[1] + wx[2] * row[2] + wx[3] * row[3]);
            }
            return acc;
        }
        for (int j = 0; j < 4; ++j) {
            double row = 0.0;
            for (int i = 0; i < 4; ++i) row += wx[i] * node(ix - 1 + i, iy - 1 + j);
            acc += wy[j] * row;
        }
        return acc;
    }

private:
    double at(int ix, int iy) const { return data_[static_cast<std::size_t>(iy) * nx_ + ix]; }

    const double* data_;
    int nx_, ny_;
};

// d/dx of a 1D sampled line with spacing h: 4th-order centered in the
// interior, 2nd-order one-sided within two nodes of each end.
// values are addressed as values[k * stride].
inline double stencil_derivative(const double* values, int n, int k, double h, std::size_t stride) {
    auto at = [&](int i) { return values[static_cast<std::size_t>(i) * stride]; };
    if (k >= 2 && k <= n - 3) {
        return (-at(k + 2) + 8.0 * at(k + 1) - 8.0 * at(k - 1) + at(k - 2)) / (12.0 * h);
    }
    if (k <= 1) {
        return (-3.0 * at(k) + 4.0 * at(k + 1) - at(k + 2)) / (2.0 * h);
    }
    return (3.0 * at(k) - 4.0 * at(k - 1) + at(k - 2)) / (2.0 * h);
}

} // namespace oecs

#endif
