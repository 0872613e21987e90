#include "oecs/diagnostics.hpp"

#include <cmath>
#include <queue>

#include "oecs/interp.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oecs {

namespace {

void ow_pv_row(const GriddedField& field, const GriddedField::TimeBracket& tb,
               double earth_omega, int iy, DiagnosticFields& out) {
    const GridSpec& g = field.native_grid();
    const bool geographic = g.mode == CoordinateMode::Geographic;
    const double f_cor = geographic
        ? 2.0 * earth_omega * std::sin((g.y0 + iy * g.dy) * kDegToRad)
        : 0.0;
    for (int ix = 0; ix < g.nx; ++ix) {
        double comp[4];
        for (int c = 0; c < 4; ++c) {
            comp[c] = (1.0 - tb.alpha) * field.gradient_node(c, tb.it0, iy, ix) +
                      tb.alpha * field.gradient_node(c, tb.it1, iy, ix);
        }
        const double s11 = comp[0], s22 = comp[3];
        const double s12 = 0.5 * (comp[1] + comp[2]);
        const double omega = comp[2] - comp[1];
        const double s2 = 0.5 * (s11 + s22) + std::hypot(0.5 * (s11 - s22), s12);
        const std::size_t k = static_cast<std::size_t>(iy) * g.nx + ix;
        out.ow[k] = s2 * s2 - 0.25 * omega * omega;
        out.pv[k] = omega + f_cor;
    }
}

void grad_pv_row(const GridSpec& g, int iy, DiagnosticFields& out) {
    const Vec2 m = g.meters_per_unit(g.node_coord(0, iy));
    const double hx = g.dx * m.x;
    const double hy = g.dy * m.y;
    const double* pv = out.pv.data();
    for (int ix = 0; ix < g.nx; ++ix) {
        const double gx = stencil_derivative(pv + static_cast<std::size_t>(iy) * g.nx,
                                             g.nx, ix, hx, 1);
        const double gy = stencil_derivative(pv + ix, g.ny, iy, hy, g.nx);
        out.grad_pv_mag[static_cast<std::size_t>(iy) * g.nx + ix] = std::hypot(gx, gy);
    }
}

} // namespace

DiagnosticFields compute_diagnostics(const GriddedField& field, double t_days,
                                     Exec exec, double earth_omega) {
    const GridSpec& g = field.native_grid();
    const auto tb = field.bracket(t_days);
    DiagnosticFields out;
    out.nx = g.nx;
    out.ny = g.ny;
    out.ow.assign(g.node_count(), 0.0);
    out.pv.assign(g.node_count(), 0.0);
    out.grad_pv_mag.assign(g.node_count(), 0.0);

    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int iy = 0; iy < g.ny; ++iy) ow_pv_row(field, tb, earth_omega, iy, out);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int iy = 0; iy < g.ny; ++iy) grad_pv_row(g, iy, out);
    } else {
        for (int iy = 0; iy < g.ny; ++iy) ow_pv_row(field, tb, earth_omega, iy, out);
        for (int iy = 0; iy < g.ny; ++iy) grad_pv_row(g, iy, out);
    }
    out.omega_mean = field.omega_mean(t_days);
    return out;
}

std::vector<std::uint8_t> ow_vortical_mask(const DiagnosticFields& diag, double alpha) {
    const std::size_t n = diag.ow.size();
    double mean = 0.0;
    for (double v : diag.ow) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : diag.ow) var += (v - mean) * (v - mean);
    const double sigma = std::sqrt(var / static_cast<double>(n));
    std::vector<std::uint8_t> mask(n, 0);
    for (std::size_t k = 0; k < n; ++k) mask[k] = diag.ow[k] < -alpha * sigma ? 1 : 0;
    return mask;
}

int count_mask_regions(const std::vector<std::uint8_t>& mask, int nx, int ny) {
    std::vector<std::uint8_t> seen(mask.size(), 0);
    int regions = 0;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const std::size_t k0 = static_cast<std::size_t>(iy) * nx + ix;
            if (!mask[k0] || seen[k0]) continue;
            ++regions;
            std::queue<std::pair<int, int>> frontier;
            frontier.push({ix, iy});
            seen[k0] = 1;
            while (!frontier.empty()) {
                auto [cx, cy] = frontier.front();
                frontier.pop();
                const int dx[4] = {1, -1, 0, 0};
                const int dy[4] = {0, 0, 1, -1};
                for (int d = 0; d < 4; ++d) {
                    const int nx2 = cx + dx[d], ny2 = cy + dy[d];
                    if (nx2 < 0 || nx2 >= nx || ny2 < 0 || ny2 >= ny) continue;
                    const std::size_t k = static_cast<std::size_t>(ny2) * nx + nx2;
                    if (mask[k] && !seen[k]) {
                        seen[k] = 1;
                        frontier.push({nx2, ny2});
                    }
                }
            }
        }
    }
    return regions;
}

} // namespace oecs
