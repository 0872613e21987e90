// Plain serial reference implementations of the hot kernels. These recompute
// everything from the raw dataset arrays with straightforward loops and are
// kept only so tests and the kernel benchmark have an independent baseline to
// compare the production (OpenMP) paths against.

#include <cmath>
#include <vector>

#include "oecs/diagnostics.hpp"
#include "oecs/gridded_field.hpp"
#include "oecs/interp.hpp"

namespace oecs {

StrainGrids compute_strain_grids_serial(const GriddedField& field, double t_days) {
    const VelocityDataset& ds = field.dataset();
    const GridSpec& g = ds.grid;
    const auto tb = field.bracket(t_days);

    // Blend the raw snapshots in time first, then differentiate the blended
    // nodal values. Differentiation is linear, so this matches the production
    // path (differentiate, then blend) up to rounding.
    const std::size_t slice = g.node_count();
    std::vector<double> ub(slice), vb(slice);
    const double* u0 = ds.u.data() + static_cast<std::size_t>(tb.it0) * slice;
    const double* u1 = ds.u.data() + static_cast<std::size_t>(tb.it1) * slice;
    const double* v0 = ds.v.data() + static_cast<std::size_t>(tb.it0) * slice;
    const double* v1 = ds.v.data() + static_cast<std::size_t>(tb.it1) * slice;
    for (std::size_t k = 0; k < slice; ++k) {
        ub[k] = (1.0 - tb.alpha) * u0[k] + tb.alpha * u1[k];
        vb[k] = (1.0 - tb.alpha) * v0[k] + tb.alpha * v1[k];
    }

    StrainGrids out;
    out.nx = g.nx;
    out.ny = g.ny;
    out.d.assign(slice, 0.0);
    out.b.assign(slice, 0.0);
    out.s1.assign(slice, 0.0);
    out.s2.assign(slice, 0.0);

    for (int iy = 0; iy < g.ny; ++iy) {
        const Vec2 m = g.meters_per_unit(g.node_coord(0, iy));
        const double hx = g.dx * m.x;
        const double hy = g.dy * m.y;
        for (int ix = 0; ix < g.nx; ++ix) {
            const double dudx = stencil_derivative(ub.data() + static_cast<std::size_t>(iy) * g.nx,
                                                   g.nx, ix, hx, 1);
            const double dvdx = stencil_derivative(vb.data() + static_cast<std::size_t>(iy) * g.nx,
                                                   g.nx, ix, hx, 1);
            const double dudy = stencil_derivative(ub.data() + ix, g.ny, iy, hy, g.nx);
            const double dvdy = stencil_derivative(vb.data() + ix, g.ny, iy, hy, g.nx);
            const double s12 = 0.5 * (dudy + dvdx);
            const std::size_t k = static_cast<std::size_t>(iy) * g.nx + ix;
            out.d[k] = dudx - dvdy;
            out.b[k] = s12;
            const double mean = 0.5 * (dudx + dvdy);
            const double rad = std::hypot(0.5 * (dudx - dvdy), s12);
            out.s1[k] = mean - rad;
            out.s2[k] = mean + rad;
        }
    }
    return out;
}

DiagnosticFields compute_diagnostics_serial(const GriddedField& field, double t_days,
                                            double earth_omega) {
    const VelocityDataset& ds = field.dataset();
    const GridSpec& g = ds.grid;
    const auto tb = field.bracket(t_days);
    const std::size_t slice = g.node_count();

    std::vector<double> ub(slice), vb(slice);
    const double* u0 = ds.u.data() + static_cast<std::size_t>(tb.it0) * slice;
    const double* u1 = ds.u.data() + static_cast<std::size_t>(tb.it1) * slice;
    const double* v0 = ds.v.data() + static_cast<std::size_t>(tb.it0) * slice;
    const double* v1 = ds.v.data() + static_cast<std::size_t>(tb.it1) * slice;
    for (std::size_t k = 0; k < slice; ++k) {
        ub[k] = (1.0 - tb.alpha) * u0[k] + tb.alpha * u1[k];
        vb[k] = (1.0 - tb.alpha) * v0[k] + tb.alpha * v1[k];
    }

    DiagnosticFields out;
    out.nx = g.nx;
    out.ny = g.ny;
    out.ow.assign(slice, 0.0);
    out.pv.assign(slice, 0.0);
    out.grad_pv_mag.assign(slice, 0.0);

    const bool geographic = g.mode == CoordinateMode::Geographic;
    for (int iy = 0; iy < g.ny; ++iy) {
        const Vec2 m = g.meters_per_unit(g.node_coord(0, iy));
        const double hx = g.dx * m.x;
        const double hy = g.dy * m.y;
        const double f_cor = geographic
            ? 2.0 * earth_omega * std::sin((g.y0 + iy * g.dy) * kDegToRad)
            : 0.0;
        for (int ix = 0; ix < g.nx; ++ix) {
            const double dudx = stencil_derivative(ub.data() + static_cast<std::size_t>(iy) * g.nx,
                                                   g.nx, ix, hx, 1);
            const double dvdx = stencil_derivative(vb.data() + static_cast<std::size_t>(iy) * g.nx,
                                                   g.nx, ix, hx, 1);
            const double dudy = stencil_derivative(ub.data() + ix, g.ny, iy, hy, g.nx);
            const double dvdy = stencil_derivative(vb.data() + ix, g.ny, iy, hy, g.nx);
            const double s12 = 0.5 * (dudy + dvdx);
            const double omega = dvdx - dudy;
            const double s2 = 0.5 * (dudx + dvdy) + std::hypot(0.5 * (dudx - dvdy), s12);
            const std::size_t k = static_cast<std::size_t>(iy) * g.nx + ix;
            out.ow[k] = s2 * s2 - 0.25 * omega * omega;
            out.pv[k] = omega + f_cor;
        }
    }
    for (int iy = 0; iy < g.ny; ++iy) {
        const Vec2 m = g.meters_per_unit(g.node_coord(0, iy));
        const double hx = g.dx * m.x;
        const double hy = g.dy * m.y;
        for (int ix = 0; ix < g.nx; ++ix) {
            const double gx = stencil_derivative(out.pv.data() + static_cast<std::size_t>(iy) * g.nx,
                                                 g.nx, ix, hx, 1);
            const double gy = stencil_derivative(out.pv.data() + ix, g.ny, iy, hy, g.nx);
            out.grad_pv_mag[static_cast<std::size_t>(iy) * g.nx + ix] = std::hypot(gx, gy);
        }
    }
    out.omega_mean = field.omega_mean(t_days);
    return out;
}

} // namespace oecs
