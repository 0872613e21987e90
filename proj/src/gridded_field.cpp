#include "oecs/gridded_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oecs/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oecs {

namespace {

// Fills the four gradient grids of snapshot `it` in physical units.
void gradient_slice(const VelocityDataset& ds, int it,
                    std::vector<double> grad[4]) {
    const GridSpec& g = ds.grid;
    const std::size_t slice = g.node_count();
    const double* u = ds.u.data() + static_cast<std::size_t>(it) * slice;
    const double* v = ds.v.data() + static_cast<std::size_t>(it) * slice;
    double* dudx = grad[0].data() + static_cast<std::size_t>(it) * slice;
    double* dudy = grad[1].data() + static_cast<std::size_t>(it) * slice;
    double* dvdx = grad[2].data() + static_cast<std::size_t>(it) * slice;
    double* dvdy = grad[3].data() + static_cast<std::size_t>(it) * slice;

    for (int iy = 0; iy < g.ny; ++iy) {
        const Vec2 m = g.meters_per_unit(g.node_coord(0, iy));
        const double hx = g.dx * m.x;  // meters per x-node step at this row
        const double hy = g.dy * m.y;
        const double* urow = u + static_cast<std::size_t>(iy) * g.nx;
        const double* vrow = v + static_cast<std::size_t>(iy) * g.nx;
        for (int ix = 0; ix < g.nx; ++ix) {
            const std::size_t k = static_cast<std::size_t>(iy) * g.nx + ix;
            dudx[k] = stencil_derivative(urow, g.nx, ix, hx, 1);
            dvdx[k] = stencil_derivative(vrow, g.nx, ix, hx, 1);
            dudy[k] = stencil_derivative(u + ix, g.ny, iy, hy, g.nx);
            dvdy[k] = stencil_derivative(v + ix, g.ny, iy, hy, g.nx);
        }
    }
}

} // namespace

GriddedField::GriddedField(std::shared_ptr<const VelocityDataset> ds, Exec exec)
    : ds_(std::move(ds)) {
    ds_->validate();
    const std::size_t total = static_cast<std::size_t>(ds_->nt()) * ds_->grid.node_count();
    for (auto& gcomp : grad_) gcomp.assign(total, 0.0);

    const int nt = ds_->nt();
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int it = 0; it < nt; ++it) gradient_slice(*ds_, it, grad_);
    } else {
        for (int it = 0; it < nt; ++it) gradient_slice(*ds_, it, grad_);
    }

    // Trapezoid area weights with the metric row factor; used for the domain
    // mean vorticity.
    const GridSpec& g = ds_->grid;
    area_weight_.assign(g.node_count(), 0.0);
    for (int iy = 0; iy < g.ny; ++iy) {
        const Vec2 m = g.meters_per_unit(g.node_coord(0, iy));
        const double wy = (iy == 0 || iy == g.ny - 1) ? 0.5 : 1.0;
        for (int ix = 0; ix < g.nx; ++ix) {
            const double wx = (ix == 0 || ix == g.nx - 1) ? 0.5 : 1.0;
            area_weight_[static_cast<std::size_t>(iy) * g.nx + ix] = wx * wy * m.x * m.y;
        }
    }
    area_weight_sum_ = 0.0;
    for (double w : area_weight_) area_weight_sum_ += w;

    dt_back_days_ = ds_->native_dt_days();
}

GriddedField::TimeBracket GriddedField::bracket(double t_days) const {
    const auto& times = ds_->times;
    const double span = std::max(times.back() - times.front(), 1.0);
    const double tol = 1e-9 * span;
    if (t_days < times.front() - tol || t_days > times.back() + tol)
        throw DomainError("time " + std::to_string(t_days) + " outside dataset span [" +
                          std::to_string(times.front()) + ", " + std::to_string(times.back()) + "] days");
    if (times.size() == 1) return {0, 0, 0.0};
    auto it = std::upper_bound(times.begin(), times.end(), t_days);
    int i1 = static_cast<int>(it - times.begin());
    i1 = std::clamp(i1, 1, static_cast<int>(times.size()) - 1);
    const int i0 = i1 - 1;
    double alpha = (t_days - times[i0]) / (times[i1] - times[i0]);
    alpha = std::clamp(alpha, 0.0, 1.0);
    return {i0, i1, alpha};
}

double GriddedField::sample_pair(const double* slice0, const double* slice1,
                                 double alpha, double gx, double gy) const {
    const GridSpec& g = ds_->grid;
    const BicubicSlice b0(slice0, g.nx, g.ny);
    if (alpha == 0.0) return b0.sample(gx, gy);
    const BicubicSlice b1(slice1, g.nx, g.ny);
    return (1.0 - alpha) * b0.sample(gx, gy) + alpha * b1.sample(gx, gy);
}

Vec2 GriddedField::velocity(const Vec2& p, double t_days) const {
    const GridSpec& g = ds_->grid;
    if (!g.contains(p))
        throw DomainError("position (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                          ") outside grid");
    const TimeBracket tb = bracket(t_days);
    const double gx = (p.x - g.x0) / g.dx;
    const double gy = (p.y - g.y0) / g.dy;
    const std::size_t slice = g.node_count();
    const double* u0 = ds_->u.data() + static_cast<std::size_t>(tb.it0) * slice;
    const double* u1 = ds_->u.data() + static_cast<std::size_t>(tb.it1) * slice;
    const double* v0 = ds_->v.data() + static_cast<std::size_t>(tb.it0) * slice;
    const double* v1 = ds_->v.data() + static_cast<std::size_t>(tb.it1) * slice;
    return {sample_pair(u0, u1, tb.alpha, gx, gy), sample_pair(v0, v1, tb.alpha, gx, gy)};
}

Mat2 GriddedField::velocity_gradient(const Vec2& p, double t_days) const {
    const GridSpec& g = ds_->grid;
    if (!g.contains(p))
        throw DomainError("position (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                          ") outside grid");
    const TimeBracket tb = bracket(t_days);
    const double gx = (p.x - g.x0) / g.dx;
    const double gy = (p.y - g.y0) / g.dy;
    const std::size_t slice = g.node_count();
    double comp[4];
    for (int c = 0; c < 4; ++c) {
        const double* c0 = grad_[c].data() + static_cast<std::size_t>(tb.it0) * slice;
        const double* c1 = grad_[c].data() + static_cast<std::size_t>(tb.it1) * slice;
        comp[c] = sample_pair(c0, c1, tb.alpha, gx, gy);
    }
    // comp = {dudx, dudy, dvdx, dvdy}
    return {comp[0], comp[1], comp[2], comp[3]};
}

Mat2 GriddedField::strain_time_derivative(const Vec2& p, double t_days) const {
    if (ds_->nt() == 1) return {};  // single snapshot: no time dependence
    const double t_prev = t_days - dt_back_days_;
    const double tol = 1e-9 * std::max(ds_->times.back() - ds_->times.front(), 1.0);
    if (t_prev < ds_->times.front() - tol)
        throw InsufficientHistoryError(
            "dS/dt at t=" + std::to_string(t_days) + " days needs a sample at t-" +
            std::to_string(dt_back_days_) + "; advance the analysis start time or reduce dt_back");
    const Mat2 s_now = velocity_gradient(p, t_days).sym();
    const Mat2 s_prev = velocity_gradient(p, t_prev).sym();
    return (s_now - s_prev) * (1.0 / (dt_back_days_ * kSecondsPerDay));
}

double GriddedField::omega_mean(double t_days) const {
    const TimeBracket tb = bracket(t_days);
    const GridSpec& g = ds_->grid;
    const std::size_t slice = g.node_count();
    const double* dudy0 = grad_[1].data() + static_cast<std::size_t>(tb.it0) * slice;
    const double* dudy1 = grad_[1].data() + static_cast<std::size_t>(tb.it1) * slice;
    const double* dvdx0 = grad_[2].data() + static_cast<std::size_t>(tb.it0) * slice;
    const double* dvdx1 = grad_[2].data() + static_cast<std::size_t>(tb.it1) * slice;
    // Fixed-order serial accumulation keeps reruns bit-identical.
    double acc = 0.0;
    for (std::size_t k = 0; k < slice; ++k) {
        const double w0 = dvdx0[k] - dudy0[k];
        const double w1 = dvdx1[k] - dudy1[k];
        acc += area_weight_[k] * ((1.0 - tb.alpha) * w0 + tb.alpha * w1);
    }
    return acc / area_weight_sum_;
}

namespace {

void strain_grid_row(const GriddedField& field, const GriddedField::TimeBracket& tb,
                     int iy, StrainGrids& out) {
    const GridSpec& g = field.native_grid();
    for (int ix = 0; ix < g.nx; ++ix) {
        double comp[4];
        for (int c = 0; c < 4; ++c) {
            const double c0 = field.gradient_node(c, tb.it0, iy, ix);
            const double c1 = field.gradient_node(c, tb.it1, iy, ix);
            comp[c] = (1.0 - tb.alpha) * c0 + tb.alpha * c1;
        }
        const double s11 = comp[0];
        const double s22 = comp[3];
        const double s12 = 0.5 * (comp[1] + comp[2]);
        const std::size_t k = static_cast<std::size_t>(iy) * g.nx + ix;
        out.d[k] = s11 - s22;
        out.b[k] = s12;
        const double mean = 0.5 * (s11 + s22);
        const double rad = std::hypot(0.5 * (s11 - s22), s12);
        out.s1[k] = mean - rad;
        out.s2[k] = mean + rad;
    }
}

} // namespace

StrainGrids compute_strain_grids(const GriddedField& field, double t_days, Exec exec) {
    const GridSpec& g = field.native_grid();
    const auto tb = field.bracket(t_days);
    StrainGrids out;
    out.nx = g.nx;
    out.ny = g.ny;
    out.d.assign(g.node_count(), 0.0);
    out.b.assign(g.node_count(), 0.0);
    out.s1.assign(g.node_count(), 0.0);
    out.s2.assign(g.node_count(), 0.0);
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int iy = 0; iy < g.ny; ++iy) strain_grid_row(field, tb, iy, out);
    } else {
        for (int iy = 0; iy < g.ny; ++iy) strain_grid_row(field, tb, iy, out);
    }
    return out;
}

} // namespace oecs
