#include "oecs/benchflows.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "oecs/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oecs {

Mat2 AnalyticFlow::velocity_gradient(const Vec2&, double) const {
    throw std::logic_error("flow has no exact velocity gradient; sample through AnalyticField");
}

Vec2 AnalyticFlow::trajectory(const Vec2&, double, double) const {
    throw std::logic_error("flow has no exact trajectories");
}

namespace {

class SolidRotationFlow final : public AnalyticFlow {
public:
    SolidRotationFlow(double omega, Vec2 center) : omega_(omega), c_(center) {}
    Vec2 velocity(const Vec2& p, double) const override {
        return omega_ * rot90(p - c_);
    }
    Mat2 velocity_gradient(const Vec2&, double) const override {
        return {0.0, -omega_, omega_, 0.0};
    }
    bool has_exact_gradient() const override { return true; }
    bool has_exact_trajectories() const override { return true; }
    bool steady() const override { return true; }
    Vec2 trajectory(const Vec2& p0, double t0, double t1) const override {
        const double ang = omega_ * (t1 - t0) * kSecondsPerDay;
        return c_ + Mat2::rotation(ang).apply(p0 - c_);
    }

private:
    double omega_;
    Vec2 c_;
};

class PureShearFlow final : public AnalyticFlow {
public:
    explicit PureShearFlow(double gamma) : gamma_(gamma) {}
    Vec2 velocity(const Vec2& p, double) const override { return {gamma_ * p.y, 0.0}; }
    Mat2 velocity_gradient(const Vec2&, double) const override {
        return {0.0, gamma_, 0.0, 0.0};
    }
    bool has_exact_gradient() const override { return true; }
    bool has_exact_trajectories() const override { return true; }
    bool steady() const override { return true; }
    Vec2 trajectory(const Vec2& p0, double t0, double t1) const override {
        return {p0.x + gamma_ * p0.y * (t1 - t0) * kSecondsPerDay, p0.y};
    }

private:
    double gamma_;
};

class PureStrainFlow final : public AnalyticFlow {
public:
    PureStrainFlow(double alpha, Vec2 center) : alpha_(alpha), c_(center) {}
    Vec2 velocity(const Vec2& p, double) const override {
        return {alpha_ * (p.x - c_.x), -alpha_ * (p.y - c_.y)};
    }
    Mat2 velocity_gradient(const Vec2&, double) const override {
        return {alpha_, 0.0, 0.0, -alpha_};
    }
    bool has_exact_gradient() const override { return true; }
    bool has_exact_trajectories() const override { return true; }
    bool steady() const override { return true; }
    Vec2 trajectory(const Vec2& p0, double t0, double t1) const override {
        const double e = alpha_ * (t1 - t0) * kSecondsPerDay;
        return {c_.x + (p0.x - c_.x) * std::exp(e), c_.y + (p0.y - c_.y) * std::exp(-e)};
    }

private:
    double alpha_;
    Vec2 c_;
};

// Azimuthal profile helpers for the Gaussian-core vortex, as functions of
// w = r^2 and s = w/delta^2:
//   g(w)  = (1 - exp(-s)) / w        (velocity = c*g(w)*(-y, x))
//   g'(w) = (s*exp(-s) - (1-exp(-s))) / w^2
// Series expansions keep both smooth through r = 0.
struct RadialProfile {
    double g;
    double gp;
};

RadialProfile vortex_profile(double w, double delta2) {
    const double s = w / delta2;
    RadialProfile out;
    if (s < 1e-3) {
        out.g = (1.0 - s / 2.0 + s * s / 6.0 - s * s * s / 24.0) / delta2;
        out.gp = (-0.5 + s / 3.0 - s * s / 8.0) / (delta2 * delta2);
        return out;
    }
    const double es = std::exp(-s);
    out.g = (1.0 - es) / w;
    out.gp = (s * es - (1.0 - es)) / (w * w);
    return out;
}

class PerturbedVortexFlow final : public AnalyticFlow {
public:
    explicit PerturbedVortexFlow(const VortexParams& p) : p_(p) {
        if (!(p_.core_radius > 0.0)) throw ConfigError("vortex core_radius must be positive");
        if (p_.strain_width <= 0.0) p_.strain_width = 2.0 * p_.core_radius;
    }

    Vec2 velocity(const Vec2& pos, double t_days) const override {
        const Vec2 q = pos - p_.center;
        const double d2 = p_.core_radius * p_.core_radius;
        const double w = q.norm2();
        const RadialProfile rp = vortex_profile(w, d2);
        const double c = circulation(t_days) / (2.0 * kPi);
        Vec2 v = c * rp.g * rot90(q);

        const double amp = quad_amp(t_days);
        if (amp != 0.0) {
            const double e = std::exp(-w / (2.0 * d2));
            const double quad = q.x * q.x - q.y * q.y;
            v.x += amp * e * q.y * (2.0 + quad / d2);
            v.y += amp * e * q.x * (2.0 - quad / d2);
        }
        if (p_.strain_rate != 0.0) {
            const double w2 = p_.strain_width * p_.strain_width;
            const double e2 = std::exp(-w / (2.0 * w2));
            v.x += -p_.strain_rate * e2 * q.x * (1.0 - q.y * q.y / w2);
            v.y += p_.strain_rate * e2 * q.y * (1.0 - q.x * q.x / w2);
        }
        return v;
    }

    Mat2 velocity_gradient(const Vec2& pos, double t_days) const override {
        const Vec2 q = pos - p_.center;
        const double d2 = p_.core_radius * p_.core_radius;
        const double w = q.norm2();
        const RadialProfile rp = vortex_profile(w, d2);
        const double c = circulation(t_days) / (2.0 * kPi);
        Mat2 m(-2.0 * c * rp.gp * q.x * q.y, -c * (2.0 * rp.gp * q.y * q.y + rp.g),
               c * (2.0 * rp.gp * q.x * q.x + rp.g), 2.0 * c * rp.gp * q.x * q.y);

        const double amp = quad_amp(t_days);
        if (amp != 0.0) {
            const double e = std::exp(-w / (2.0 * d2));
            const double quad = q.x * q.x - q.y * q.y;
            m.a11 += -amp * e * q.x * q.y * quad / (d2 * d2);
            m.a12 += amp * e * ((2.0 + quad / d2) * (1.0 - q.y * q.y / d2) - 2.0 * q.y * q.y / d2);
            m.a21 += amp * e * ((2.0 - quad / d2) * (1.0 - q.x * q.x / d2) - 2.0 * q.x * q.x / d2);
            m.a22 += amp * e * q.x * q.y * quad / (d2 * d2);
        }
        if (p_.strain_rate != 0.0) {
            const double w2 = p_.strain_width * p_.strain_width;
            const double e2 = std::exp(-w / (2.0 * w2));
            const double beta = p_.strain_rate;
            m.a11 += -beta * e2 * (1.0 - q.x * q.x / w2) * (1.0 - q.y * q.y / w2);
            m.a12 += beta * e2 * q.x * q.y * (3.0 - q.y * q.y / w2) / w2;
            m.a21 += -beta * e2 * q.x * q.y * (3.0 - q.x * q.x / w2) / w2;
            m.a22 += beta * e2 * (1.0 - q.x * q.x / w2) * (1.0 - q.y * q.y / w2);
        }
        return m;
    }

    bool has_exact_gradient() const override { return true; }
    bool steady() const override {
        return p_.decay_tau_days <= 0.0 && p_.eps_periodic == 0.0;
    }

private:
    double circulation(double t_days) const {
        if (p_.decay_tau_days > 0.0) return p_.circulation * std::exp(-t_days / p_.decay_tau_days);
        return p_.circulation;
    }
    double quad_amp(double t_days) const {
        const double rate0 = p_.circulation / (2.0 * kPi * p_.core_radius * p_.core_radius);
        double a = p_.eps_steady;
        if (p_.eps_periodic != 0.0)
            a += p_.eps_periodic * std::cos(2.0 * kPi * t_days / p_.period_days);
        return rate0 * a;
    }

    VortexParams p_;
};

class SumFlow final : public AnalyticFlow {
public:
    explicit SumFlow(std::vector<FlowPtr> members) : members_(std::move(members)) {
        exact_grad_ = true;
        steady_ = true;
        for (const auto& m : members_) {
            exact_grad_ = exact_grad_ && m->has_exact_gradient();
            steady_ = steady_ && m->steady();
        }
    }
    Vec2 velocity(const Vec2& p, double t) const override {
        Vec2 v;
        for (const auto& m : members_) v += m->velocity(p, t);
        return v;
    }
    Mat2 velocity_gradient(const Vec2& p, double t) const override {
        Mat2 g;
        for (const auto& m : members_) g = g + m->velocity_gradient(p, t);
        return g;
    }
    bool has_exact_gradient() const override { return exact_grad_; }
    bool steady() const override { return steady_; }

private:
    std::vector<FlowPtr> members_;
    bool exact_grad_ = false;
    bool steady_ = false;
};

class GyreFlow final : public AnalyticFlow {
public:
    explicit GyreFlow(const GyreParams& p) : p_(p) {}

    Vec2 velocity(const Vec2& pos, double t_days) const override {
        const double L = p_.length;
        const double xs = pos.x / L, ys = pos.y / L;
        double a, b;
        coeffs(t_days, a, b);
        const double f = a * xs * xs + b * xs;
        const double fp = 2.0 * a * xs + b;
        const double A = p_.amplitude;
        return {-kPi * A / L * std::sin(kPi * f) * std::cos(kPi * ys),
                kPi * A / L * fp * std::cos(kPi * f) * std::sin(kPi * ys)};
    }

    Mat2 velocity_gradient(const Vec2& pos, double t_days) const override {
        const double L = p_.length;
        const double xs = pos.x / L, ys = pos.y / L;
        double a, b;
        coeffs(t_days, a, b);
        const double f = a * xs * xs + b * xs;
        const double fp = 2.0 * a * xs + b;
        const double fpp = 2.0 * a;
        const double A = p_.amplitude;
        const double sf = std::sin(kPi * f), cf = std::cos(kPi * f);
        const double sy = std::sin(kPi * ys), cy = std::cos(kPi * ys);
        const double pil2 = kPi / (L * L);
        return {-kPi * pil2 * A * fp * cf * cy, kPi * pil2 * A * sf * sy,
                pil2 * A * (fpp * cf - kPi * fp * fp * sf) * sy, kPi * pil2 * A * fp * cf * cy};
    }

    bool has_exact_gradient() const override { return true; }

private:
    void coeffs(double t_days, double& a, double& b) const {
        const double s = std::sin(2.0 * kPi * t_days / p_.period_days);
        a = p_.eps * s;
        b = 1.0 - 2.0 * p_.eps * s;
    }
    GyreParams p_;
};

class TransformedFlow final : public AnalyticFlow {
public:
    TransformedFlow(FlowPtr base, FrameChange fc) : base_(std::move(base)), fc_(fc) {}

    Vec2 velocity(const Vec2& xt, double t) const override {
        const Mat2 Q = fc_.Q(t);
        const Mat2 Qd = fc_.Qdot(t);
        const Vec2 x = Q.apply(xt) + fc_.b(t);
        const Vec2 rel = base_->velocity(x, t) - Qd.apply(xt) - fc_.bdot(t);
        return Q.transposed().apply(rel);
    }

    Mat2 velocity_gradient(const Vec2& xt, double t) const override {
        const Mat2 Q = fc_.Q(t);
        const Mat2 Qt = Q.transposed();
        const Vec2 x = Q.apply(xt) + fc_.b(t);
        return Qt * base_->velocity_gradient(x, t) * Q - Qt * fc_.Qdot(t);
    }

    bool has_exact_gradient() const override { return base_->has_exact_gradient(); }
    bool has_exact_trajectories() const override { return base_->has_exact_trajectories(); }
    bool steady() const override { return false; }

    Vec2 trajectory(const Vec2& p0, double t0, double t1) const override {
        const Vec2 x0 = fc_.from_frame(p0, t0);
        const Vec2 x1 = base_->trajectory(x0, t0, t1);
        return fc_.to_frame(x1, t1);
    }

private:
    FlowPtr base_;
    FrameChange fc_;
};

} // namespace

FlowPtr solid_rotation(double omega_per_s, Vec2 center) {
    return std::make_shared<SolidRotationFlow>(omega_per_s, center);
}

FlowPtr pure_shear(double gamma_per_s) {
    return std::make_shared<PureShearFlow>(gamma_per_s);
}

FlowPtr pure_strain(double alpha_per_s, Vec2 center) {
    return std::make_shared<PureStrainFlow>(alpha_per_s, center);
}

FlowPtr perturbed_vortex(const VortexParams& params) {
    return std::make_shared<PerturbedVortexFlow>(params);
}

FlowPtr decaying_vortex(const VortexParams& params) {
    if (!(params.decay_tau_days > 0.0))
        throw ConfigError("decaying_vortex requires decay_tau_days > 0");
    return std::make_shared<PerturbedVortexFlow>(params);
}

FlowPtr two_vortex(const VortexParams& a, const VortexParams& b) {
    return superpose({perturbed_vortex(a), perturbed_vortex(b)});
}

FlowPtr superpose(std::vector<FlowPtr> members) {
    return std::make_shared<SumFlow>(std::move(members));
}

FlowPtr unsteady_gyre(const GyreParams& params) {
    return std::make_shared<GyreFlow>(params);
}

// ---------------------------------------------------------------------------
// FrameChange
// ---------------------------------------------------------------------------

FrameChange::FrameChange(const double angle_coef[5], const double bx_coef[5],
                         const double by_coef[5]) {
    for (int i = 0; i < 5; ++i) {
        angle_[i] = angle_coef[i];
        bx_[i] = bx_coef[i];
        by_[i] = by_coef[i];
    }
}

double FrameChange::eval(const double c[5], double t_sec) const {
    return c[0] + c[1] * t_sec + c[2] * std::sin(c[3] * t_sec + c[4]);
}

double FrameChange::eval_rate(const double c[5], double t_sec) const {
    return c[1] + c[2] * c[3] * std::cos(c[3] * t_sec + c[4]);
}

FrameChange FrameChange::random(unsigned seed, double angle_rate_scale_per_s,
                                double translation_scale_m) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.25, 1.0);
    FrameChange fc;
    fc.angle_[0] = kPi * uni(rng);
    fc.angle_[1] = angle_rate_scale_per_s * uni(rng);
    fc.angle_[2] = 0.8 * pos(rng);
    fc.angle_[3] = angle_rate_scale_per_s * pos(rng);
    fc.angle_[4] = kPi * uni(rng);
    double* comps[2] = {fc.bx_, fc.by_};
    for (double* c : comps) {
        c[0] = translation_scale_m * uni(rng);
        c[1] = translation_scale_m * angle_rate_scale_per_s * uni(rng);
        c[2] = translation_scale_m * uni(rng);
        c[3] = angle_rate_scale_per_s * pos(rng);
        c[4] = kPi * uni(rng);
    }
    return fc;
}

Mat2 FrameChange::Q(double t_days) const {
    const double t = t_days * kSecondsPerDay;
    const double a = eval(angle_, t);
    return Mat2::rotation(inverted_ ? -a : a);
}

Mat2 FrameChange::Qdot(double t_days) const {
    const double t = t_days * kSecondsPerDay;
    const double a = eval(angle_, t);
    const double ar = eval_rate(angle_, t);
    const Mat2 R(0.0, -1.0, 1.0, 0.0);
    if (!inverted_) return ar * (R * Mat2::rotation(a));
    return -ar * (R * Mat2::rotation(-a));
}

Vec2 FrameChange::b(double t_days) const {
    const double t = t_days * kSecondsPerDay;
    const Vec2 bf{eval(bx_, t), eval(by_, t)};
    if (!inverted_) return bf;
    const double a = eval(angle_, t);
    return -Mat2::rotation(-a).apply(bf);
}

Vec2 FrameChange::bdot(double t_days) const {
    const double t = t_days * kSecondsPerDay;
    const Vec2 bdf{eval_rate(bx_, t), eval_rate(by_, t)};
    if (!inverted_) return bdf;
    const double a = eval(angle_, t);
    const double ar = eval_rate(angle_, t);
    const Vec2 bf{eval(bx_, t), eval(by_, t)};
    const Mat2 R(0.0, -1.0, 1.0, 0.0);
    // d/dt [-Q^T b] = -Qdot^T b - Q^T bdot, with Qdot^T = -ar R Q^T.
    return ar * (R * Mat2::rotation(-a)).apply(bf) - Mat2::rotation(-a).apply(bdf);
}

double FrameChange::rotation_rate(double t_days) const {
    const double t = t_days * kSecondsPerDay;
    const double ar = eval_rate(angle_, t);
    return inverted_ ? -ar : ar;
}

FrameChange FrameChange::inverse() const {
    FrameChange out = *this;
    out.inverted_ = !inverted_;
    return out;
}

Vec2 FrameChange::to_frame(const Vec2& x, double t_days) const {
    return Q(t_days).transposed().apply(x - b(t_days));
}

Vec2 FrameChange::from_frame(const Vec2& xt, double t_days) const {
    return Q(t_days).apply(xt) + b(t_days);
}

FlowPtr transform(FlowPtr flow, const FrameChange& fc) {
    return std::make_shared<TransformedFlow>(std::move(flow), fc);
}

// ---------------------------------------------------------------------------
// AnalyticField
// ---------------------------------------------------------------------------

AnalyticField::AnalyticField(FlowPtr flow, Vec2 origin, Vec2 ex, Vec2 ey,
                             int scan_nx, int scan_ny)
    : flow_(std::move(flow)), origin_(origin), ex_(ex), ey_(ey) {
    const Vec2 c0 = origin_;
    const Vec2 c1 = origin_ + ex_;
    const Vec2 c2 = origin_ + ex_ + ey_;
    const Vec2 c3 = origin_ + ey_;
    const double xmin = std::min(std::min(c0.x, c1.x), std::min(c2.x, c3.x));
    const double xmax = std::max(std::max(c0.x, c1.x), std::max(c2.x, c3.x));
    const double ymin = std::min(std::min(c0.y, c1.y), std::min(c2.y, c3.y));
    const double ymax = std::max(std::max(c0.y, c1.y), std::max(c2.y, c3.y));
    scan_grid_.nx = scan_nx;
    scan_grid_.ny = scan_ny;
    scan_grid_.x0 = xmin;
    scan_grid_.y0 = ymin;
    scan_grid_.dx = (xmax - xmin) / (scan_nx - 1);
    scan_grid_.dy = (ymax - ymin) / (scan_ny - 1);
    scan_grid_.mode = CoordinateMode::Cartesian;
    h_space_ = 1e-3 * scan_grid_.min_cell_meters();
}

AnalyticField::AnalyticField(FlowPtr flow, Vec2 lo, Vec2 hi, int scan_nx, int scan_ny)
    : AnalyticField(std::move(flow), lo, Vec2{hi.x - lo.x, 0.0}, Vec2{0.0, hi.y - lo.y},
                    scan_nx, scan_ny) {}

Vec2 AnalyticField::velocity(const Vec2& p, double t_days) const {
    return flow_->velocity(p, t_days);
}

Mat2 AnalyticField::velocity_gradient(const Vec2& p, double t_days) const {
    if (flow_->has_exact_gradient()) return flow_->velocity_gradient(p, t_days);
    const double h = h_space_;
    const Vec2 vxp = flow_->velocity({p.x + h, p.y}, t_days);
    const Vec2 vxm = flow_->velocity({p.x - h, p.y}, t_days);
    const Vec2 vyp = flow_->velocity({p.x, p.y + h}, t_days);
    const Vec2 vym = flow_->velocity({p.x, p.y - h}, t_days);
    return {(vxp.x - vxm.x) / (2.0 * h), (vyp.x - vym.x) / (2.0 * h),
            (vxp.y - vxm.y) / (2.0 * h), (vyp.y - vym.y) / (2.0 * h)};
}

Mat2 AnalyticField::strain_time_derivative(const Vec2& p, double t_days) const {
    if (flow_->steady()) return {};
    const double h = h_time_days_;
    const Mat2 s_p2 = velocity_gradient(p, t_days + 2.0 * h).sym();
    const Mat2 s_p1 = velocity_gradient(p, t_days + h).sym();
    const Mat2 s_m1 = velocity_gradient(p, t_days - h).sym();
    const Mat2 s_m2 = velocity_gradient(p, t_days - 2.0 * h).sym();
    const double denom = 12.0 * h * kSecondsPerDay;
    return (s_m2 - s_p2 + 8.0 * (s_p1 - s_m1)) * (1.0 / denom);
}

bool AnalyticField::contains(const Vec2& p) const {
    const Vec2 q = p - origin_;
    const double det = cross(ex_, ey_);
    const double s = cross(q, ey_) / det;
    const double r = cross(ex_, q) / det;
    const double tol = 1e-12;
    return s >= -tol && s <= 1.0 + tol && r >= -tol && r <= 1.0 + tol;
}

double AnalyticField::omega_mean(double t_days) const {
    const int n = quad_n_;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Vec2 p = origin_ + ((i + 0.5) / n) * ex_ + ((j + 0.5) / n) * ey_;
            const Mat2 g = velocity_gradient(p, t_days);
            acc += g.a21 - g.a12;
        }
    }
    return acc / (static_cast<double>(n) * n);
}

// ---------------------------------------------------------------------------

VelocityDataset rasterize(const AnalyticFlow& flow, const GridSpec& grid,
                          const std::vector<double>& times_days, Exec exec) {
    grid.validate();
    VelocityDataset ds;
    ds.grid = grid;
    ds.times = times_days;
    const std::size_t slice = grid.node_count();
    ds.u.assign(times_days.size() * slice, 0.0);
    ds.v.assign(times_days.size() * slice, 0.0);
    const int nt = static_cast<int>(times_days.size());

    auto fill_slice = [&](int it) {
        for (int iy = 0; iy < grid.ny; ++iy) {
            for (int ix = 0; ix < grid.nx; ++ix) {
                const Vec2 vel = flow.velocity(grid.node_coord(ix, iy), times_days[it]);
                const std::size_t k = (static_cast<std::size_t>(it) * grid.ny + iy) * grid.nx + ix;
                ds.u[k] = vel.x;
                ds.v[k] = vel.y;
            }
        }
    };

    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int it = 0; it < nt; ++it) fill_slice(it);
    } else {
        for (int it = 0; it < nt; ++it) fill_slice(it);
    }
    ds.validate();
    return ds;
}

// ---------------------------------------------------------------------------
// JSON flow specs
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

Vec2 center_from(const json& p) {
    if (!p.contains("center")) return {0.0, 0.0};
    const auto& c = p.at("center");
    return {c.at(0).get<double>(), c.at(1).get<double>()};
}

VortexParams vortex_params_from(const json& p) {
    VortexParams vp;
    vp.circulation = p.value("circulation", vp.circulation);
    vp.core_radius = p.value("core_radius", vp.core_radius);
    vp.center = center_from(p);
    vp.decay_tau_days = p.value("decay_tau_days", vp.decay_tau_days);
    vp.eps_steady = p.value("eps_steady", vp.eps_steady);
    vp.eps_periodic = p.value("eps_periodic", vp.eps_periodic);
    vp.period_days = p.value("period_days", vp.period_days);
    vp.strain_rate = p.value("strain_rate", vp.strain_rate);
    vp.strain_width = p.value("strain_width", vp.strain_width);
    return vp;
}

} // namespace

FlowPtr flow_from_json_string(const std::string& text) {
    json spec;
    try {
        spec = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("flow spec: invalid JSON: ") + e.what());
    }
    const std::string kind = spec.value("kind", "");
    const json params = spec.value("parameters", json::object());
    try {
        if (kind == "solid_rotation")
            return solid_rotation(params.value("omega", 1e-5), center_from(params));
        if (kind == "pure_shear") return pure_shear(params.value("gamma", 1e-5));
        if (kind == "pure_strain")
            return pure_strain(params.value("alpha", 1e-5), center_from(params));
        if (kind == "perturbed_vortex") return perturbed_vortex(vortex_params_from(params));
        if (kind == "decaying_vortex") return decaying_vortex(vortex_params_from(params));
        if (kind == "two_vortex")
            return two_vortex(vortex_params_from(params.at("first")),
                              vortex_params_from(params.at("second")));
        if (kind == "unsteady_gyre") {
            GyreParams gp;
            gp.amplitude = params.value("amplitude", gp.amplitude);
            gp.length = params.value("length", gp.length);
            gp.eps = params.value("eps", gp.eps);
            gp.period_days = params.value("period_days", gp.period_days);
            return unsteady_gyre(gp);
        }
    } catch (const json::exception& e) {
        throw ConfigError("flow spec: bad parameters for kind '" + kind + "': " + e.what());
    }
    throw ConfigError("flow spec: unknown kind '" + kind + "'");
}

FlowPtr flow_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("flow spec: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return flow_from_json_string(buf.str());
}

} // namespace oecs
