#ifndef OECS_BENCHFLOWS_HPP
#define OECS_BENCHFLOWS_HPP

#include <memory>
#include <string>
#include <vector>

#include "oecs/dataset.hpp"
#include "oecs/flow_field.hpp"
#include "oecs/vec2.hpp"

namespace oecs {

// Closed-form velocity field on the plane (cartesian coordinates, meters;
// times in days, rates per second). Evaluable at any point without a grid.
class AnalyticFlow {
public:
    virtual ~AnalyticFlow() = default;

    virtual Vec2 velocity(const Vec2& p, double t_days) const = 0;

    // Exact velocity gradient [1/s]; only valid when has_exact_gradient().
    virtual Mat2 velocity_gradient(const Vec2& p, double t_days) const;

    virtual bool has_exact_gradient() const { return false; }
    virtual bool has_exact_trajectories() const { return false; }
    virtual bool steady() const { return false; }

    // Exact flow map from t0 to t1; only valid when has_exact_trajectories().
    virtual Vec2 trajectory(const Vec2& p0, double t0_days, double t1_days) const;
};

using FlowPtr = std::shared_ptr<const AnalyticFlow>;

// v = omega * R (p - center); vorticity 2*omega everywhere.
FlowPtr solid_rotation(double omega_per_s, Vec2 center = {0, 0});

// u = gamma * y, v = 0.
FlowPtr pure_shear(double gamma_per_s);

// u = alpha * x, v = -alpha * y (about `center`).
FlowPtr pure_strain(double alpha_per_s, Vec2 center = {0, 0});

// Gaussian-core vortex plus a small non-axisymmetric perturbation. The bare
// axisymmetric vortex has a continuum of closed chi-orbits (Floquet
// multiplier 1); the perturbation isolates them into hyperbolic limit cycles.
struct VortexParams {
    double circulation = 1.0;      // [m^2/s] at t=0
    double core_radius = 1.0;      // [m]
    Vec2 center = {0.0, 0.0};
    double decay_tau_days = 0.0;   // <=0: no decay
    // Quadrupole perturbation with stream function
    //   rate0 * (eps_steady + eps_periodic*cos(2*pi*t/period)) * (x^2-y^2) * exp(-r^2/(2 delta^2))
    // where rate0 = circulation/(2*pi*delta^2).
    double eps_steady = 0.0;
    double eps_periodic = 0.0;
    double period_days = 10.0;
    // Weak steady local strain (stream function ~ strain_rate * x*y * envelope),
    // used to give decaying vortices a finite filamentation time.
    double strain_rate = 0.0;      // [1/s]
    double strain_width = 0.0;     // [m]; <=0 means 2*core_radius
};

FlowPtr perturbed_vortex(const VortexParams& params);
FlowPtr decaying_vortex(const VortexParams& params);  // requires decay_tau_days > 0
FlowPtr two_vortex(const VortexParams& a, const VortexParams& b);

// Pointwise sum of member velocities.
FlowPtr superpose(std::vector<FlowPtr> members);

// Time-periodic double gyre on [0, 2L] x [0, L].
struct GyreParams {
    double amplitude = 0.1;   // [m^2/s] stream function scale / L
    double length = 1.0;      // L [m]
    double eps = 0.25;
    double period_days = 10.0;
};
FlowPtr unsteady_gyre(const GyreParams& params);

// Euclidean frame change x = Q(t) x~ + b(t) with smooth closed-form angle and
// translation; derivatives are analytic. Q(t) in SO(2).
class FrameChange {
public:
    // angle(t_sec) = a[0] + a[1]*t + a[2]*sin(a[3]*t + a[4])   [rad]
    // b_i(t_sec)   = c[0] + c[1]*t + c[2]*sin(c[3]*t + c[4])   [m]
    FrameChange() = default;
    FrameChange(const double angle_coef[5], const double bx_coef[5], const double by_coef[5]);

    static FrameChange random(unsigned seed, double angle_rate_scale_per_s,
                              double translation_scale_m);

    Mat2 Q(double t_days) const;
    Mat2 Qdot(double t_days) const;      // [1/s]
    Vec2 b(double t_days) const;         // [m]
    Vec2 bdot(double t_days) const;      // [m/s]
    double rotation_rate(double t_days) const;  // angle rate [rad/s]

    FrameChange inverse() const;

    Vec2 to_frame(const Vec2& x, double t_days) const;    // x~ = Q^T (x - b)
    Vec2 from_frame(const Vec2& xt, double t_days) const; // x  = Q x~ + b

private:
    double eval(const double c[5], double t_sec) const;
    double eval_rate(const double c[5], double t_sec) const;

    double angle_[5] = {0, 0, 0, 0, 0};
    double bx_[5] = {0, 0, 0, 0, 0};
    double by_[5] = {0, 0, 0, 0, 0};
    bool inverted_ = false;
};

// Velocity in the moving frame: v~(x~,t) = Q^T (v(Q x~ + b, t) - Qdot x~ - bdot).
FlowPtr transform(FlowPtr flow, const FrameChange& fc);

// Wraps an AnalyticFlow as a FlowField over a parallelogram domain
// {origin + s*ex + r*ey : s,r in [0,1]}. The synthesized native grid covers
// the bounding box at scan_nx x scan_ny and provides the discretization
// scales for downstream algorithms.
class AnalyticField : public FlowField {
public:
    AnalyticField(FlowPtr flow, Vec2 origin, Vec2 ex, Vec2 ey,
                  int scan_nx = 128, int scan_ny = 128);

    // Axis-aligned convenience.
    AnalyticField(FlowPtr flow, Vec2 lo, Vec2 hi, int scan_nx = 128, int scan_ny = 128);

    Vec2 velocity(const Vec2& p, double t_days) const override;
    Mat2 velocity_gradient(const Vec2& p, double t_days) const override;
    Mat2 strain_time_derivative(const Vec2& p, double t_days) const override;

    bool contains(const Vec2& p) const override;
    double t_begin() const override { return t0_; }
    double t_end() const override { return t1_; }
    const GridSpec& native_grid() const override { return scan_grid_; }
    double omega_mean(double t_days) const override;
    bool is_steady() const override { return flow_->steady(); }

    void set_time_span(double t0_days, double t1_days) { t0_ = t0_days; t1_ = t1_days; }
    // Spatial step for finite-difference gradients when the flow lacks exact
    // ones [m], and time step for dS/dt differencing [days].
    void set_fd_steps(double h_space_m, double h_time_days) {
        h_space_ = h_space_m;
        h_time_days_ = h_time_days;
    }
    const AnalyticFlow& flow() const { return *flow_; }

private:
    FlowPtr flow_;
    Vec2 origin_, ex_, ey_;
    GridSpec scan_grid_;
    double t0_ = -3.65e5, t1_ = 3.65e5;
    double h_space_ = 1e-4;
    double h_time_days_ = 0.01;
    int quad_n_ = 96;
};

// Samples a flow onto a dataset consumable by the gridded pipeline.
VelocityDataset rasterize(const AnalyticFlow& flow, const GridSpec& grid,
                          const std::vector<double>& times_days,
                          Exec exec = Exec::Parallel);

// JSON flow spec {"kind": ..., "parameters": {...}}.
FlowPtr flow_from_json_string(const std::string& text);
FlowPtr flow_from_json_file(const std::string& path);

} // namespace oecs

#endif
