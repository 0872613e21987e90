#ifndef OECS_FLOW_FIELD_HPP
#define OECS_FLOW_FIELD_HPP

#include "oecs/grid.hpp"
#include "oecs/vec2.hpp"

namespace oecs {

enum class Exec { Serial, Parallel };

constexpr double kEarthOmega = 7.2921e-5;    // [rad/s]
constexpr double kStandardGravity = 9.81;    // [m/s^2]

// Pointwise velocity-gradient decomposition: S symmetric, W skew,
// eigenvalues s1 <= s2, unit eigenvectors with e2 = R e1, scalar vorticity.
struct StrainAnalysis {
    Mat2 S;       // [1/s]
    Mat2 W;       // [1/s]
    double s1 = 0.0;
    double s2 = 0.0;
    Vec2 e1, e2;
    double omega = 0.0;  // dv/dx - du/dy [1/s]
};

// Analytic eigen-solve of the symmetric part of a velocity gradient.
// e1 sign is canonicalized (e1.x > 0, or e1.x == 0 and e1.y > 0) so repeated
// evaluations are bit-identical; e2 := R e1.
inline StrainAnalysis strain_from_gradient(const Mat2& grad_v) {
    StrainAnalysis r;
    r.S = grad_v.sym();
    r.W = grad_v.skew();
    r.omega = grad_v.a21 - grad_v.a12;
    const double a = r.S.a11, b = r.S.a12, c = r.S.a22;
    const double mean = 0.5 * (a + c);
    const double rad = std::hypot(0.5 * (a - c), b);
    r.s1 = mean - rad;
    r.s2 = mean + rad;
    Vec2 v;
    const double n1 = std::hypot(b, r.s1 - a);
    const double n2 = std::hypot(r.s1 - c, b);
    if (n1 >= n2) v = {b, r.s1 - a};
    else v = {r.s1 - c, b};
    const double n = v.norm();
    v = (n > 0.0) ? v / n : Vec2{1.0, 0.0};  // isotropic tensor: direction undefined
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) v = -v;
    r.e1 = v;
    r.e2 = rot90(v);
    return r;
}

// A 2D unsteady velocity field the whole pipeline runs on. Positions are in
// grid coordinates (degrees or meters, see GridSpec), times in days,
// velocities in m/s and rates in 1/s on the local tangent plane.
// Implementations must be immutable and safe for concurrent queries.
class FlowField {
public:
    virtual ~FlowField() = default;

    virtual Vec2 velocity(const Vec2& p, double t_days) const = 0;
    virtual Mat2 velocity_gradient(const Vec2& p, double t_days) const = 0;
    // dS/dt at fixed position [1/s^2].
    virtual Mat2 strain_time_derivative(const Vec2& p, double t_days) const = 0;

    virtual bool contains(const Vec2& p) const = 0;
    virtual double t_begin() const = 0;
    virtual double t_end() const = 0;

    // Discretization scales (cell sizes, domain box, metric). contains() is
    // authoritative for the spatial domain, which may be smaller.
    virtual const GridSpec& native_grid() const = 0;

    // Area-weighted spatial mean vorticity over the domain [1/s].
    virtual double omega_mean(double t_days) const = 0;

    virtual bool is_steady() const { return false; }

    StrainAnalysis strain(const Vec2& p, double t_days) const {
        return strain_from_gradient(velocity_gradient(p, t_days));
    }
    Vec2 meters_per_unit(const Vec2& p) const { return native_grid().meters_per_unit(p); }
};

} // namespace oecs

#endif
