#ifndef OECS_ORBIT_HPP
#define OECS_ORBIT_HPP

#include <vector>

#include "oecs/direction_field.hpp"
#include "oecs/flow_field.hpp"

namespace oecs {

enum class OrbitOutcome { Closed, LeftUmu, LeftGrid, ExceededLength };

struct OrbitResult {
    std::vector<Vec2> points;  // grid coordinates, spaced by `step` in arclength
    OrbitOutcome outcome = OrbitOutcome::ExceededLength;
    double length = 0.0;       // arclength traversed [m]
};

struct OrbitParams {
    double step = 0.0;        // fixed arclength step [m]
    double max_length = 0.0;  // orbit cap [m]
    double eps_close = 0.0;   // closure gap [m]
    double min_loop = 0.0;    // arclength before closure may trigger [m]
};

// One RK4 arclength step at a time along x' = sign<chi(x), x'(s-step)> chi(x).
// The sign factor carries the orbit across eigenvector orientation flips; the
// running reference tangent is the aligned chi of the previous step.
class OrbitStepper {
public:
    OrbitStepper(const FlowField& field, const Vec2& seed, double t_days,
                 const DirectionParams& dp, bool orientation_corrected = true);

    // False when the seed itself is outside the grid or U_mu.
    bool valid() const { return valid_; }

    // Advances by arclength h; false on leaving U_mu or the grid (the
    // position is left at the pre-step point).
    bool step(double h);

    const Vec2& position() const { return pos_; }
    // Aligned unit chi at the current position (physical components).
    const Vec2& tangent() const { return ref_; }
    OrbitOutcome outcome() const { return outcome_; }

private:
    Vec2 rhs(const Vec2& p, Vec2* chi_out) const;

    const FlowField& field_;
    double t_;
    DirectionParams dp_;
    bool corrected_;
    bool valid_ = false;
    Vec2 pos_;
    Vec2 ref_;
    OrbitOutcome outcome_ = OrbitOutcome::ExceededLength;
};

// Integrates until the orbit returns to within eps_close of the seed with
// aligned tangent (Closed), leaves U_mu or the grid, or exceeds max_length.
OrbitResult integrate_orbit(const FlowField& field, const Vec2& seed, double t_days,
                            const DirectionParams& dp, const OrbitParams& op);

// Without the orientation correction; kept as the regression baseline showing
// the sign factor is what carries orbits across orientation discontinuities.
OrbitResult integrate_orbit_uncorrected(const FlowField& field, const Vec2& seed,
                                        double t_days, const DirectionParams& dp,
                                        const OrbitParams& op);

} // namespace oecs

#endif
