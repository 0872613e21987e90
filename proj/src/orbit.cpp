#include "oecs/orbit.hpp"

#include <cmath>

#include "oecs/errors.hpp"

namespace oecs {

OrbitStepper::OrbitStepper(const FlowField& field, const Vec2& seed, double t_days,
                           const DirectionParams& dp, bool orientation_corrected)
    : field_(field), t_(t_days), dp_(dp), corrected_(orientation_corrected), pos_(seed) {
    if (!field_.contains(seed)) {
        outcome_ = OrbitOutcome::LeftGrid;
        return;
    }
    try {
        ref_ = chi(field_, seed, t_, dp_);
        valid_ = true;
    } catch (const OutsideUmuError&) {
        outcome_ = OrbitOutcome::LeftUmu;
    }
}

Vec2 OrbitStepper::rhs(const Vec2& p, Vec2* chi_out) const {
    if (!field_.contains(p)) throw DomainError("orbit left grid");
    Vec2 c = chi(field_, p, t_, dp_);
    if (corrected_ && dot(c, ref_) < 0.0) c = -c;
    if (chi_out) *chi_out = c;
    const Vec2 m = field_.meters_per_unit(p);
    return {c.x / m.x, c.y / m.y};
}

bool OrbitStepper::step(double h) {
    Vec2 chi_last;
    try {
        const Vec2 k1 = rhs(pos_, nullptr);
        const Vec2 k2 = rhs(pos_ + (0.5 * h) * k1, nullptr);
        const Vec2 k3 = rhs(pos_ + (0.5 * h) * k2, nullptr);
        const Vec2 k4 = rhs(pos_ + h * k3, &chi_last);
        const Vec2 next = pos_ + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!field_.contains(next)) throw DomainError("orbit left grid");
        // Aligned chi at the landing point becomes the next reference.
        Vec2 c_end = chi(field_, next, t_, dp_);
        if (corrected_ && dot(c_end, chi_last) < 0.0) c_end = -c_end;
        pos_ = next;
        ref_ = c_end;
        return true;
    } catch (const OutsideUmuError&) {
        outcome_ = OrbitOutcome::LeftUmu;
        return false;
    } catch (const DomainError&) {
        outcome_ = OrbitOutcome::LeftGrid;
        return false;
    }
}

namespace {

OrbitResult run(const FlowField& field, const Vec2& seed, double t_days,
                const DirectionParams& dp, const OrbitParams& op, bool corrected) {
    OrbitResult res;
    OrbitStepper stepper(field, seed, t_days, dp, corrected);
    if (!stepper.valid()) {
        res.outcome = stepper.outcome();
        return res;
    }
    const Vec2 tangent_seed = stepper.tangent();
    const double h = op.step;
    const std::size_t max_steps = static_cast<std::size_t>(op.max_length / h) + 1;
    res.points.reserve(std::min<std::size_t>(max_steps, 1 << 16));
    res.points.push_back(seed);

    for (std::size_t n = 0; n < max_steps; ++n) {
        if (!stepper.step(h)) {
            res.outcome = stepper.outcome();
            return res;
        }
        res.length += h;
        res.points.push_back(stepper.position());
        if (res.length >= op.min_loop) {
            const Vec2 p = stepper.position();
            const Vec2 m = field.meters_per_unit(p);
            const double gap = std::hypot((p.x - seed.x) * m.x, (p.y - seed.y) * m.y);
            if (gap <= op.eps_close && dot(stepper.tangent(), tangent_seed) > 0.0) {
                res.outcome = OrbitOutcome::Closed;
                return res;
            }
        }
    }
    res.outcome = OrbitOutcome::ExceededLength;
    return res;
}

} // namespace

OrbitResult integrate_orbit(const FlowField& field, const Vec2& seed, double t_days,
                            const DirectionParams& dp, const OrbitParams& op) {
    return run(field, seed, t_days, dp, op, true);
}

OrbitResult integrate_orbit_uncorrected(const FlowField& field, const Vec2& seed,
                                        double t_days, const DirectionParams& dp,
                                        const OrbitParams& op) {
    return run(field, seed, t_days, dp, op, false);
}

} // namespace oecs
