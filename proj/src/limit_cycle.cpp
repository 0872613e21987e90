#include "oecs/limit_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>

#include "oecs/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oecs {

std::vector<double> default_mu_values(const FlowField& field, double t_days,
                                      const DetectParams& params) {
    const GridSpec& g = field.native_grid();
    std::vector<double> rates;
    rates.reserve(g.node_count());
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const Vec2 p = g.node_coord(ix, iy);
            if (!field.contains(p)) continue;
            const StrainAnalysis sa = field.strain(p, t_days);
            rates.push_back(std::max(std::abs(sa.s1), std::abs(sa.s2)));
        }
    if (rates.empty()) return {0.0};
    auto mid = rates.begin() + rates.size() / 2;
    std::nth_element(rates.begin(), mid, rates.end());
    const double mu_star = params.mu_bound_fraction * (*mid);
    std::vector<double> mu(params.n_mu);
    if (params.n_mu == 1) {
        mu[0] = 0.0;
        return mu;
    }
    for (int k = 0; k < params.n_mu; ++k)
        mu[k] = -mu_star + 2.0 * mu_star * k / (params.n_mu - 1);
    return mu;
}

OrbitParams make_orbit_params(const FlowField& field, const DetectParams& params) {
    const GridSpec& g = field.native_grid();
    OrbitParams op;
    op.step = params.step_frac * g.min_cell_meters();
    op.max_length = params.l_max_perimeters * g.domain_perimeter_meters();
    op.eps_close = params.eps_close_frac * g.min_cell_meters();
    op.min_loop = 10.0 * op.step;
    return op;
}

namespace {

// Intersection parameter of segment p->q with segment a->b, both in grid
// coordinates; returns u in [0,1] along a->b when the segments cross.
std::optional<double> cross_param(const Vec2& p, const Vec2& q, const Vec2& a, const Vec2& b) {
    const Vec2 r = q - p;
    const Vec2 s = b - a;
    const double denom = cross(r, s);
    if (denom == 0.0) return std::nullopt;
    const Vec2 d = a - p;
    const double tpar = cross(d, s) / denom;
    const double upar = cross(d, r) / denom;
    if (tpar < 0.0 || tpar > 1.0 || upar < 0.0 || upar > 1.0) return std::nullopt;
    return upar;
}

} // namespace

ReturnSample section_return(const FlowField& field, const PoincareSection& section,
                            double xi, double t_days, const DirectionParams& dp,
                            const OrbitParams& op) {
    ReturnSample out;
    out.xi = xi;
    const GridSpec& g = field.native_grid();
    const Vec2 seed = section.at(xi, g);
    OrbitStepper stepper(field, seed, t_days, dp, true);
    if (!stepper.valid()) return out;

    const Vec2 end_a = section.at(-section.half_length, g);
    const Vec2 end_b = section.at(section.half_length, g);

    // Crossing sense of the launch tangent; only same-sense crossings count
    // as full returns (the opposite sense is the half-loop crossing on the
    // other side of the wedge pair).
    const double sense0 = cross(section.direction, stepper.tangent()) >= 0.0 ? 1.0 : -1.0;

    Vec2 prev = seed;
    double length = 0.0;
    const std::size_t max_steps = static_cast<std::size_t>(op.max_length / op.step) + 1;
    for (std::size_t n = 0; n < max_steps; ++n) {
        if (!stepper.step(op.step)) return out;
        const Vec2 cur = stepper.position();
        length += op.step;
        if (length > op.min_loop) {
            if (auto u = cross_param(prev, cur, end_a, end_b)) {
                const double sense =
                    cross(section.direction, stepper.tangent()) >= 0.0 ? 1.0 : -1.0;
                if (sense == sense0) {
                    const double xi_cross = -section.half_length + 2.0 * section.half_length * (*u);
                    out.valid = true;
                    out.displacement = xi_cross - xi;
                    return out;
                }
            }
        }
        prev = cur;
    }
    return out;
}

namespace {

// Re-integrates a refined fixed point into a closed polyline and applies the
// acceptance gates: closure, simplicity, mu-constancy.
std::optional<ClosedCurve> build_cycle(const FlowField& field, const Vec2& seed,
                                       double t_days, const DirectionParams& dp,
                                       const OrbitParams& op, const DetectParams& params) {
    OrbitResult orbit = integrate_orbit(field, seed, t_days, dp, op);
    if (orbit.outcome != OrbitOutcome::Closed) return std::nullopt;
    if (orbit.points.size() < 8) return std::nullopt;

    ClosedCurve curve;
    curve.vertices = std::move(orbit.points);
    // The last point sits within eps_close of the seed; drop it if it nearly
    // coincides so the implicit closing edge stays well-formed.
    const GridSpec& g = field.native_grid();
    if (physical_distance(curve.vertices.back(), curve.vertices.front(), g) < 0.25 * op.step)
        curve.vertices.pop_back();
    curve.mu = dp.mu;
    curve.branch = dp.branch;
    curve.time_days = t_days;
    finalize_curve(curve, g);

    if (!is_simple_polygon(curve.vertices)) return std::nullopt;

    // mu-constancy: max deviation of the averaged strain-rate functional from
    // mu, within tol_mu_frac of the local strain scale.
    const std::vector<double> stretch = tangential_stretch(curve, field, t_days);
    double strain_scale = 0.0;
    for (const Vec2& p : curve.vertices) {
        const StrainAnalysis sa = field.strain(p, t_days);
        strain_scale = std::max(strain_scale, std::max(std::abs(sa.s1), std::abs(sa.s2)));
    }
    double dev = 0.0;
    for (double s : stretch) dev = std::max(dev, std::abs(s - dp.mu));
    if (dev > params.tol_mu_frac * strain_scale) return std::nullopt;

    return curve;
}

bool same_cycle(const ClosedCurve& a, const ClosedCurve& b, const GridSpec& g,
                double eps_close) {
    if (a.branch != b.branch || a.mu != b.mu) return false;
    const Vec2 ca = polygon_centroid(a.vertices);
    const Vec2 cb = polygon_centroid(b.vertices);
    if (physical_distance(ca, cb, g) > 4.0 * eps_close) return false;
    const double area_a = polygon_signed_area(a.vertices, g);
    const double area_b = polygon_signed_area(b.vertices, g);
    return std::abs(area_a - area_b) <= 0.02 * std::max(std::abs(area_a), std::abs(area_b));
}

} // namespace

std::vector<ClosedCurve> find_limit_cycles(const FlowField& field,
                                           const PoincareSection& section, double t_days,
                                           const DirectionParams& dp,
                                           const DetectParams& params) {
    const GridSpec& g = field.native_grid();
    const OrbitParams op = make_orbit_params(field, params);
    std::vector<ClosedCurve> cycles;

    // Return displacement on a uniform seed ladder along the section.
    std::vector<ReturnSample> samples(params.n_seed);
    for (int i = 0; i < params.n_seed; ++i) {
        const double xi =
            -section.half_length + (i + 0.5) * 2.0 * section.half_length / params.n_seed;
        samples[i] = section_return(field, section, xi, t_days, dp, op);
    }

    auto accept = [&](std::optional<ClosedCurve> cycle) {
        if (!cycle) return;
        for (const ClosedCurve& c : cycles)
            if (same_cycle(c, *cycle, g, op.eps_close)) return;
        cycles.push_back(std::move(*cycle));
    };

    for (int i = 0; i + 1 < params.n_seed; ++i) {
        const ReturnSample& a = samples[i];
        const ReturnSample& b = samples[i + 1];
        if (!a.valid || !b.valid) continue;
        if (std::abs(a.displacement) < 0.25 * op.eps_close) {
            // Seed already sits on a fixed point.
            accept(build_cycle(field, section.at(a.xi, g), t_days, dp, op, params));
            continue;
        }
        if (a.displacement * b.displacement > 0.0) continue;

        // Bisection on the displacement sign change.
        double xa = a.xi, da = a.displacement;
        double xb = b.xi;
        double x_fixed = 0.5 * (xa + xb);
        bool refined = false;
        for (int it = 0; it < params.bisect_max_iter; ++it) {
            const double xm = 0.5 * (xa + xb);
            const ReturnSample m = section_return(field, section, xm, t_days, dp, op);
            if (!m.valid) break;
            if (std::abs(m.displacement) < 0.25 * op.eps_close || (xb - xa) < 1e-3 * op.step) {
                x_fixed = xm;
                refined = true;
                break;
            }
            if (da * m.displacement < 0.0) {
                xb = xm;
            } else {
                xa = xm;
                da = m.displacement;
            }
            x_fixed = 0.5 * (xa + xb);
            refined = true;
        }
        if (!refined) continue;

        auto cycle = build_cycle(field, section.at(x_fixed, g), t_days, dp, op, params);
        if (!cycle) continue;
        bool dup = false;
        for (const ClosedCurve& c : cycles)
            if (same_cycle(c, *cycle, g, op.eps_close)) {
                dup = true;
                break;
            }
        if (!dup) cycles.push_back(std::move(*cycle));
    }
    return cycles;
}

SweepResult sweep_mu(const FlowField& field, double t_days,
                     const std::vector<PoincareSection>& sections,
                     const std::vector<double>& mu_values,
                     const std::vector<ChiBranch>& branches, const DetectParams& params,
                     Exec exec) {
    struct Task {
        int section;
        double mu;
        ChiBranch branch;
    };
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < sections.size(); ++s)
        for (double mu : mu_values)
            for (ChiBranch br : branches) tasks.push_back({static_cast<int>(s), mu, br});

    // Each task is independent; results land in per-task slots so the merge
    // order (and the output) is identical for any schedule.
    std::vector<std::vector<ClosedCurve>> slots(tasks.size());
    const int n_tasks = static_cast<int>(tasks.size());
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int k = 0; k < n_tasks; ++k) {
            const Task& task = tasks[k];
            slots[k] = find_limit_cycles(field, sections[task.section], t_days,
                                         {task.mu, task.branch}, params);
        }
    } else {
        for (int k = 0; k < n_tasks; ++k) {
            const Task& task = tasks[k];
            slots[k] = find_limit_cycles(field, sections[task.section], t_days,
                                         {task.mu, task.branch}, params);
        }
    }

    SweepResult out;
    const GridSpec& g = field.native_grid();
    const OrbitParams op = make_orbit_params(field, params);
    for (auto& slot : slots)
        for (ClosedCurve& c : slot) {
            bool dup = false;
            for (const ClosedCurve& kept : out.curves)
                if (same_cycle(kept, c, g, op.eps_close)) {
                    dup = true;
                    break;
                }
            if (!dup) out.curves.push_back(std::move(c));
        }

    // Deterministic curve order: by (mu, branch, centroid).
    std::stable_sort(out.curves.begin(), out.curves.end(),
                     [](const ClosedCurve& a, const ClosedCurve& b) {
                         if (a.mu != b.mu) return a.mu < b.mu;
                         if (a.branch != b.branch) return a.branch == ChiBranch::Plus;
                         const Vec2 ca = polygon_centroid(a.vertices);
                         const Vec2 cb = polygon_centroid(b.vertices);
                         return ca.x < cb.x || (ca.x == cb.x && ca.y < cb.y);
                     });

    // Belt grouping: union by mutual centroid enclosure.
    const int n = static_cast<int>(out.curves.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const bool i_in_j =
                point_in_polygon(out.curves[j].vertices, polygon_centroid(out.curves[i].vertices));
            const bool j_in_i =
                point_in_polygon(out.curves[i].vertices, polygon_centroid(out.curves[j].vertices));
            if (i_in_j || j_in_i) parent[find(i)] = find(j);
        }

    std::vector<int> root_to_belt(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        if (root_to_belt[r] < 0) {
            root_to_belt[r] = static_cast<int>(out.belts.size());
            out.belts.emplace_back();
        }
        out.belts[root_to_belt[r]].members.push_back(i);
    }
    for (OecsBelt& belt : out.belts) {
        std::stable_sort(belt.members.begin(), belt.members.end(), [&](int a, int b) {
            return polygon_signed_area(out.curves[a].vertices, g) <
                   polygon_signed_area(out.curves[b].vertices, g);
        });
        // Nesting sanity: adjacent members must not cross; drop offenders.
        std::vector<int> kept;
        for (int idx : belt.members) {
            if (!kept.empty() &&
                rings_intersect(out.curves[kept.back()].vertices, out.curves[idx].vertices)) {
                std::cerr << "event=belt_member_drop reason=intersects_neighbor mu="
                          << out.curves[idx].mu << "\n";
                continue;
            }
            kept.push_back(idx);
        }
        belt.members = std::move(kept);
    }
    return out;
}

} // namespace oecs
