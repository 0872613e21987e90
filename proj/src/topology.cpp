#include "oecs/topology.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "oecs/errors.hpp"
#include "oecs/gridded_field.hpp"

namespace oecs {

namespace {

struct TensorDeviator {
    const FlowField& field;
    double t;

    // (S11 - S22, S12) at p.
    Vec2 eval(const Vec2& p) const {
        const Mat2 S = field.velocity_gradient(p, t).sym();
        return {S.a11 - S.a22, S.a12};
    }
};

// Scale of the deviator over the grid, for residual tolerances.
double deviator_scale(const FlowField& field, double t) {
    const GridSpec& g = field.native_grid();
    double scale = 0.0;
    const int step = std::max(1, g.nx / 64);
    for (int iy = 0; iy < g.ny; iy += step)
        for (int ix = 0; ix < g.nx; ix += step) {
            const Vec2 p = g.node_coord(ix, iy);
            if (!field.contains(p)) continue;
            const Mat2 S = field.velocity_gradient(p, t).sym();
            scale = std::max(scale, std::max(std::abs(S.a11 - S.a22), std::abs(S.a12)));
        }
    return scale;
}

bool sign_change(double a, double b, double c, double d) {
    const double lo = std::min(std::min(a, b), std::min(c, d));
    const double hi = std::max(std::max(a, b), std::max(c, d));
    return lo <= 0.0 && hi >= 0.0 && lo < hi;
}

// 2D Newton on the deviator with finite-difference Jacobian. Returns the
// refined root, or nothing when it fails to converge or drifts away.
std::optional<Vec2> refine_root(const TensorDeviator& dev, const GridSpec& grid, Vec2 p0,
                                double scale, const DetectParams& params) {
    const double hx = 1e-3 * grid.dx;
    const double hy = 1e-3 * grid.dy;
    Vec2 p = p0;
    for (int it = 0; it < params.newton_max_iter; ++it) {
        if (!grid.contains(p)) return std::nullopt;
        const Vec2 f = dev.eval(p);
        if (std::max(std::abs(f.x), std::abs(f.y)) <= params.newton_tol_rel * scale) return p;
        const Vec2 fxp = dev.eval({std::min(p.x + hx, grid.x_max()), p.y});
        const Vec2 fxm = dev.eval({std::max(p.x - hx, grid.x0), p.y});
        const Vec2 fyp = dev.eval({p.x, std::min(p.y + hy, grid.y_max())});
        const Vec2 fym = dev.eval({p.x, std::max(p.y - hy, grid.y0)});
        const Mat2 J((fxp.x - fxm.x) / (2 * hx), (fyp.x - fym.x) / (2 * hy),
                     (fxp.y - fxm.y) / (2 * hx), (fyp.y - fym.y) / (2 * hy));
        const double det = J.det();
        if (std::abs(det) < 1e-30) return std::nullopt;  // non-transverse zero
        Vec2 step{(-J.a22 * f.x + J.a12 * f.y) / det, (J.a21 * f.x - J.a11 * f.y) / det};
        // Clamp to 1.5 cells so the iteration cannot tunnel to another root.
        step.x = std::clamp(step.x, -1.5 * grid.dx, 1.5 * grid.dx);
        step.y = std::clamp(step.y, -1.5 * grid.dy, 1.5 * grid.dy);
        p += step;
        if (std::abs(p.x - p0.x) > 2.5 * grid.dx || std::abs(p.y - p0.y) > 2.5 * grid.dy)
            return std::nullopt;
    }
    return std::nullopt;
}

} // namespace

std::vector<Vec2> find_singularity_positions(const FlowField& field, double t_days,
                                             const DetectParams& params) {
    const GridSpec& g = field.native_grid();
    const TensorDeviator dev{field, t_days};
    const double scale = deviator_scale(field, t_days);
    if (scale <= 0.0) return {};  // S has no anisotropy anywhere: degenerate

    // Nodal deviator fields for the cell scan.
    std::vector<double> D(g.node_count()), B(g.node_count());
    std::vector<std::uint8_t> valid(g.node_count(), 0);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const Vec2 p = g.node_coord(ix, iy);
            const std::size_t k = static_cast<std::size_t>(iy) * g.nx + ix;
            if (!field.contains(p)) continue;
            const Vec2 f = dev.eval(p);
            D[k] = f.x;
            B[k] = f.y;
            valid[k] = 1;
        }

    std::vector<Vec2> found;
    for (int iy = 0; iy + 1 < g.ny; ++iy) {
        for (int ix = 0; ix + 1 < g.nx; ++ix) {
            const std::size_t k00 = static_cast<std::size_t>(iy) * g.nx + ix;
            const std::size_t k10 = k00 + 1;
            const std::size_t k01 = k00 + g.nx;
            const std::size_t k11 = k01 + 1;
            if (!(valid[k00] && valid[k10] && valid[k01] && valid[k11])) continue;
            if (!sign_change(D[k00], D[k10], D[k01], D[k11])) continue;
            if (!sign_change(B[k00], B[k10], B[k01], B[k11])) continue;
            const Vec2 center = g.node_coord(ix, iy) + Vec2{0.5 * g.dx, 0.5 * g.dy};
            auto root = refine_root(dev, g, center, scale, params);
            if (!root) {
                std::cerr << "event=singularity_newton_drop cell=" << ix << "," << iy << "\n";
                continue;
            }
            found.push_back(*root);
        }
    }

    // Merge candidates closer than one cell; keep the smaller-residual one.
    std::sort(found.begin(), found.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    std::vector<Vec2> merged;
    for (const Vec2& p : found) {
        bool dup = false;
        for (Vec2& q : merged) {
            if (std::abs(p.x - q.x) < g.dx && std::abs(p.y - q.y) < g.dy) {
                const Vec2 fp = dev.eval(p), fq = dev.eval(q);
                if (std::max(std::abs(fp.x), std::abs(fp.y)) <
                    std::max(std::abs(fq.x), std::abs(fq.y)))
                    q = p;
                dup = true;
                break;
            }
        }
        if (!dup) merged.push_back(p);
    }
    std::sort(merged.begin(), merged.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    return merged;
}

double e1_winding(const FlowField& field, double t_days, const std::vector<Vec2>& loop) {
    const std::size_t n = loop.size();
    double total = 0.0;
    double prev_angle = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const Vec2& p = loop[k % n];
        const StrainAnalysis sa = field.strain(p, t_days);
        double ang = std::atan2(sa.e1.y, sa.e1.x);
        if (k == 0) {
            prev_angle = ang;
            continue;
        }
        // Direction field: compare angles mod pi.
        double diff = ang - prev_angle;
        while (diff > 0.5 * kPi) diff -= kPi;
        while (diff <= -0.5 * kPi) diff += kPi;
        total += diff;
        prev_angle += diff;
    }
    return total;
}

SingularityKind classify_singularity(const FlowField& field, double t_days, const Vec2& s,
                                     const DetectParams& params) {
    const GridSpec& g = field.native_grid();
    const double radius = params.r_class_cells * g.min_cell_meters();
    const Vec2 m = g.meters_per_unit(s);
    std::vector<Vec2> circle;
    circle.reserve(params.n_circle);
    for (int k = 0; k < params.n_circle; ++k) {
        const double a = 2.0 * kPi * k / params.n_circle;
        Vec2 p{s.x + radius * std::cos(a) / m.x, s.y + radius * std::sin(a) / m.y};
        p.x = std::clamp(p.x, g.x0, g.x_max());
        p.y = std::clamp(p.y, g.y0, g.y_max());
        circle.push_back(p);
    }
    const double index = e1_winding(field, t_days, circle) / (2.0 * kPi);
    if (std::abs(index - 0.5) < 0.15) return SingularityKind::Wedge;
    if (std::abs(index + 0.5) < 0.15) return SingularityKind::Trisector;
    throw NumericalDegeneracy("singularity at (" + std::to_string(s.x) + ", " +
                              std::to_string(s.y) + ") has non-generic index " +
                              std::to_string(index));
}

std::vector<Singularity> find_singularities(const FlowField& field, double t_days,
                                            const DetectParams& params) {
    std::vector<Singularity> out;
    for (const Vec2& p : find_singularity_positions(field, t_days, params)) {
        Singularity s;
        s.position = p;
        try {
            s.kind = classify_singularity(field, t_days, p, params);
        } catch (const NumericalDegeneracy& e) {
            std::cerr << "event=singularity_classify_drop what=\"" << e.what() << "\"\n";
            continue;
        }
        s.index = s.kind == SingularityKind::Wedge ? 0.5 : -0.5;
        out.push_back(s);
    }
    return out;
}

std::vector<PoincareSection> place_sections(const std::vector<Singularity>& singularities,
                                            const FlowField& field,
                                            const DetectParams& params) {
    const GridSpec& g = field.native_grid();
    const int n = static_cast<int>(singularities.size());
    std::vector<PoincareSection> sections;
    if (n < 2) return sections;

    // Nearest neighbor among all singularities, in cell units.
    auto cell_dist = [&](int i, int j) {
        const Vec2& a = singularities[i].position;
        const Vec2& b = singularities[j].position;
        return std::hypot((a.x - b.x) / g.dx, (a.y - b.y) / g.dy);
    };
    std::vector<int> nn(n, -1);
    for (int i = 0; i < n; ++i) {
        double best = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = cell_dist(i, j);
            if (nn[i] < 0 || d < best) {
                best = d;
                nn[i] = j;
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        const int j = nn[i];
        if (j <= i) continue;  // each pair once
        if (nn[j] != i) continue;
        if (singularities[i].kind != SingularityKind::Wedge ||
            singularities[j].kind != SingularityKind::Wedge)
            continue;
        if (cell_dist(i, j) > params.d_pair_max_cells) continue;

        const Vec2& a = singularities[i].position;
        const Vec2& b = singularities[j].position;
        PoincareSection sec;
        sec.base = 0.5 * (a + b);
        const Vec2 m = g.meters_per_unit(sec.base);
        const Vec2 axis{(b.x - a.x) * m.x, (b.y - a.y) * m.y};
        sec.direction = normalized(rot90(axis));
        sec.half_length = axis.norm();
        sec.parent_a = i;
        sec.parent_b = j;

        // Clip to the grid with a 2-cell margin.
        const double margin = 2.0 * g.min_cell_meters();
        double h = sec.half_length;
        auto inside = [&](double xi) {
            const Vec2 p = sec.at(xi, g);
            return p.x >= g.x0 + margin / m.x && p.x <= g.x_max() - margin / m.x &&
                   p.y >= g.y0 + margin / m.y && p.y <= g.y_max() - margin / m.y;
        };
        while (h > 0.0 && (!inside(h) || !inside(-h))) h *= 0.9;
        sec.half_length = h;
        if (sec.half_length < 2.0 * g.min_cell_meters()) continue;
        sections.push_back(sec);
    }

    std::sort(sections.begin(), sections.end(), [](const PoincareSection& l, const PoincareSection& r) {
        return l.base.x < r.base.x || (l.base.x == r.base.x && l.base.y < r.base.y);
    });
    return sections;
}

} // namespace oecs
