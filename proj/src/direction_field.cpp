#include "oecs/direction_field.hpp"

#include <cmath>
#include <string>

#include "oecs/errors.hpp"

namespace oecs {

bool in_u_mu(const StrainAnalysis& sa, double mu) {
    return sa.s2 - sa.s1 > 0.0 && sa.s1 <= mu && mu <= sa.s2;
}

Vec2 chi_from_strain(const StrainAnalysis& sa, const DirectionParams& dp) {
    const double spread = sa.s2 - sa.s1;
    if (!(spread > 0.0) || dp.mu < sa.s1 || dp.mu > sa.s2)
        throw OutsideUmuError("point outside U_mu: s1=" + std::to_string(sa.s1) +
                              " s2=" + std::to_string(sa.s2) + " mu=" + std::to_string(dp.mu));
    const double c1 = std::sqrt(std::max(0.0, (sa.s2 - dp.mu) / spread));
    const double c2 = std::sqrt(std::max(0.0, (dp.mu - sa.s1) / spread));
    const Vec2 v = c1 * sa.e1 + (dp.branch == ChiBranch::Plus ? c2 : -c2) * sa.e2;
    return v;  // unit by construction: c1^2 + c2^2 = 1, e1 orthogonal to e2
}

Vec2 chi(const FlowField& field, const Vec2& p, double t_days, const DirectionParams& dp) {
    return chi_from_strain(field.strain(p, t_days), dp);
}

std::vector<double> tangential_stretch(const ClosedCurve& curve, const FlowField& field,
                                       double t_days) {
    const int n = curve.size();
    std::vector<double> out(n, 0.0);
    for (int k = 0; k < n; ++k) {
        const Vec2& prev = curve.vertices[(k + n - 1) % n];
        const Vec2& next = curve.vertices[(k + 1) % n];
        const Vec2 m = field.meters_per_unit(curve.vertices[k]);
        const Vec2 tang{(next.x - prev.x) * m.x, (next.y - prev.y) * m.y};
        const double denom = tang.norm2();
        if (denom == 0.0) continue;
        const Mat2 S = field.strain(curve.vertices[k], t_days).S;
        out[k] = dot(tang, S.apply(tang)) / denom;
    }
    return out;
}

} // namespace oecs
