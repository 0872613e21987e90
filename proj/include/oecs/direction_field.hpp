#ifndef OECS_DIRECTION_FIELD_HPP
#define OECS_DIRECTION_FIELD_HPP

#include <vector>

#include "oecs/curve.hpp"
#include "oecs/flow_field.hpp"

namespace oecs {

struct DirectionParams {
    double mu = 0.0;  // tangential stretching rate [1/s]
    ChiBranch branch = ChiBranch::Plus;
};

// True when s2 - s1 != 0 and s1 <= mu <= s2 (the set U_mu).
bool in_u_mu(const StrainAnalysis& sa, double mu);

// Eigenvector-blended unit direction
//   chi = sqrt((s2-mu)/(s2-s1)) e1 +/- sqrt((mu-s1)/(s2-s1)) e2.
// Orbits of the field have constant tangential stretching rate mu.
// Throws OutsideUmuError off U_mu.
Vec2 chi_from_strain(const StrainAnalysis& sa, const DirectionParams& dp);

Vec2 chi(const FlowField& field, const Vec2& p, double t_days, const DirectionParams& dp);

// <x', S x'> / <x', x'> per vertex (tangents by centered differences in
// physical coordinates); the mu-constancy verifier for accepted cycles.
std::vector<double> tangential_stretch(const ClosedCurve& curve, const FlowField& field,
                                       double t_days);

} // namespace oecs

#endif
