#ifndef OECS_GEOSTROPHIC_HPP
#define OECS_GEOSTROPHIC_HPP

#include "oecs/dataset.hpp"
#include "oecs/flow_field.hpp"

namespace oecs {

struct GeostrophicConstants {
    double gravity = kStandardGravity;    // [m/s^2]
    double earth_omega = kEarthOmega;     // [rad/s]
    double theta_min_deg = 5.0;           // equatorial exclusion half-width
    double coriolis_override = 0.0;       // nonzero: f-plane with this constant f [1/s]
};

// Converts sea surface height to surface velocity under the geostrophic
// balance, expressed in m/s on the local tangent plane:
//   u = -g/(R f) * dh/dtheta,    v = g/(R f cos(theta)) * dh/dphi
// with f = 2*Omega*sin(theta) and angle derivatives per radian. Grids that
// cross the equatorial exclusion band |theta| < theta_min are rejected since
// f -> 0 there.
VelocityDataset geostrophic_from_ssh(const SshDataset& ssh,
                                     const GeostrophicConstants& constants = {});

} // namespace oecs

#endif
