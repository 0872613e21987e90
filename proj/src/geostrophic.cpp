#include "oecs/geostrophic.hpp"

#include <cmath>
#include <string>

#include "oecs/errors.hpp"
#include "oecs/interp.hpp"

namespace oecs {

VelocityDataset geostrophic_from_ssh(const SshDataset& ssh,
                                     const GeostrophicConstants& constants) {
    ssh.validate();
    const GridSpec& g = ssh.grid;
    if (g.mode != CoordinateMode::Geographic)
        throw DataError("geostrophic conversion requires a geographic grid");
    const bool f_plane = constants.coriolis_override != 0.0;
    const double lat_lo = g.y0;
    const double lat_hi = g.y_max();
    const double excl = constants.theta_min_deg;
    if (!f_plane && lat_lo < excl && lat_hi > -excl)
        throw DataError("grid crosses the equatorial exclusion band |lat| < " +
                        std::to_string(excl) + " deg where the geostrophic balance degenerates");

    VelocityDataset out;
    out.grid = g;
    out.times = ssh.times;
    out.provenance = Provenance::FromSsh;
    const std::size_t slice = g.node_count();
    out.u.assign(ssh.h.size(), 0.0);
    out.v.assign(ssh.h.size(), 0.0);

    const double h_phi = g.dx * kDegToRad;    // node step in radians
    const double h_theta = g.dy * kDegToRad;
    const double R = g.earth_radius;

    for (int it = 0; it < ssh.nt(); ++it) {
        const double* h = ssh.h.data() + static_cast<std::size_t>(it) * slice;
        double* u = out.u.data() + static_cast<std::size_t>(it) * slice;
        double* v = out.v.data() + static_cast<std::size_t>(it) * slice;
        for (int iy = 0; iy < g.ny; ++iy) {
            const double theta = (g.y0 + iy * g.dy) * kDegToRad;
            const double f = f_plane ? constants.coriolis_override
                                     : 2.0 * constants.earth_omega * std::sin(theta);
            const double cos_theta = std::cos(theta);
            for (int ix = 0; ix < g.nx; ++ix) {
                const double dh_dphi =
                    stencil_derivative(h + static_cast<std::size_t>(iy) * g.nx, g.nx, ix, h_phi, 1);
                const double dh_dtheta =
                    stencil_derivative(h + ix, g.ny, iy, h_theta, g.nx);
                const std::size_t k = static_cast<std::size_t>(iy) * g.nx + ix;
                u[k] = -constants.gravity / (R * f) * dh_dtheta;
                v[k] = constants.gravity / (R * f * cos_theta) * dh_dphi;
            }
        }
    }
    out.validate();
    return out;
}

} // namespace oecs
