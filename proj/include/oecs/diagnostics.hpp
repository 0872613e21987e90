#ifndef OECS_DIAGNOSTICS_HPP
#define OECS_DIAGNOSTICS_HPP

#include <cstdint>
#include <vector>

#include "oecs/gridded_field.hpp"

namespace oecs {

// Classical Eulerian comparison diagnostics on the native grid.
// OW uses the spin-rate convention s2^2 - (omega/2)^2 so that pure shear
// scores exactly zero; PV is absolute vorticity omega + f(lat) in geographic
// mode (a declared proxy) and plain vorticity in cartesian mode.
struct DiagnosticFields {
    int nx = 0, ny = 0;
    std::vector<double> ow;           // [1/s^2]
    std::vector<double> pv;           // [1/s]
    std::vector<double> grad_pv_mag;  // [1/(s m)]
    double omega_mean = 0.0;          // area-weighted domain mean vorticity [1/s]

    double at(const std::vector<double>& f, int ix, int iy) const {
        return f[static_cast<std::size_t>(iy) * nx + ix];
    }
};

DiagnosticFields compute_diagnostics(const GriddedField& field, double t_days,
                                     Exec exec = Exec::Parallel,
                                     double earth_omega = kEarthOmega);

// Serial reference (plain loops) for tests and the kernel benchmark.
DiagnosticFields compute_diagnostics_serial(const GriddedField& field, double t_days,
                                            double earth_omega = kEarthOmega);

// Nodes where OW < -alpha * std(OW): the usual thresholded vortical regions.
std::vector<std::uint8_t> ow_vortical_mask(const DiagnosticFields& diag, double alpha);

// Number of 4-connected regions in a node mask.
int count_mask_regions(const std::vector<std::uint8_t>& mask, int nx, int ny);

} // namespace oecs

#endif
