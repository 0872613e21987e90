#ifndef OECS_DETECT_PARAMS_HPP
#define OECS_DETECT_PARAMS_HPP

namespace oecs {

// Knobs of the detection pipeline. Length-like entries are expressed as
// fractions of the native grid scales so the same defaults work on ocean
// grids and desk-scale benchmarks.
struct DetectParams {
    // Singularity scan / classification
    double r_class_cells = 1.5;    // index-circle radius, in grid cells
    int n_circle = 64;             // samples on the index circle
    double d_pair_max_cells = 20.0;  // max wedge-pair separation, in cells
    double newton_tol_rel = 1e-10;   // residual tolerance vs field scale
    int newton_max_iter = 50;

    // mu sweep
    int n_mu = 11;
    double mu_bound_fraction = 0.3;  // mu* = fraction * median max(|s1|,|s2|)

    // Orbit integration
    double step_frac = 0.2;          // arclength step = frac * min cell [m]
    double l_max_perimeters = 4.0;   // orbit cap = this * domain perimeter
    double eps_close_frac = 0.1;     // closure gap = frac * min cell

    // Limit-cycle search
    int n_seed = 50;
    int bisect_max_iter = 40;

    // Acceptance gates on cycles
    double tol_mu_frac = 0.05;   // mu-constancy: 5% of local strain scale
    double eps_floq = 1e-6;      // |1 - rho2| floor for hyperbolicity
};

} // namespace oecs

#endif
