#ifndef OECS_LIMIT_CYCLE_HPP
#define OECS_LIMIT_CYCLE_HPP

#include <vector>

#include "oecs/curve.hpp"
#include "oecs/detect_params.hpp"
#include "oecs/orbit.hpp"
#include "oecs/topology.hpp"

namespace oecs {

// Curves of one nesting chain (an annular belt of non-intersecting loops).
// `representative` indexes into the global curve list once the persistence
// metric has been computed; -1 until then.
struct OecsBelt {
    std::vector<int> members;  // curve indices, sorted by enclosed area
    int representative = -1;
};

struct SweepResult {
    std::vector<ClosedCurve> curves;
    std::vector<OecsBelt> belts;
};

// Equispaced mu values in [-mu*, mu*] with
// mu* = mu_bound_fraction * median over the grid of max(|s1|, |s2|).
std::vector<double> default_mu_values(const FlowField& field, double t_days,
                                      const DetectParams& params = {});

OrbitParams make_orbit_params(const FlowField& field, const DetectParams& params);

// Signed displacement of the first return to the section, evaluated at the
// seed offset xi [m]; empty when the orbit never returns.
struct ReturnSample {
    double xi = 0.0;
    bool valid = false;
    double displacement = 0.0;
};
ReturnSample section_return(const FlowField& field, const PoincareSection& section,
                            double xi, double t_days, const DirectionParams& dp,
                            const OrbitParams& op);

// Scans n_seed offsets along the section, brackets sign changes of the
// return displacement, refines them by bisection and re-integrates each fixed
// point into a validated, counterclockwise ClosedCurve (closure, simplicity
// and mu-constancy are enforced here).
std::vector<ClosedCurve> find_limit_cycles(const FlowField& field,
                                           const PoincareSection& section, double t_days,
                                           const DirectionParams& dp,
                                           const DetectParams& params = {});

// Runs find_limit_cycles for every (section, mu, branch) combination,
// deduplicates, and groups the surviving curves into belts by mutual
// enclosure of centroids. Deterministic output order regardless of Exec.
SweepResult sweep_mu(const FlowField& field, double t_days,
                     const std::vector<PoincareSection>& sections,
                     const std::vector<double>& mu_values,
                     const std::vector<ChiBranch>& branches,
                     const DetectParams& params = {}, Exec exec = Exec::Parallel);

} // namespace oecs

#endif
