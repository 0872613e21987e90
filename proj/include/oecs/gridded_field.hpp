#ifndef OECS_GRIDDED_FIELD_HPP
#define OECS_GRIDDED_FIELD_HPP

#include <memory>
#include <vector>

#include "oecs/dataset.hpp"
#include "oecs/flow_field.hpp"
#include "oecs/interp.hpp"

namespace oecs {

// Sampling engine over a VelocityDataset: bicubic in space, linear in time.
// Velocity gradients are precomputed on the native grid per snapshot
// (4th-order centered stencils, 2nd-order one-sided within two cells of the
// boundary) and interpolated like any other field, which keeps the derived
// eigenvector fields C1 across cell edges.
class GriddedField : public FlowField {
public:
    explicit GriddedField(std::shared_ptr<const VelocityDataset> ds,
                          Exec exec = Exec::Parallel);

    Vec2 velocity(const Vec2& p, double t_days) const override;
    Mat2 velocity_gradient(const Vec2& p, double t_days) const override;
    Mat2 strain_time_derivative(const Vec2& p, double t_days) const override;

    bool contains(const Vec2& p) const override { return ds_->grid.contains(p); }
    double t_begin() const override { return ds_->times.front(); }
    double t_end() const override { return ds_->times.back(); }
    const GridSpec& native_grid() const override { return ds_->grid; }
    double omega_mean(double t_days) const override;
    bool is_steady() const override { return ds_->nt() == 1; }

    const VelocityDataset& dataset() const { return *ds_; }

    // Backward-difference step for dS/dt in days; defaults to the native
    // snapshot interval.
    double dt_back_days() const { return dt_back_days_; }
    void set_dt_back_days(double dt) { dt_back_days_ = dt; }

    // Nodal gradient component at a snapshot, [1/s]; c indexes
    // {dudx, dudy, dvdx, dvdy}.
    double gradient_node(int c, int it, int iy, int ix) const {
        return grad_[c][ds_->index(it, iy, ix)];
    }
    double vorticity_node(int it, int iy, int ix) const {
        const std::size_t k = ds_->index(it, iy, ix);
        return grad_[2][k] - grad_[1][k];
    }

    struct TimeBracket {
        int it0;
        int it1;
        double alpha;
    };
    TimeBracket bracket(double t_days) const;

private:
    double sample_pair(const double* slice0, const double* slice1, double alpha,
                       double gx, double gy) const;

    std::shared_ptr<const VelocityDataset> ds_;
    // Per-snapshot nodal gradients: dudx, dudy, dvdx, dvdy [1/s].
    std::vector<double> grad_[4];
    std::vector<double> area_weight_;  // per node, trapezoid x metric
    double area_weight_sum_ = 0.0;
    double dt_back_days_ = 1.0;
};

// Nodal strain summary of one time slice, used by the singularity scan and
// the mu-sweep scale estimate.
struct StrainGrids {
    int nx = 0, ny = 0;
    std::vector<double> d;       // S11 - S22 [1/s]
    std::vector<double> b;       // S12 [1/s]
    std::vector<double> s1, s2;  // eigenvalues [1/s]

    double at_d(int ix, int iy) const { return d[static_cast<std::size_t>(iy) * nx + ix]; }
    double at_b(int ix, int iy) const { return b[static_cast<std::size_t>(iy) * nx + ix]; }
};

StrainGrids compute_strain_grids(const GriddedField& field, double t_days,
                                 Exec exec = Exec::Parallel);

// Plain-loop reference used by tests and the kernel benchmark.
StrainGrids compute_strain_grids_serial(const GriddedField& field, double t_days);

} // namespace oecs

#endif
