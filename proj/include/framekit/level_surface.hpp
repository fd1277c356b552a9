#pragma once

#include <memory>

#include "framekit/characterize.hpp"
#include "framekit/scalar_field.hpp"

namespace framekit {

/// Metric induced by the Hessian of a scalar field. Fields whose Hessian has
/// index 2 or 3 are negated so the working index is always 0 or 1; the
/// Levi-Civita connection is unchanged by that sign.
class HessianMetricField final : public MetricField {
public:
    HessianMetricField(ScalarField field, const std::vector<Vec3>& probes);

    PseudoMetric at(const Vec3& p) const override;
    Mat3 matrix_at(const Vec3& p) const override;
    Christoffel christoffel(const Vec3& p) const override;
    Mat3 directional_derivative(const Vec3& p, const Vec3& v) const override;
    Mat3 second_directional_derivative(const Vec3& p, const Vec3& v, const Vec3& a) const override;
    bool constant() const override { return constant_hessian_; }

    int base_index() const { return base_index_; }      // index of Hess F itself
    int working_index() const { return working_index_; }
    double sign() const { return sign_; }               // +-1 applied to Hess F
    const ScalarField& field() const { return field_; }

private:
    ScalarField field_;
    int base_index_ = 0;
    int working_index_ = 0;
    double sign_ = 1.0;
    bool constant_hessian_ = false;
};

/// Validated Hessian metric over a probe region (non-degenerate, constant index).
std::shared_ptr<HessianMetricField> hessian_metric(const ScalarField& field,
                                                   const std::vector<Vec3>& probes);

/// Covariant Hessian H^F(X, Y) = X^i Y^j (F_ij - Gamma^k_ij F_k).
Mat3 covariant_hessian_matrix(const HessianMetricField& hm, const Vec3& p);
double covariant_hessian(const HessianMetricField& hm, const Vec3& p, const Vec3& X, const Vec3& Y);

struct LevelResidualReport {
    std::string criterion;  // "hessian" or "euclidean"
    std::vector<double> s;
    std::vector<double> a0, a1, a2;  // b-coefficients for the euclidean criterion
    std::vector<double> residual;    // a2 k2 + a1 k1 + a0 per grid point
    double max_residual = 0.0;
    double deriv_consistency = 0.0;  // max |a_i' - eps_i H(t, n_i)| over the grid
    double anchor_tangency = 0.0;    // (grad F, t) at s = 0
    double level_value = 0.0;        // mean of F along the curve
    double level_spread = 0.0;
    bool on_surface = false;
};

struct LevelCheckOptions {
    double residual_tol = 1e-3;
    double anchor_tol = 1e-6;  // relative to |grad F| |t| at the anchor
    int grid_n = 0;
};

/// Membership criterion in the Hessian metric: Bishop-frames the curve with
/// respect to Hess F and reports the linear-relation residual.
LevelResidualReport level_residual_hessian(const ScalarField& field, const Curve& curve,
                                           const LevelCheckOptions& opts = {});

/// Euclidean-metric criterion; valid even where Hess F degenerates.
LevelResidualReport level_residual_euclidean(const ScalarField& field, const Curve& curve,
                                             const LevelCheckOptions& opts = {});

/// Normal curvature of the level surface through p in tangent direction v.
double normal_curvature(const ScalarField& field, const Vec3& p, const Vec3& v,
                        double tangency_tol = 1e-8);

/// Gradient-descent projection onto F = c.
Vec3 project_to_level(const ScalarField& field, Vec3 p, double c, double tol = 1e-12,
                      int max_iter = 100);

/// Sample a seed curve, project every sample onto F = c, return the table as a
/// curve. Membership of the samples is verified to the stated tolerance.
Curve project_curve_to_level(const ScalarField& field, const Curve& seed, double c,
                             int n_samples = 512, double tol = 1e-12);

}  // namespace framekit
