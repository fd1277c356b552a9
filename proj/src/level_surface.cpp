#include "framekit/level_surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "framekit/fd.hpp"

namespace framekit {

namespace {

std::string point_str(const Vec3& p) {
    std::ostringstream os;
    os << "(" << p.x() << ", " << p.y() << ", " << p.z() << ")";
    return os.str();
}

int hessian_index_at(const ScalarField& field, const Vec3& p) {
    const Mat3 h = field.hessian(p);
    Eigen::SelfAdjointEigenSolver<Mat3> eig(h);
    const Vec3 lambda = eig.eigenvalues();
    const double lmax = lambda.cwiseAbs().maxCoeff();
    if (lmax == 0.0 || lambda.cwiseAbs().minCoeff() < 1e-10 * lmax)
        throw Error(ErrorCode::DegenerateHessian,
                    "Hessian degenerates at " + point_str(p));
    int idx = 0;
    for (int i = 0; i < 3; ++i)
        if (lambda[i] < 0) ++idx;
    return idx;
}

}  // namespace

HessianMetricField::HessianMetricField(ScalarField field, const std::vector<Vec3>& probes)
    : field_(std::move(field)) {
    if (probes.empty())
        throw Error(ErrorCode::InvalidArgument, "Hessian metric needs at least one probe point");

    base_index_ = hessian_index_at(field_, probes.front());
    for (const auto& p : probes) {
        const int idx = hessian_index_at(field_, p);
        if (idx != base_index_)
            throw Error(ErrorCode::MixedIndex,
                        "Hessian index changes across the region: " + std::to_string(base_index_) +
                            " vs " + std::to_string(idx) + " at " + point_str(p));
    }
    sign_ = base_index_ >= 2 ? -1.0 : 1.0;
    working_index_ = sign_ < 0 ? 3 - base_index_ : base_index_;
    constant_hessian_ = field_.has_constant_hessian();
}

std::shared_ptr<HessianMetricField> hessian_metric(const ScalarField& field,
                                                   const std::vector<Vec3>& probes) {
    return std::make_shared<HessianMetricField>(field, probes);
}

Mat3 HessianMetricField::matrix_at(const Vec3& p) const { return sign_ * field_.hessian(p); }

PseudoMetric HessianMetricField::at(const Vec3& p) const {
    try {
        PseudoMetric m(matrix_at(p));
        if (m.index() != working_index_)
            throw Error(ErrorCode::MixedIndex,
                        "Hessian index changes at " + point_str(p));
        return m;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateMetric)
            throw Error(ErrorCode::DegenerateHessian, "Hessian degenerates at " + point_str(p));
        throw;
    }
}

Christoffel HessianMetricField::christoffel(const Vec3& p) const {
    const Mat3 w = matrix_at(p);
    const Mat3 winv = w.inverse();
    const auto t = field_.third(p);  // t[l](i,j) = F_ijl
    Christoffel c = Christoffel::zero();
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) c.gamma[k] += 0.5 * winv(k, l) * (sign_ * t[l]);
    return c;
}

Mat3 HessianMetricField::directional_derivative(const Vec3& p, const Vec3& v) const {
    const auto t = field_.third(p);
    return sign_ * (v[0] * t[0] + v[1] * t[1] + v[2] * t[2]);
}

Mat3 HessianMetricField::second_directional_derivative(const Vec3& p, const Vec3& v,
                                                       const Vec3& a) const {
    const auto t = field_.third(p);
    return sign_ * (field_.fourth_contracted(p, v) + a[0] * t[0] + a[1] * t[1] + a[2] * t[2]);
}

Mat3 covariant_hessian_matrix(const HessianMetricField& hm, const Vec3& p) {
    const Christoffel c = hm.christoffel(p);
    const Vec3 g = hm.field().gradient(p);
    Mat3 out = hm.field().hessian(p);
    for (int k = 0; k < 3; ++k) out -= c.gamma[k] * g[k];
    return out;
}

double covariant_hessian(const HessianMetricField& hm, const Vec3& p, const Vec3& X,
                         const Vec3& Y) {
    return X.dot(covariant_hessian_matrix(hm, p) * Y);
}

// ---------------------------------------------------------------------------
// membership criteria
// ---------------------------------------------------------------------------

namespace {

// max |fd(series) - target| with five-point first-derivative stencils
double derivative_defect(const std::vector<double>& s, const std::vector<double>& series,
                         const std::vector<double>& target) {
    const std::size_t n = s.size();
    if (n < 5) return 0.0;
    const double h = s[1] - s[0];
    const std::vector<double> offsets = {-2, -1, 0, 1, 2};
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = std::clamp<std::size_t>(i, 2, n - 3);
        const double o = static_cast<double>(i) - static_cast<double>(c);
        const Eigen::MatrixXd w = fd_weights(o, offsets, 1);
        double d = 0.0;
        for (int j = 0; j < 5; ++j) d += (w(1, j) / h) * series[c - 2 + j];
        worst = std::max(worst, std::abs(d - target[i]));
    }
    return worst;
}

LevelResidualReport run_criterion(const ScalarField& field, const Curve& curve,
                                  std::shared_ptr<const MetricField> metric,
                                  const HessianMetricField* hm, const LevelCheckOptions& opts,
                                  const char* name) {
    ReparamOptions ropts;
    ropts.grid_n = opts.grid_n;
    const ParamCurve pc = reparametrize(curve, std::move(metric), ropts);
    const FrameField ff = bishop(pc);
    const std::size_t n = ff.size();

    LevelResidualReport rep;
    rep.criterion = name;
    rep.s = ff.s;
    rep.a0.resize(n);
    rep.a1.resize(n);
    rep.a2.resize(n);
    rep.residual.resize(n);

    std::vector<double> target1(n), target2(n), values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 x = pc.point(ff.s[i]);
        const Vec3 grad = field.gradient(x);
        const Mat3 H = hm ? covariant_hessian_matrix(*hm, x) : field.hessian(x);

        // expansion coefficients of grad F in the normal legs
        rep.a0[i] = ff.e0[i].dot(H * ff.e0[i]);
        rep.a1[i] = ff.eps1 * grad.dot(ff.e1[i]);
        rep.a2[i] = grad.dot(ff.e2[i]);
        rep.residual[i] = rep.a0[i] + rep.a1[i] * ff.c1[i] + rep.a2[i] * ff.c2[i];
        rep.max_residual = std::max(rep.max_residual, std::abs(rep.residual[i]));

        target1[i] = ff.eps1 * ff.e0[i].dot(H * ff.e1[i]);
        target2[i] = ff.e0[i].dot(H * ff.e2[i]);
        values[i] = field.value(x);
    }

    rep.deriv_consistency = std::max(derivative_defect(ff.s, rep.a1, target1),
                                     derivative_defect(ff.s, rep.a2, target2));

    const Vec3 x0 = pc.point(0.0);
    rep.anchor_tangency = field.gradient(x0).dot(ff.e0[0]);

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    rep.level_value = mean;
    for (double v : values) rep.level_spread = std::max(rep.level_spread, std::abs(v - mean));

    const double anchor_scale = 1.0 + field.gradient(x0).norm() * ff.e0[0].norm();
    rep.on_surface = rep.max_residual <= opts.residual_tol &&
                     std::abs(rep.anchor_tangency) <= opts.anchor_tol * anchor_scale;
    return rep;
}

}  // namespace

LevelResidualReport level_residual_hessian(const ScalarField& field, const Curve& curve,
                                           const LevelCheckOptions& opts) {
    std::vector<Vec3> probes;
    for (double t : curve.grid_params()) probes.push_back(curve.eval(t));
    auto hm = hessian_metric(field, probes);

    const CausalCharacter causal = profile_causal(curve, *hm);
    if (causal == CausalCharacter::Lightlike)
        throw Error(ErrorCode::AsymptoticDirection,
                    "velocity is asymptotic (lightlike in the Hessian metric); the Hessian "
                    "criterion does not apply");

    return run_criterion(field, curve, hm, hm.get(), opts, "hessian");
}

LevelResidualReport level_residual_euclidean(const ScalarField& field, const Curve& curve,
                                             const LevelCheckOptions& opts) {
    auto metric = std::make_shared<ConstantMetricField>(PseudoMetric::euclidean());
    return run_criterion(field, curve, std::move(metric), nullptr, opts, "euclidean");
}

double normal_curvature(const ScalarField& field, const Vec3& p, const Vec3& v,
                        double tangency_tol) {
    const Vec3 grad = field.gradient(p);
    const double gnorm = grad.norm();
    if (gnorm <= 1e-12 * (1.0 + std::abs(field.value(p))))
        throw Error(ErrorCode::CriticalPoint, "gradient vanishes at " + point_str(p));
    if (std::abs(grad.dot(v)) > tangency_tol * gnorm * v.norm())
        throw Error(ErrorCode::NonTangent, "direction is not tangent to the level surface");
    return v.dot(field.hessian(p) * v) / gnorm;
}

Vec3 project_to_level(const ScalarField& field, Vec3 p, double c, double tol, int max_iter) {
    for (int it = 0; it < max_iter; ++it) {
        const double r = field.value(p) - c;
        if (std::abs(r) <= tol) return p;
        const Vec3 g = field.gradient(p);
        const double g2 = g.squaredNorm();
        if (g2 <= 1e-24)
            throw Error(ErrorCode::CriticalPoint, "projection hit a critical point");
        Vec3 step = -(r / g2) * g;
        double lambda = 1.0;
        for (int k = 0; k < 40; ++k) {
            if (std::abs(field.value(p + lambda * step) - c) < std::abs(r)) break;
            lambda *= 0.5;
        }
        p += lambda * step;
    }
    if (std::abs(field.value(p) - c) > tol)
        throw Error(ErrorCode::InvalidArgument, "projection did not converge");
    return p;
}

Curve project_curve_to_level(const ScalarField& field, const Curve& seed, double c, int n_samples,
                             double tol) {
    n_samples = std::max(n_samples, kMinSamples);
    std::vector<double> ts(n_samples);
    std::vector<Vec3> ps(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        ts[i] = seed.t_min() +
                (seed.t_max() - seed.t_min()) * static_cast<double>(i) / (n_samples - 1);
        ps[i] = project_to_level(field, seed.eval(ts[i]), c, tol);
    }
    return Curve::from_samples(std::move(ts), std::move(ps));
}

}  // namespace framekit
