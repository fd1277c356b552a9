#include "framekit/pseudo_metric.hpp"

#include <algorithm>
#include <cmath>

namespace framekit {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::DependentVectors: return "DependentVectors";
        case ErrorCode::DegenerateMetric: return "DegenerateMetric";
        case ErrorCode::MixedCausalCharacter: return "MixedCausalCharacter";
        case ErrorCode::DegenerateCurve: return "DegenerateCurve";
        case ErrorCode::StraightLight: return "StraightLight";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::VanishingCurvature: return "VanishingCurvature";
        case ErrorCode::LightlikeCurve: return "LightlikeCurve";
        case ErrorCode::BadGauge: return "BadGauge";
        case ErrorCode::NotBishopFrame: return "NotBishopFrame";
        case ErrorCode::NotNullFrame: return "NotNullFrame";
        case ErrorCode::NoLightlikeTangent: return "NoLightlikeTangent";
        case ErrorCode::DegenerateHessian: return "DegenerateHessian";
        case ErrorCode::MixedIndex: return "MixedIndex";
        case ErrorCode::AsymptoticDirection: return "AsymptoticDirection";
        case ErrorCode::CriticalPoint: return "CriticalPoint";
        case ErrorCode::NonTangent: return "NonTangent";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

const char* to_string(CausalCharacter c) {
    switch (c) {
        case CausalCharacter::Spacelike: return "Spacelike";
        case CausalCharacter::Timelike: return "Timelike";
        case CausalCharacter::Lightlike: return "Lightlike";
    }
    return "?";
}

const char* to_string(PlaneCharacter c) {
    switch (c) {
        case PlaneCharacter::Spacelike: return "Spacelike";
        case PlaneCharacter::Timelike: return "Timelike";
        case PlaneCharacter::Lightlike: return "Lightlike";
    }
    return "?";
}

PseudoMetric::PseudoMetric(const Mat3& matrix, double causal_tol) : causal_tol_(causal_tol) {
    g_ = 0.5 * (matrix + matrix.transpose());

    Eigen::SelfAdjointEigenSolver<Mat3> eig(g_);
    const Vec3 lambda = eig.eigenvalues();
    const double lmax = lambda.cwiseAbs().maxCoeff();
    if (lmax == 0.0 || lambda.cwiseAbs().minCoeff() < 1e-12 * lmax) {
        throw Error(ErrorCode::DegenerateMetric,
                    "metric matrix has a (near-)zero eigenvalue; a non-degenerate form is required");
    }

    index_ = 0;
    for (int i = 0; i < 3; ++i) {
        signature_[i] = lambda[i] < 0.0 ? -1 : 1;
        if (lambda[i] < 0.0) ++index_;
    }
    g_inv_ = g_.inverse();
}

PseudoMetric PseudoMetric::euclidean(double causal_tol) {
    return PseudoMetric(Mat3::Identity(), causal_tol);
}

PseudoMetric PseudoMetric::minkowski(double causal_tol) {
    Mat3 g = Mat3::Identity();
    g(2, 2) = -1.0;
    return PseudoMetric(g, causal_tol);
}

CausalCharacter PseudoMetric::classify_vector(const Vec3& v) const {
    const double e2 = v.squaredNorm();
    if (e2 == 0.0) {
        throw Error(ErrorCode::ZeroVector, "cannot classify the zero vector");
    }
    const double q = inner(v, v);
    if (q > causal_tol_ * e2) return CausalCharacter::Spacelike;
    if (q < -causal_tol_ * e2) return CausalCharacter::Timelike;
    return CausalCharacter::Lightlike;
}

PlaneCharacter PseudoMetric::classify_plane(const Vec3& u, const Vec3& v) const {
    const double cross_norm = u.cross(v).norm();
    if (cross_norm <= 1e-12 * u.norm() * v.norm()) {
        throw Error(ErrorCode::DependentVectors, "plane classification needs independent spanning vectors");
    }

    Mat2 gram;
    gram << inner(u, u), inner(u, v), inner(u, v), inner(v, v);
    Eigen::SelfAdjointEigenSolver<Mat2> eig(gram);
    const Vec2 lambda = eig.eigenvalues();

    const double scale = u.squaredNorm() + v.squaredNorm();
    int negatives = 0;
    for (int i = 0; i < 2; ++i) {
        if (std::abs(lambda[i]) <= causal_tol_ * scale) return PlaneCharacter::Lightlike;
        if (lambda[i] < 0.0) ++negatives;
    }
    return negatives == 0 ? PlaneCharacter::Spacelike : PlaneCharacter::Timelike;
}

}  // namespace framekit
