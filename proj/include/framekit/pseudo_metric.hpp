#pragma once

#include <array>

#include "framekit/errors.hpp"
#include "framekit/geometry.hpp"

namespace framekit {

enum class CausalCharacter { Spacelike, Timelike, Lightlike };
enum class PlaneCharacter { Spacelike, Timelike, Lightlike };

const char* to_string(CausalCharacter c);
const char* to_string(PlaneCharacter c);

// Relative tolerance used to decide when a self-product counts as zero.
inline constexpr double kDefaultCausalTol = 1e-9;

/// Constant non-degenerate symmetric bilinear form on R^3.
///
/// The signature is computed once at construction; matrices with an
/// eigenvalue below 1e-12 of the spectral radius are rejected.
class PseudoMetric {
public:
    explicit PseudoMetric(const Mat3& matrix, double causal_tol = kDefaultCausalTol);

    static PseudoMetric euclidean(double causal_tol = kDefaultCausalTol);
    static PseudoMetric minkowski(double causal_tol = kDefaultCausalTol);  // diag(1, 1, -1)

    const Mat3& matrix() const { return g_; }
    const Mat3& inverse() const { return g_inv_; }
    int index() const { return index_; }  // number of negative eigenvalues
    std::array<int, 3> signature() const { return signature_; }
    double causal_tol() const { return causal_tol_; }

    double inner(const Vec3& u, const Vec3& v) const { return u.dot(g_ * v); }

    // Pseudo-norm sqrt(|(v,v)|).
    double norm(const Vec3& v) const { return std::sqrt(std::abs(inner(v, v))); }

    CausalCharacter classify_vector(const Vec3& v) const;

    // Lorentzian vector product: the unique w with (w, x) = det(u, v, x) for all x.
    Vec3 cross(const Vec3& u, const Vec3& v) const { return g_inv_ * u.cross(v); }

    // Character of span{u, v} from the eigenvalue signs of the restricted Gram matrix.
    PlaneCharacter classify_plane(const Vec3& u, const Vec3& v) const;

    PseudoMetric negated() const { return PseudoMetric(Mat3(-g_), causal_tol_); }

    bool is_euclidean() const { return index_ == 0; }

private:
    Mat3 g_;
    Mat3 g_inv_;
    int index_ = 0;
    std::array<int, 3> signature_{};
    double causal_tol_ = kDefaultCausalTol;
};

/// Christoffel symbols Gamma^k_ij of a metric field, symmetric in (i, j).
struct Christoffel {
    std::array<Mat3, 3> gamma;  // gamma[k](i, j)

    static Christoffel zero() {
        Christoffel c;
        c.gamma = {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
        return c;
    }

    // Component-wise contraction: result_k = u^i Gamma^k_ij v^j.
    Vec3 apply(const Vec3& u, const Vec3& v) const {
        return Vec3(u.dot(gamma[0] * v), u.dot(gamma[1] * v), u.dot(gamma[2] * v));
    }

    bool is_zero() const {
        return gamma[0].isZero(0.0) && gamma[1].isZero(0.0) && gamma[2].isZero(0.0);
    }
};

/// Possibly point-dependent metric. Frames and reparametrization are written
/// against this interface; the constant case has vanishing Christoffels.
class MetricField {
public:
    virtual ~MetricField() = default;

    virtual PseudoMetric at(const Vec3& p) const = 0;

    // Fast path for inner products along curves; skips signature analysis.
    virtual Mat3 matrix_at(const Vec3& p) const { return at(p).matrix(); }

    virtual Christoffel christoffel(const Vec3&) const { return Christoffel::zero(); }

    // dG/dt along a path with velocity v, i.e. v^k d_k G_ij.
    virtual Mat3 directional_derivative(const Vec3&, const Vec3&) const { return Mat3::Zero(); }

    // d^2G/dt^2 along a path with velocity v and acceleration a.
    virtual Mat3 second_directional_derivative(const Vec3&, const Vec3&, const Vec3&) const {
        return Mat3::Zero();
    }

    virtual bool constant() const { return false; }
};

class ConstantMetricField final : public MetricField {
public:
    explicit ConstantMetricField(PseudoMetric m) : m_(std::move(m)) {}

    PseudoMetric at(const Vec3&) const override { return m_; }
    Mat3 matrix_at(const Vec3&) const override { return m_.matrix(); }
    bool constant() const override { return true; }
    const PseudoMetric& value() const { return m_; }

private:
    PseudoMetric m_;
};

}  // namespace framekit
