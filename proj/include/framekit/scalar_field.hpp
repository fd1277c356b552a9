#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>

#include "framekit/geometry.hpp"

namespace framekit {

/// Trivariate polynomial as a monomial-to-coefficient map. Differentiation is
/// exact (symbolic on the coefficients).
class Polynomial3 {
public:
    using Powers = std::array<int, 3>;

    Polynomial3() = default;

    static Polynomial3 constant(double c);
    static Polynomial3 variable(int axis);  // x, y, z for axis 0, 1, 2
    static Polynomial3 monomial(const Powers& p, double coeff);

    Polynomial3 operator+(const Polynomial3& o) const;
    Polynomial3 operator-(const Polynomial3& o) const;
    Polynomial3 operator*(const Polynomial3& o) const;
    Polynomial3 operator*(double c) const;
    Polynomial3 pow(int n) const;

    Polynomial3 derivative(int axis) const;

    double eval(const Vec3& p) const;

    const std::map<Powers, double>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

private:
    std::map<Powers, double> terms_;
    void add_term(const Powers& p, double c);
};

/// Smooth F: R^3 -> R with gradient / Hessian / third-derivative access.
/// Polynomial fields differentiate exactly to any order; black-box fields use
/// central differences with step eps^(1/4) * (1 + |p|) per derivative order.
class ScalarField {
public:
    static ScalarField polynomial(Polynomial3 f, std::string label = "polynomial");
    static ScalarField black_box(std::function<double(const Vec3&)> f,
                                 std::string label = "black_box");

    double value(const Vec3& p) const;
    Vec3 gradient(const Vec3& p) const;
    Mat3 hessian(const Vec3& p) const;

    // T[k](i, j) = F_ijk (fully symmetric)
    std::array<Mat3, 3> third(const Vec3& p) const;

    // sum_kl F_ijkl v_k v_l; exact for polynomials, unavailable for black boxes
    Mat3 fourth_contracted(const Vec3& p, const Vec3& v) const;

    bool exact() const { return is_polynomial_; }
    int max_exact_order() const { return is_polynomial_ ? 3 : 0; }

    // true when the third-derivative polynomials vanish identically
    bool has_constant_hessian() const;
    const std::string& label() const { return label_; }
    const Polynomial3& poly() const;

private:
    ScalarField() = default;

    bool is_polynomial_ = false;
    std::string label_;
    std::function<double(const Vec3&)> f_;

    // precomputed derivative polynomials
    Polynomial3 p_;
    std::array<Polynomial3, 3> grad_;
    std::array<std::array<Polynomial3, 3>, 3> hess_;
    std::array<std::array<std::array<Polynomial3, 3>, 3>, 3> third_;
};

}  // namespace framekit
