#include "framekit/scalar_field.hpp"

#include <cmath>
#include <limits>

#include "framekit/errors.hpp"

namespace framekit {

void Polynomial3::add_term(const Powers& p, double c) {
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

Polynomial3 Polynomial3::constant(double c) {
    Polynomial3 p;
    p.add_term({0, 0, 0}, c);
    return p;
}

Polynomial3 Polynomial3::variable(int axis) {
    Powers pw{0, 0, 0};
    pw[axis] = 1;
    return monomial(pw, 1.0);
}

Polynomial3 Polynomial3::monomial(const Powers& p, double coeff) {
    Polynomial3 out;
    out.add_term(p, coeff);
    return out;
}

Polynomial3 Polynomial3::operator+(const Polynomial3& o) const {
    Polynomial3 out = *this;
    for (const auto& [p, c] : o.terms_) out.add_term(p, c);
    return out;
}

Polynomial3 Polynomial3::operator-(const Polynomial3& o) const {
    Polynomial3 out = *this;
    for (const auto& [p, c] : o.terms_) out.add_term(p, -c);
    return out;
}

Polynomial3 Polynomial3::operator*(const Polynomial3& o) const {
    Polynomial3 out;
    for (const auto& [pa, ca] : terms_)
        for (const auto& [pb, cb] : o.terms_)
            out.add_term({pa[0] + pb[0], pa[1] + pb[1], pa[2] + pb[2]}, ca * cb);
    return out;
}

Polynomial3 Polynomial3::operator*(double c) const {
    Polynomial3 out;
    for (const auto& [p, v] : terms_) out.add_term(p, v * c);
    return out;
}

Polynomial3 Polynomial3::pow(int n) const {
    Polynomial3 out = constant(1.0);
    for (int i = 0; i < n; ++i) out = out * (*this);
    return out;
}

Polynomial3 Polynomial3::derivative(int axis) const {
    Polynomial3 out;
    for (const auto& [p, c] : terms_) {
        if (p[axis] == 0) continue;
        Powers q = p;
        q[axis] -= 1;
        out.add_term(q, c * p[axis]);
    }
    return out;
}

double Polynomial3::eval(const Vec3& pt) const {
    double acc = 0.0;
    for (const auto& [p, c] : terms_) {
        double term = c;
        for (int a = 0; a < 3; ++a)
            for (int k = 0; k < p[a]; ++k) term *= pt[a];
        acc += term;
    }
    return acc;
}

// ---------------------------------------------------------------------------

ScalarField ScalarField::polynomial(Polynomial3 f, std::string label) {
    ScalarField sf;
    sf.is_polynomial_ = true;
    sf.label_ = std::move(label);
    sf.p_ = std::move(f);
    for (int i = 0; i < 3; ++i) {
        sf.grad_[i] = sf.p_.derivative(i);
        for (int j = 0; j < 3; ++j) {
            sf.hess_[i][j] = sf.grad_[i].derivative(j);
            for (int k = 0; k < 3; ++k) sf.third_[i][j][k] = sf.hess_[i][j].derivative(k);
        }
    }
    return sf;
}

ScalarField ScalarField::black_box(std::function<double(const Vec3&)> f, std::string label) {
    ScalarField sf;
    sf.is_polynomial_ = false;
    sf.label_ = std::move(label);
    sf.f_ = std::move(f);
    return sf;
}

const Polynomial3& ScalarField::poly() const {
    if (!is_polynomial_)
        throw Error(ErrorCode::InvalidArgument, "field has no polynomial representation");
    return p_;
}

bool ScalarField::has_constant_hessian() const {
    if (!is_polynomial_) return false;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (!third_[i][j][k].empty()) return false;
    return true;
}

namespace {

double fd_step(const Vec3& p) {
    static const double h0 = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
    return h0 * (1.0 + p.norm());
}

}  // namespace

double ScalarField::value(const Vec3& p) const { return is_polynomial_ ? p_.eval(p) : f_(p); }

Vec3 ScalarField::gradient(const Vec3& p) const {
    if (is_polynomial_) return Vec3(grad_[0].eval(p), grad_[1].eval(p), grad_[2].eval(p));
    const double h = fd_step(p);
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
        const Vec3 e = Vec3::Unit(i) * h;
        g[i] = (f_(p + e) - f_(p - e)) / (2.0 * h);
    }
    return g;
}

Mat3 ScalarField::hessian(const Vec3& p) const {
    Mat3 out;
    if (is_polynomial_) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out(i, j) = hess_[i][j].eval(p);
        return out;
    }
    const double h = fd_step(p);
    const double f0 = f_(p);
    for (int i = 0; i < 3; ++i) {
        const Vec3 ei = Vec3::Unit(i) * h;
        out(i, i) = (f_(p + ei) - 2.0 * f0 + f_(p - ei)) / (h * h);
        for (int j = i + 1; j < 3; ++j) {
            const Vec3 ej = Vec3::Unit(j) * h;
            const double v = (f_(p + ei + ej) - f_(p + ei - ej) - f_(p - ei + ej) +
                              f_(p - ei - ej)) /
                             (4.0 * h * h);
            out(i, j) = out(j, i) = v;
        }
    }
    return out;
}

std::array<Mat3, 3> ScalarField::third(const Vec3& p) const {
    std::array<Mat3, 3> out;
    if (is_polynomial_) {
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) out[k](i, j) = third_[i][j][k].eval(p);
        return out;
    }
    const double h = fd_step(p);
    for (int k = 0; k < 3; ++k) {
        const Vec3 ek = Vec3::Unit(k) * h;
        out[k] = (hessian(p + ek) - hessian(p - ek)) / (2.0 * h);
    }
    // symmetrize across the derivative slots
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double v =
                    (out[k](i, j) + out[j](i, k) + out[i](j, k)) / 3.0;
                out[k](i, j) = out[j](i, k) = out[i](j, k) = v;
            }
    return out;
}

Mat3 ScalarField::fourth_contracted(const Vec3& p, const Vec3& v) const {
    if (!is_polynomial_)
        throw Error(ErrorCode::InvalidArgument,
                    "fourth derivatives are only available for polynomial fields");
    Mat3 out = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const Polynomial3 dk = third_[i][j][k];
                for (int l = 0; l < 3; ++l)
                    out(i, j) += dk.derivative(l).eval(p) * v[k] * v[l];
            }
    return out;
}

}  // namespace framekit
