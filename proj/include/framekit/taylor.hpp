#pragma once

#include <cmath>

namespace framekit {

/// Truncated Taylor scalar carrying value and first three derivatives.
/// Arithmetic follows Leibniz / Faa di Bruno, so curve families written as
/// ordinary expressions come with exact derivatives up to order 3.
struct Taylor4 {
    double v = 0, d1 = 0, d2 = 0, d3 = 0;

    static Taylor4 variable(double t) { return {t, 1.0, 0.0, 0.0}; }
    static Taylor4 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
};

inline Taylor4 operator+(const Taylor4& a, const Taylor4& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
inline Taylor4 operator-(const Taylor4& a, const Taylor4& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
inline Taylor4 operator-(const Taylor4& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }

inline Taylor4 operator*(const Taylor4& a, const Taylor4& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

inline Taylor4 operator*(double c, const Taylor4& a) { return {c * a.v, c * a.d1, c * a.d2, c * a.d3}; }
inline Taylor4 operator*(const Taylor4& a, double c) { return c * a; }
inline Taylor4 operator+(const Taylor4& a, double c) { return {a.v + c, a.d1, a.d2, a.d3}; }
inline Taylor4 operator+(double c, const Taylor4& a) { return a + c; }
inline Taylor4 operator-(const Taylor4& a, double c) { return {a.v - c, a.d1, a.d2, a.d3}; }
inline Taylor4 operator-(double c, const Taylor4& a) { return (-a) + c; }

// Composition y = f(u) given f's plain derivatives at u.v.
inline Taylor4 compose(const Taylor4& u, double f, double f1, double f2, double f3) {
    return {f,
            f1 * u.d1,
            f2 * u.d1 * u.d1 + f1 * u.d2,
            f3 * u.d1 * u.d1 * u.d1 + 3.0 * f2 * u.d1 * u.d2 + f1 * u.d3};
}

inline Taylor4 sin(const Taylor4& u) {
    const double s = std::sin(u.v), c = std::cos(u.v);
    return compose(u, s, c, -s, -c);
}
inline Taylor4 cos(const Taylor4& u) {
    const double s = std::sin(u.v), c = std::cos(u.v);
    return compose(u, c, -s, -c, s);
}
inline Taylor4 sinh(const Taylor4& u) {
    const double s = std::sinh(u.v), c = std::cosh(u.v);
    return compose(u, s, c, s, c);
}
inline Taylor4 cosh(const Taylor4& u) {
    const double s = std::sinh(u.v), c = std::cosh(u.v);
    return compose(u, c, s, c, s);
}
inline Taylor4 exp(const Taylor4& u) {
    const double e = std::exp(u.v);
    return compose(u, e, e, e, e);
}
inline Taylor4 reciprocal(const Taylor4& u) {
    const double x = u.v;
    return compose(u, 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x));
}
inline Taylor4 operator/(const Taylor4& a, const Taylor4& b) { return a * reciprocal(b); }
inline Taylor4 sqrt(const Taylor4& u) {
    const double r = std::sqrt(u.v);
    return compose(u, r, 0.5 / r, -0.25 / (r * u.v), 0.375 / (r * u.v * u.v));
}

}  // namespace framekit
