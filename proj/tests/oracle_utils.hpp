#pragma once

// Shared helpers for the test suites: independent finite-difference oracles,
// brute-force membership evaluation, and frame re-integration.

#include <random>

#include "framekit/characterize.hpp"
#include "framekit/fd.hpp"
#include "framekit/frames.hpp"

namespace fk = framekit;

namespace oracle {

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64(seed); }

inline fk::Vec3 random_vec(std::mt19937_64& gen, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    return fk::Vec3(d(gen), d(gen), d(gen));
}

// Independent derivative of a callable R -> R^3 (Richardson-extrapolated
// central differences; no reuse of the library's chain rule).
template <typename F>
fk::Vec3 fd_derivative(F&& f, double t, double h = 1e-4) {
    const fk::Vec3 d1 = (f(t + h) - f(t - h)) / (2.0 * h);
    const fk::Vec3 d2 = (f(t + h / 2) - f(t - h / 2)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

// max |(alpha(t) - P, alpha(t) - P) - rho| over the curve grid
inline double membership_deviation(const fk::Curve& curve, const fk::PseudoMetric& m,
                                   const fk::Vec3& P, double rho) {
    double dev = 0.0;
    for (double t : curve.grid_params()) {
        const fk::Vec3 d = curve.eval(t) - P;
        dev = std::max(dev, std::abs(m.inner(d, d) - rho));
    }
    return dev;
}

// Reconstruct the curve from a Bishop frame's coefficients alone (initial
// triad + RK4 over the recorded grid); returns positions at the grid nodes.
// Constant metrics only.
inline std::vector<fk::Vec3> reintegrate_bishop(const fk::FrameField& ff) {
    const fk::PseudoMetric m = ff.metric().at(fk::Vec3::Zero());
    const fk::Mat3& g = m.matrix();
    const fk::Mat3 ginv = m.inverse();
    const double eps = ff.eps, eps1 = ff.eps1;

    // cubic interpolation of the recorded coefficients
    auto coeff = [&](const std::vector<double>& c, double s) {
        const double h = ff.s[1] - ff.s[0];
        const double u = s / h;
        const long n = static_cast<long>(ff.s.size());
        long i = std::clamp(static_cast<long>(std::floor(u)), 1L, n - 3);
        std::vector<double> nodes = {ff.s[i - 1], ff.s[i], ff.s[i + 1], ff.s[i + 2]};
        const Eigen::MatrixXd w = fk::fd_weights(s, nodes, 0);
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) acc += w(0, j) * c[i - 1 + j];
        return acc;
    };

    struct State {
        fk::Vec3 x, t, n1;
    };
    auto rhs = [&](double s, const State& y) {
        const double k1 = coeff(ff.c1, s), k2 = coeff(ff.c2, s);
        fk::Vec3 n2 = ginv * y.t.cross(y.n1);
        n2 /= std::sqrt(std::abs(n2.dot(g * n2)));
        State d;
        d.x = y.t;
        d.t = eps1 * k1 * y.n1 + k2 * n2;
        d.n1 = -eps * k1 * y.t;
        return d;
    };
    auto axpy = [](const State& a, double c, const State& b) {
        return State{a.x + c * b.x, a.t + c * b.t, a.n1 + c * b.n1};
    };

    State y{ff.pc->point(ff.s[0]), ff.e0[0], ff.e1[0]};
    std::vector<fk::Vec3> out{y.x};
    for (std::size_t i = 0; i + 1 < ff.s.size(); ++i) {
        const double h = ff.s[i + 1] - ff.s[i], s = ff.s[i];
        const State k1 = rhs(s, y);
        const State k2 = rhs(s + h / 2, axpy(y, h / 2, k1));
        const State k3 = rhs(s + h / 2, axpy(y, h / 2, k2));
        const State k4 = rhs(s + h, axpy(y, h, k3));
        y = axpy(y, h / 6,
                 State{k1.x + 2 * k2.x + 2 * k3.x + k4.x, k1.t + 2 * k2.t + 2 * k3.t + k4.t,
                       k1.n1 + 2 * k2.n1 + 2 * k3.n1 + k4.n1});
        // keep the triad on its constraint manifold, as the forward pass does
        const double tt = y.t.dot(g * y.t);
        y.n1 -= (y.n1.dot(g * y.t) / tt) * y.t;
        y.n1 /= std::sqrt(std::abs(y.n1.dot(g * y.n1)));
        out.push_back(y.x);
    }
    return out;
}

// Integrate a Bishop system from prescribed coefficient functions; returns
// positions at the grid nodes. Used to realize synthetic developments.
template <typename K1, typename K2>
std::vector<fk::Vec3> integrate_bishop_coeffs(const fk::PseudoMetric& m, double eps, double eps1,
                                              const std::vector<double>& s, K1&& k1_of, K2&& k2_of,
                                              const fk::Vec3& x0, const fk::Vec3& t0,
                                              const fk::Vec3& n10) {
    const fk::Mat3& g = m.matrix();
    const fk::Mat3 ginv = m.inverse();
    struct State {
        fk::Vec3 x, t, n1;
    };
    auto rhs = [&](double u, const State& y) {
        const double k1 = k1_of(u), k2 = k2_of(u);
        fk::Vec3 n2 = ginv * y.t.cross(y.n1);
        n2 /= std::sqrt(std::abs(n2.dot(m.matrix() * n2)));
        return State{y.t, eps1 * k1 * y.n1 + k2 * n2, -eps * k1 * y.t};
    };
    auto axpy = [](const State& a, double c, const State& b) {
        return State{a.x + c * b.x, a.t + c * b.t, a.n1 + c * b.n1};
    };
    State y{x0, t0, n10};
    std::vector<fk::Vec3> out{y.x};
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double h = s[i + 1] - s[i], u = s[i];
        const State k1 = rhs(u, y);
        const State k2 = rhs(u + h / 2, axpy(y, h / 2, k1));
        const State k3 = rhs(u + h / 2, axpy(y, h / 2, k2));
        const State k4 = rhs(u + h, axpy(y, h, k3));
        y = axpy(y, h / 6,
                 State{k1.x + 2 * k2.x + 2 * k3.x + k4.x, k1.t + 2 * k2.t + 2 * k3.t + k4.t,
                       k1.n1 + 2 * k2.n1 + 2 * k3.n1 + k4.n1});
        const double tt = y.t.dot(g * y.t);
        y.n1 -= (y.n1.dot(g * y.t) / tt) * y.t;
        y.n1 /= std::sqrt(std::abs(y.n1.dot(g * y.n1)));
        out.push_back(y.x);
    }
    return out;
}

// Coefficient matrix C with de_i/ds = sum_j C_ij e_j, reconstructed from
// five-point derivatives of the recorded triads. Independent of the
// coefficients the library reports.
inline fk::Mat3 motion_matrix_fd(const fk::FrameField& ff, std::size_t i) {
    const std::size_t n = ff.size();
    const std::size_t c = std::clamp<std::size_t>(i, 2, n - 3);
    const double o = static_cast<double>(i) - static_cast<double>(c);
    const double h = ff.s[1] - ff.s[0];
    const std::vector<double> offsets = {-2, -1, 0, 1, 2};
    const Eigen::MatrixXd w = fk::fd_weights(o, offsets, 1);

    fk::Mat3 basis, deriv;
    basis.row(0) = ff.e0[i];
    basis.row(1) = ff.e1[i];
    basis.row(2) = ff.e2[i];
    deriv.setZero();
    for (int j = 0; j < 5; ++j) {
        const std::size_t k = c - 2 + j;
        deriv.row(0) += (w(1, j) / h) * ff.e0[k].transpose();
        deriv.row(1) += (w(1, j) / h) * ff.e1[k].transpose();
        deriv.row(2) += (w(1, j) / h) * ff.e2[k].transpose();
    }
    // solve C * basis = deriv
    return basis.transpose().fullPivLu().solve(deriv.transpose()).transpose();
}

}  // namespace oracle
