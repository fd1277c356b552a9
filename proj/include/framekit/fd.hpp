#pragma once

#include <vector>

#include <Eigen/Dense>

namespace framekit {

/// Fornberg finite-difference weights: w(k, j) multiplies f(x[j]) in the
/// approximation of the k-th derivative at z, for k = 0..m.
inline Eigen::MatrixXd fd_weights(double z, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m + 1, n);
    double c1 = 1.0, c4 = x[0] - z;
    w(0, 0) = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    w(k, i) = c1 * (k * w(k - 1, i - 1) - c5 * w(k, i - 1)) / c2;
                w(0, i) = -c1 * c5 * w(0, i - 1) / c2;
            }
            for (int k = mn; k >= 1; --k)
                w(k, j) = ((x[i] - z) * w(k, j) - k * w(k - 1, j)) / c3;
            w(0, j) = (x[i] - z) * w(0, j) / c3;
        }
        c1 = c2;
    }
    return w;
}

}  // namespace framekit
