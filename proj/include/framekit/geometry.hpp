#pragma once

#include <Eigen/Dense>

namespace framekit {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;
using Mat2 = Eigen::Matrix2d;

// Determinant of the matrix whose columns are a, b, c.
inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return a.dot(b.cross(c));
}

}  // namespace framekit
