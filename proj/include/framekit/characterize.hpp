#pragma once

#include <map>
#include <optional>
#include <string>

#include "framekit/frames.hpp"

namespace framekit {

/// Planar curve (kappa_1(s), kappa_2(s)) with the signature of the normal plane.
struct NormalDevelopment {
    std::vector<double> s;
    std::vector<Vec2> points;
    double eps = 1.0;
    double eps1 = 1.0;
    bool lorentzian_plane = false;  // timelike normal plane
};

NormalDevelopment normal_development(const FrameField& ff);

struct FitTolerances {
    double fit_rms = 1e-4;     // line accepted when rms <= fit_rms * (1 + max|kappa|)
    double origin = 1e-5;      // through-origin when |c0| <= origin * (1 + max|kappa|)
    double cone = 1e-5;        // |eps1 a1^2 + a2^2| below cone * scale marks the light-cone case
    double membership = 1e-6;  // direct (alpha - P, alpha - P) checks
    double k1_zero = 1e-6;     // kappa_1 == 0 band for the lightlike test
};

/// Total-least-squares line in the development chart, with the sphere-criterion
/// coefficients (a1, a2) recovered from 1 + eps a1 X + eps a2 Y = 0.
struct LineFit {
    Vec3 c = Vec3::Zero();  // c0 + c1 X + c2 Y = 0, normalized to c1^2 + c2^2 = 1
    double rms = 0.0;
    bool through_origin = false;
    bool degenerate_point = false;  // development collapses to a single point
    bool degenerate_zero = false;   // development collapses to the origin
    double a1 = 0.0, a2 = 0.0;
    double quad = 0.0;  // eps1 a1^2 + a2^2
    std::optional<double> lorentz_distance;  // 1/sqrt|quad|; absent marks the critical case
};

LineFit fit_line(const NormalDevelopment& nd, const FitTolerances& tol = {});

enum class Verdict { Plane, Sphere, PseudoSphere, PseudoHyperbolic, LightCone, Quadric, None };
const char* to_string(Verdict v);

struct MembershipReport {
    Verdict verdict = Verdict::None;
    std::optional<Vec3> center;
    double radius = 0.0;
    double residual = 0.0;
    std::optional<Vec3> plane_normal;
    std::map<std::string, double> diagnostics;
    std::string detail;
};

/// Sphere / pseudo-sphere / pseudo-hyperbolic / light-cone detection from the
/// normal development of a Bishop frame. A development line through the
/// origin yields the Plane verdict instead.
MembershipReport detect_sphere(const FrameField& ff, const FitTolerances& tol = {});

MembershipReport detect_plane(const FrameField& ff, const FitTolerances& tol = {});

struct SphereCandidate {
    Vec3 center;
    double rho;  // (x - P, x - P) = rho; rho = r^2 or 0
};

/// Necessary-condition test for lightlike curves: membership in a pseudo-sphere
/// or light-cone forces kappa_1 == 0. Candidate surfaces, when supplied, are
/// verified by direct evaluation (the converse fails in general).
MembershipReport lightlike_sphere_test(const FrameField& ff,
                                       const std::vector<SphereCandidate>& candidates = {},
                                       const FitTolerances& tol = {});
MembershipReport lightlike_sphere_test(const Curve& curve, const PseudoMetric& metric,
                                       const std::vector<SphereCandidate>& candidates = {},
                                       const FitTolerances& tol = {});

/// Lightlike directions of the tangent plane of {(x-P, x-P) = rho} at p0.
/// Throws NoLightlikeTangent when the tangent plane is spacelike.
std::vector<Vec3> lightlike_tangent_directions(const PseudoMetric& metric, const Vec3& center,
                                               double rho, const Vec3& p0);

/// Ruling line p0 + t u with u lightlike and (p0 - P, u) = 0; stays on the
/// surface identically.
Curve lightlike_ruling(const PseudoMetric& metric, const Vec3& center, double rho, const Vec3& p0,
                       double t_extent = 10.0);

/// Membership in the level sets of <B(x - P), x - P>, decided through sphere
/// detection in the metric induced by B (negated to index <= 1 if needed).
MembershipReport detect_quadric(const Curve& curve, const Mat3& B, const Vec3& center,
                                const FitTolerances& tol = {});

bool is_straight_line(const Curve& curve, double tol = 1e-9);

}  // namespace framekit
