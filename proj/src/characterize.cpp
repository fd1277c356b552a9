#include "framekit/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace framekit {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Plane: return "Plane";
        case Verdict::Sphere: return "Sphere";
        case Verdict::PseudoSphere: return "PseudoSphere";
        case Verdict::PseudoHyperbolic: return "PseudoHyperbolic";
        case Verdict::LightCone: return "LightCone";
        case Verdict::Quadric: return "Quadric";
        case Verdict::None: return "None";
    }
    return "?";
}

NormalDevelopment normal_development(const FrameField& ff) {
    if (ff.kind != FrameKind::Bishop)
        throw Error(ErrorCode::NotBishopFrame, "normal development is read off a Bishop frame");
    NormalDevelopment nd;
    nd.s = ff.s;
    nd.points.resize(ff.size());
    for (std::size_t i = 0; i < ff.size(); ++i) nd.points[i] = Vec2(ff.c1[i], ff.c2[i]);
    nd.eps = ff.eps;
    nd.eps1 = ff.eps1;
    nd.lorentzian_plane = ff.eps1 < 0;
    return nd;
}

namespace {

double max_abs_kappa(const NormalDevelopment& nd) {
    double m = 0.0;
    for (const auto& p : nd.points) m = std::max(m, p.cwiseAbs().maxCoeff());
    return m;
}

}  // namespace

LineFit fit_line(const NormalDevelopment& nd, const FitTolerances& tol) {
    const std::size_t n = nd.points.size();
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "line fit needs at least 3 points");

    LineFit lf;
    const double maxk = max_abs_kappa(nd);

    Vec2 mean = Vec2::Zero();
    for (const auto& p : nd.points) mean += p;
    mean /= static_cast<double>(n);

    double max_dev = 0.0;
    Mat2 scatter = Mat2::Zero();
    for (const auto& p : nd.points) {
        const Vec2 d = p - mean;
        max_dev = std::max(max_dev, d.norm());
        scatter += d * d.transpose();
    }

    const double point_scale = 1.0 + maxk;
    if (max_dev <= 1e-8 * point_scale) {
        // constant development: every line of the pencil through the point
        // fits; pick the one perpendicular to the position vector in the
        // normal-plane metric, which is the sphere-criterion line and is
        // equivariant under the gauge group
        if (mean.norm() <= 1e-8 * point_scale) {
            lf.degenerate_zero = true;
            lf.through_origin = true;
            lf.c = Vec3(0.0, 1.0, 0.0);
            return lf;
        }
        lf.degenerate_point = true;
        const Vec2 mnormal(nd.eps1 * mean.x(), mean.y());
        const double quad_p = nd.eps1 * mean.x() * mean.x() + mean.y() * mean.y();
        lf.c = Vec3(-quad_p / mnormal.norm(), mnormal.x() / mnormal.norm(),
                    mnormal.y() / mnormal.norm());
    } else {
        Eigen::SelfAdjointEigenSolver<Mat2> eig(scatter);
        const Vec2 nrm = eig.eigenvectors().col(0);  // smallest eigenvalue
        lf.c = Vec3(-nrm.dot(mean), nrm.x(), nrm.y());
        lf.rms = std::sqrt(std::max(eig.eigenvalues()[0], 0.0) / static_cast<double>(n));
    }

    lf.through_origin = std::abs(lf.c[0]) <= tol.origin * point_scale;
    if (!lf.through_origin) {
        lf.a1 = nd.eps * lf.c[1] / lf.c[0];
        lf.a2 = nd.eps * lf.c[2] / lf.c[0];
        lf.quad = nd.eps1 * lf.a1 * lf.a1 + lf.a2 * lf.a2;
        const double a_scale = std::max(lf.a1 * lf.a1 + lf.a2 * lf.a2, 1.0);
        if (std::abs(lf.quad) > tol.cone * a_scale)
            lf.lorentz_distance = 1.0 / std::sqrt(std::abs(lf.quad));
    }
    return lf;
}

namespace {

// Shared by detect_plane and the plane branch of detect_sphere: recover the
// constant normal x = a n1 + b n2 from a through-origin development line.
void fill_plane_report(MembershipReport& rep, const FrameField& ff, const LineFit& lf) {
    double a, b;
    if (lf.degenerate_zero) {
        a = 1.0;
        b = 0.0;
    } else if (lf.degenerate_point && !lf.through_origin) {
        // through-origin member of the pencil: normal of the line joining the
        // origin to the constant development point (k1, k2)
        Vec2 pbar = Vec2::Zero();
        for (std::size_t i = 0; i < ff.size(); ++i) pbar += Vec2(ff.c1[i], ff.c2[i]);
        pbar.normalize();
        a = pbar.y();
        b = -pbar.x();
    } else {
        a = lf.c[1];
        b = lf.c[2];
    }

    Vec3 xbar = Vec3::Zero();
    std::vector<Vec3> xs(ff.size());
    for (std::size_t i = 0; i < ff.size(); ++i) {
        xs[i] = a * ff.e1[i] + b * ff.e2[i];
        xbar += xs[i];
    }
    xbar /= static_cast<double>(ff.size());
    double spread = 0.0;
    for (const auto& x : xs) spread = std::max(spread, (x - xbar).norm());

    rep.verdict = Verdict::Plane;
    rep.plane_normal = xbar.normalized();
    rep.residual = lf.rms + spread;
    rep.diagnostics["normal_spread"] = spread;
}

}  // namespace

MembershipReport detect_sphere(const FrameField& ff, const FitTolerances& tol) {
    const NormalDevelopment nd = normal_development(ff);
    const LineFit lf = fit_line(nd, tol);
    const double maxk = max_abs_kappa(nd);

    MembershipReport rep;
    rep.diagnostics["line_rms"] = lf.rms;
    rep.diagnostics["origin_offset"] = std::abs(lf.c[0]);

    if (lf.rms > tol.fit_rms * (1.0 + maxk)) {
        rep.residual = lf.rms;
        rep.detail = "development is not collinear";
        return rep;
    }
    if (lf.through_origin) {
        fill_plane_report(rep, ff, lf);
        return rep;
    }

    // sphere criterion: recover (a1, a2), then the center alpha - a1 n1 - a2 n2
    std::vector<Vec3> centers(ff.size());
    Vec3 cbar = Vec3::Zero();
    for (std::size_t i = 0; i < ff.size(); ++i) {
        centers[i] = ff.pc->point(ff.s[i]) - lf.a1 * ff.e1[i] - lf.a2 * ff.e2[i];
        cbar += centers[i];
    }
    cbar /= static_cast<double>(ff.size());
    double spread = 0.0;
    for (const auto& c : centers) spread = std::max(spread, (c - cbar).norm());

    rep.center = cbar;
    rep.residual = lf.rms + spread;
    rep.diagnostics["center_spread"] = spread;
    rep.diagnostics["a1"] = lf.a1;
    rep.diagnostics["a2"] = lf.a2;
    rep.diagnostics["quad_form"] = lf.quad;
    if (lf.degenerate_point) rep.diagnostics["plane_pass"] = 1.0;  // planar and spherical

    const PseudoMetric m0 = ff.metric().at(ff.pc->point(0.0));

    // A constant development determines the whole pencil of lines through the
    // point; every member is a surface containing the curve. The verdict
    // follows the perpendicular-line convention, but the distinguished
    // light-cone members (a2 = +-a1) are verified and reported alongside.
    if (lf.degenerate_point && m0.index() == 1) {
        const Vec2 pbar(ff.c1[0], ff.c2[0]);
        double best = std::numeric_limits<double>::infinity();
        for (double sg : {1.0, -1.0}) {
            const double denom = pbar.x() + sg * pbar.y();
            if (std::abs(denom) < 1e-12) continue;
            const double a1 = -nd.eps / denom, a2 = sg * a1;
            Vec3 apex = Vec3::Zero();
            for (std::size_t i = 0; i < ff.size(); ++i)
                apex += ff.pc->point(ff.s[i]) - a1 * ff.e1[i] - a2 * ff.e2[i];
            apex /= static_cast<double>(ff.size());
            double dev = 0.0;
            for (std::size_t i = 0; i < ff.size(); ++i) {
                const Vec3 d = ff.pc->point(ff.s[i]) - apex;
                dev = std::max(dev, std::abs(m0.inner(d, d)));
            }
            best = std::min(best, dev);
        }
        if (std::isfinite(best)) {
            rep.diagnostics["pencil_cone_defect"] = best;
            if (best <= tol.membership) {
                rep.diagnostics["lightcone_member"] = 1.0;
                rep.detail = "constant development: the curve lies on a pencil of spheres "
                             "including a verified light-cone";
            }
        }
    }

    if (m0.index() == 0) {
        rep.verdict = Verdict::Sphere;
        rep.radius = std::sqrt(lf.quad);
        return rep;
    }

    const double a_scale = std::max(lf.a1 * lf.a1 + lf.a2 * lf.a2, 1.0);
    if (lf.quad > tol.cone * a_scale) {
        rep.verdict = Verdict::PseudoSphere;
        rep.radius = std::sqrt(lf.quad);
    } else if (lf.quad < -tol.cone * a_scale) {
        rep.verdict = Verdict::PseudoHyperbolic;
        rep.radius = std::sqrt(-lf.quad);
    } else {
        rep.verdict = Verdict::LightCone;
        rep.radius = 0.0;
        rep.diagnostics["cone_defect"] =
            std::min(std::abs(lf.a1 - lf.a2), std::abs(lf.a1 + lf.a2));
    }
    return rep;
}

MembershipReport detect_plane(const FrameField& ff, const FitTolerances& tol) {
    const NormalDevelopment nd = normal_development(ff);
    const LineFit lf = fit_line(nd, tol);
    const double maxk = max_abs_kappa(nd);

    MembershipReport rep;
    rep.diagnostics["line_rms"] = lf.rms;
    rep.diagnostics["origin_offset"] = std::abs(lf.c[0]);

    if (lf.rms > tol.fit_rms * (1.0 + maxk)) {
        rep.residual = lf.rms;
        rep.detail = "development is not collinear";
        return rep;
    }
    if (lf.through_origin || lf.degenerate_point || lf.degenerate_zero) {
        fill_plane_report(rep, ff, lf);
        if (lf.degenerate_point) rep.detail = "constant development: planar and spherical";
        return rep;
    }
    rep.residual = lf.rms;
    rep.detail = "development line misses the origin";
    return rep;
}

// ---------------------------------------------------------------------------
// lightlike curves
// ---------------------------------------------------------------------------

bool is_straight_line(const Curve& curve, double tol) {
    const auto grid = curve.grid_params();
    const Jet3 j0 = curve.jet(grid.front());
    const Vec3 u = j0[1].normalized();
    for (double t : grid) {
        const Jet3 j = curve.jet(t);
        const double vel_dev = j[1].cross(u).norm();
        if (vel_dev > tol * (1.0 + j[1].norm())) return false;
        const Vec3 d = j[0] - j0[0];
        if (d.cross(u).norm() > tol * (1.0 + d.norm())) return false;
    }
    return true;
}

namespace {

MembershipReport candidate_verdicts(MembershipReport rep, const Curve& curve,
                                    const PseudoMetric& metric,
                                    const std::vector<SphereCandidate>& candidates,
                                    bool k1_vanishes, const FitTolerances& tol) {
    const auto grid = curve.grid_params();
    int idx = 0;
    for (const auto& cand : candidates) {
        double dev = 0.0;
        for (double t : grid) {
            const Vec3 d = curve.eval(t) - cand.center;
            dev = std::max(dev, std::abs(metric.inner(d, d) - cand.rho));
        }
        rep.diagnostics["candidate_" + std::to_string(idx) + "_deviation"] = dev;
        const bool pass = dev <= tol.membership * (1.0 + std::abs(cand.rho));
        if (pass && k1_vanishes && cand.rho > tol.membership) {
            rep.verdict = Verdict::PseudoSphere;
            rep.center = cand.center;
            rep.radius = std::sqrt(cand.rho);
            rep.residual = dev;
        } else if (pass && k1_vanishes && std::abs(cand.rho) <= tol.membership) {
            rep.verdict = Verdict::LightCone;
            rep.center = cand.center;
            rep.radius = 0.0;
            rep.residual = dev;
        }
        ++idx;
    }
    return rep;
}

}  // namespace

MembershipReport lightlike_sphere_test(const FrameField& ff,
                                       const std::vector<SphereCandidate>& candidates,
                                       const FitTolerances& tol) {
    if (ff.kind != FrameKind::Null)
        throw Error(ErrorCode::NotNullFrame, "the lightlike sphere test reads a null frame");

    MembershipReport rep;
    double max_k1 = 0.0;
    for (double k : ff.c1) max_k1 = std::max(max_k1, std::abs(k));
    const bool vanishes = max_k1 <= tol.k1_zero;

    rep.diagnostics["max_abs_kappa1"] = max_k1;
    rep.diagnostics["kappa1_vanishes"] = vanishes ? 1.0 : 0.0;
    rep.detail = vanishes
                     ? "kappa_1 vanishes: straight line, consistent with pseudo-sphere or "
                       "light-cone membership"
                     : "kappa_1 does not vanish: the curve lies on no pseudo-sphere or light-cone";
    rep.residual = max_k1;

    const PseudoMetric m = ff.metric().at(Vec3::Zero());
    return candidate_verdicts(std::move(rep), ff.pc->base(), m, candidates, vanishes, tol);
}

MembershipReport lightlike_sphere_test(const Curve& curve, const PseudoMetric& metric,
                                       const std::vector<SphereCandidate>& candidates,
                                       const FitTolerances& tol) {
    if (is_straight_line(curve)) {
        // straight lines of any causal character have kappa_1 == 0; candidates
        // are checked directly, which is where non-lightlike lines fail
        MembershipReport rep;
        rep.diagnostics["max_abs_kappa1"] = 0.0;
        rep.diagnostics["kappa1_vanishes"] = 1.0;
        rep.diagnostics["straight_line"] = 1.0;
        rep.detail = "straight line: kappa_1 == 0; membership requires a direct check";
        return candidate_verdicts(std::move(rep), curve, metric, candidates, true, tol);
    }

    const CausalCharacter causal = profile_causal(curve, metric);
    if (causal != CausalCharacter::Lightlike)
        throw Error(ErrorCode::InvalidArgument,
                    "the lightlike sphere test applies to lightlike curves or straight lines");
    const ParamCurve pc = reparametrize(curve, metric);
    return lightlike_sphere_test(null_frame(pc), candidates, tol);
}

std::vector<Vec3> lightlike_tangent_directions(const PseudoMetric& metric, const Vec3& center,
                                               double rho, const Vec3& p0) {
    const Vec3 v = p0 - center;
    const double val = metric.inner(v, v);
    if (std::abs(val - rho) > 1e-6 * (1.0 + std::abs(rho)))
        throw Error(ErrorCode::InvalidArgument, "base point does not lie on the surface");

    // tangent plane = metric-orthogonal complement of v
    const Vec3 w = metric.matrix() * v;
    int axis = 0;
    w.cwiseAbs().minCoeff(&axis);
    Vec3 b1 = w.cross(Vec3::Unit(axis));
    b1.normalize();
    const Vec3 b2 = w.cross(b1).normalized();

    const double A = metric.inner(b2, b2);
    const double B = metric.inner(b1, b2);
    const double C = metric.inner(b1, b1);
    const double scale = std::abs(A) + std::abs(B) + std::abs(C);
    const double disc = B * B - A * C;

    if (disc < -1e-12 * scale * scale)
        throw Error(ErrorCode::NoLightlikeTangent,
                    "tangent plane is spacelike: no lightlike tangent direction exists");

    auto orient = [](Vec3 u) {
        u.normalize();
        for (int i = 0; i < 3; ++i) {
            if (std::abs(u[i]) > 1e-12) return u[i] > 0 ? u : Vec3(-u);
        }
        return u;
    };

    std::vector<Vec3> dirs;
    if (disc <= 1e-12 * scale * scale) {
        // double root: the tangent plane is lightlike (light-cone points)
        dirs.push_back(orient(std::abs(A) > std::abs(C) ? Vec3(b1 - (B / A) * b2)
                                                        : Vec3(b2 - (B / C) * b1)));
        return dirs;
    }
    const double root = std::sqrt(disc);
    if (std::abs(A) > 1e-12 * scale) {
        dirs.push_back(orient(b1 + ((-B + root) / A) * b2));
        dirs.push_back(orient(b1 + ((-B - root) / A) * b2));
    } else {
        dirs.push_back(orient(b2));  // (b2, b2) == 0: root at infinity
        dirs.push_back(orient(b1 - (C / (2.0 * B)) * b2));
    }
    return dirs;
}

Curve lightlike_ruling(const PseudoMetric& metric, const Vec3& center, double rho, const Vec3& p0,
                       double t_extent) {
    const auto dirs = lightlike_tangent_directions(metric, center, rho, p0);
    const Vec3& u = dirs.front();
    return Curve::family("line",
                         {{"px", p0.x()}, {"py", p0.y()}, {"pz", p0.z()},
                          {"ux", u.x()}, {"uy", u.y()}, {"uz", u.z()}},
                         -t_extent, t_extent);
}

// ---------------------------------------------------------------------------
// quadrics
// ---------------------------------------------------------------------------

namespace {

std::string quadric_class(int index_B, double level) {
    if (index_B == 0) return level > 0 ? "ellipsoid" : "empty";
    if (index_B == 3) return level < 0 ? "ellipsoid" : "empty";
    const bool flip = index_B == 2;
    const double c = flip ? -level : level;  // behave like index 1
    if (c > 0) return "one-sheeted hyperboloid";
    if (c < 0) return "two-sheeted hyperboloid";
    return "cone";
}

}  // namespace

MembershipReport detect_quadric(const Curve& curve, const Mat3& B, const Vec3& center,
                                const FitTolerances& tol) {
    const PseudoMetric mb(B);  // throws DegenerateMetric on singular B
    const bool flip = mb.index() >= 2;
    const PseudoMetric mm = flip ? mb.negated() : mb;

    const CausalCharacter causal = profile_causal(curve, mm);
    if (causal == CausalCharacter::Lightlike) {
        // asymptotic direction everywhere: if the curve is on the quadric it is
        // a ruling line; route through the lightlike test with the level value
        // estimated at the anchor point
        const Vec3 d0 = curve.eval(curve.t_min()) - center;
        const double rho = mm.inner(d0, d0);
        MembershipReport rep =
            lightlike_sphere_test(curve, mm, {SphereCandidate{center, rho}}, tol);
        if (rep.verdict == Verdict::PseudoSphere || rep.verdict == Verdict::LightCone) {
            const double level = flip ? -rho : rho;
            rep.verdict = Verdict::Quadric;
            rep.radius = std::sqrt(std::abs(level));
            rep.center = center;
            rep.detail = quadric_class(mb.index(), level) + " (asymptotic route)";
            rep.diagnostics["level_value"] = level;
        }
        return rep;
    }

    const ParamCurve pc = reparametrize(curve, mm);
    MembershipReport rep = detect_sphere(bishop(pc), tol);
    if (rep.verdict == Verdict::Plane || rep.verdict == Verdict::None) {
        if (rep.verdict == Verdict::Plane) {
            rep.detail = "planar in the quadric metric; on no level set of B";
            rep.verdict = Verdict::None;
        }
        return rep;
    }

    double level_m = 0.0;
    if (rep.verdict == Verdict::Sphere || rep.verdict == Verdict::PseudoSphere)
        level_m = rep.radius * rep.radius;
    else if (rep.verdict == Verdict::PseudoHyperbolic)
        level_m = -rep.radius * rep.radius;

    const double level = flip ? -level_m : level_m;
    rep.verdict = Verdict::Quadric;
    rep.radius = std::sqrt(std::abs(level));
    rep.detail = quadric_class(mb.index(), level);
    rep.diagnostics["level_value"] = level;
    if (rep.center) rep.diagnostics["center_given_error"] = (*rep.center - center).norm();
    return rep;
}

}  // namespace framekit
