#include "framekit/frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "framekit/fd.hpp"

namespace framekit {

const char* to_string(FrameKind k) {
    switch (k) {
        case FrameKind::Frenet: return "Frenet";
        case FrameKind::Bishop: return "Bishop";
        case FrameKind::Null: return "Null";
    }
    return "?";
}

Mat3 FrameField::gram_at(std::size_t i) const {
    const Mat3 g = pc->metric().matrix_at(pc->point(s[i]));
    Mat3 out;
    const Vec3* e[3] = {&e0[i], &e1[i], &e2[i]};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out(a, b) = e[a]->dot(g * (*e[b]));
    return out;
}

namespace {

double round_sign(double v, const char* what) {
    if (std::abs(std::abs(v) - 1.0) > 1e-6)
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " is not unit as required by the parametrization");
    return v > 0 ? 1.0 : -1.0;
}

// Unique b with (b, x) = cx, (b, y) = cy, (b, b) = 0, given the kernel
// direction k of the linear pair ((k,x) = (k,y) = 0, (k,k) = 0, (b0,k) != 0).
Vec3 solve_null_leg(const Mat3& g, const Vec3& x, double cx, const Vec3& y, double cy,
                    const Vec3& k) {
    Mat3 A;
    A.row(0) = (g * x).transpose();
    A.row(1) = (g * y).transpose();
    A.row(2) = x.cross(y).transpose();
    Vec3 rhs(cx, cy, 0.0);
    if (std::abs(A.determinant()) < 1e-12) {
        // fall back to a canonical third row
        for (int i = 0; i < 3; ++i) {
            A.row(2) = Vec3::Unit(i).transpose();
            if (std::abs(A.determinant()) > 1e-12) break;
        }
    }
    const Vec3 b0 = A.inverse() * rhs;
    const double bk = b0.dot(g * k);
    if (std::abs(bk) < 1e-12)
        throw Error(ErrorCode::InvalidArgument, "null-leg construction degenerated");
    const double mu = -b0.dot(g * b0) / (2.0 * bk);
    return b0 + mu * k;
}

struct StageData {
    Vec3 point;
    Vec3 t;       // beta'
    Vec3 dt;      // covariant tangent derivative: beta'' + Gamma(t, t)
    Mat3 g;
    Christoffel chris;
    bool curved = false;
};

StageData stage_at(const ParamCurve& pc, double s) {
    StageData d;
    d.point = pc.point(s);
    d.t = pc.derivative(s, 1);
    d.g = pc.metric().matrix_at(d.point);
    d.curved = !pc.metric().constant();
    if (d.curved) {
        d.chris = pc.metric().christoffel(d.point);
        d.dt = pc.derivative(s, 2) + d.chris.apply(d.t, d.t);
    } else {
        d.chris = Christoffel::zero();
        d.dt = pc.derivative(s, 2);
    }
    return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Frenet
// ---------------------------------------------------------------------------

FrameField frenet(const ParamCurve& pc) {
    if (!pc.metric().constant())
        throw Error(ErrorCode::InvalidArgument, "Frenet frames are built for constant metrics");
    if (pc.kind() == ParamKind::Raw)
        throw Error(ErrorCode::InvalidArgument, "Frenet frames need an (pseudo) arc-length curve");

    const PseudoMetric m = pc.metric().at(Vec3::Zero());
    const double causal_tol = m.causal_tol();

    FrameField ff;
    ff.kind = FrameKind::Frenet;
    ff.causal = pc.causal();
    ff.pc = std::make_shared<ParamCurve>(pc);
    ff.s = pc.grid();
    const std::size_t n = ff.s.size();
    ff.e0.resize(n);
    ff.e1.resize(n);
    ff.e2.resize(n);
    ff.c1.resize(n);
    ff.c2.resize(n);
    ff.c3.assign(n, 0.0);

    bool case_set = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = ff.s[i];
        const Vec3 t = pc.derivative(s, 1);
        const Vec3 tp = pc.derivative(s, 2);

        FrenetCase fc;
        if (pc.causal() == CausalCharacter::Lightlike) {
            fc = FrenetCase::LightlikeTangent;
        } else {
            if (tp.norm() <= 1e-9)
                throw Error(ErrorCode::VanishingCurvature,
                            "curvature vanishes near s = " + std::to_string(s) +
                                "; Frenet is undefined there, consider a Bishop frame");
            const double qn = m.inner(tp, tp);
            fc = std::abs(qn) < causal_tol * tp.squaredNorm() ? FrenetCase::LightlikeNormal
                                                              : FrenetCase::Generic;
        }
        if (!case_set) {
            ff.frenet_case = fc;
            case_set = true;
        } else if (fc != ff.frenet_case) {
            throw Error(ErrorCode::MixedCausalCharacter,
                        "Frenet normal changes causal type near s = " + std::to_string(s));
        }

        switch (fc) {
            case FrenetCase::Generic: {
                const double qn = m.inner(tp, tp);
                const double rho = std::sqrt(std::abs(qn));
                const double eta = qn > 0 ? 1.0 : -1.0;
                const Vec3 nrm = tp / rho;
                const Vec3 b = m.cross(t, nrm);
                const Vec3 t3 = pc.derivative(s, 3);
                const double rho_dot = eta * m.inner(t3, tp) / rho;
                const Vec3 nrm_dot = t3 / rho - tp * (rho_dot / (rho * rho));
                ff.e0[i] = t;
                ff.e1[i] = nrm;
                ff.e2[i] = b;
                ff.c1[i] = m.inner(tp, nrm);  // signed curvature
                ff.c2[i] = m.inner(nrm_dot, b);
                if (i == 0) {
                    ff.eps = round_sign(m.inner(t, t), "tangent");
                    ff.eps1 = eta;
                    // (b, b) = eps * eta / det(G): -eps*eta in the index-1 case
                    const double eps2 = round_sign(m.inner(b, b), "binormal");
                    ff.gram = Vec3(ff.eps, eta, eps2).asDiagonal();
                }
                break;
            }
            case FrenetCase::LightlikeNormal: {
                // t spacelike, t' lightlike: n = t', b lightlike with
                // (t, b) = 0 and (n, b) = -1.
                const Vec3 nrm = tp;
                const Vec3 b = solve_null_leg(m.matrix(), t, 0.0, nrm, -1.0, nrm);
                const Vec3 nrm_dot = pc.derivative(s, 3);
                ff.e0[i] = t;
                ff.e1[i] = nrm;
                ff.e2[i] = b;
                ff.c1[i] = 1.0;
                ff.c2[i] = -m.inner(nrm_dot, b);  // pseudo-torsion
                if (i == 0) {
                    ff.eps = round_sign(m.inner(t, t), "tangent");
                    ff.eps1 = 0.0;
                    ff.gram << 1, 0, 0, 0, 0, -1, 0, -1, 0;
                }
                break;
            }
            case FrenetCase::LightlikeTangent: {
                // t lightlike: n = t' (unit spacelike under pseudo arc-length),
                // b lightlike with (n, b) = 0 and (t, b) = -1.
                const Vec3 nrm = tp;
                round_sign(m.inner(nrm, nrm), "acceleration");
                const Vec3 b = solve_null_leg(m.matrix(), nrm, 0.0, t, -1.0, t);
                const Vec3 nrm_dot = pc.derivative(s, 3);
                ff.e0[i] = t;
                ff.e1[i] = nrm;
                ff.e2[i] = b;
                ff.c1[i] = 1.0;
                ff.c2[i] = m.inner(nrm_dot, b);  // pseudo-torsion
                if (i == 0) {
                    ff.eps = 0.0;
                    ff.eps1 = 1.0;
                    ff.gram << 0, 0, -1, 0, 1, 0, -1, 0, 0;
                }
                break;
            }
        }
    }
    return ff;
}

// ---------------------------------------------------------------------------
// Bishop
// ---------------------------------------------------------------------------

namespace {

Vec3 default_initial_normal(const PseudoMetric& m, const Vec3& t, bool want_timelike) {
    // canonical basis vectors ordered by |cosine| against t
    std::array<int, 3> order = {0, 1, 2};
    const Vec3 th = t.normalized();
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(th[a]) < std::abs(th[b]); });

    const double tt = m.inner(t, t);
    for (int axis : order) {
        const Vec3 e = Vec3::Unit(axis);
        const Vec3 w = e - (m.inner(e, t) / tt) * t;
        const double q = m.inner(w, w);
        if (std::abs(q) <= m.causal_tol() * w.squaredNorm()) continue;  // lightlike normal seed
        if (!want_timelike) {
            if (q > 0) return w / std::sqrt(q);
            const Vec3 u = m.cross(t, w);
            const double qu = m.inner(u, u);
            if (qu > 0) return u / std::sqrt(qu);
            continue;
        }
        if (q < 0) return w / std::sqrt(-q);
        const Vec3 u = m.cross(t, w);
        const double qu = m.inner(u, u);
        if (qu < 0) return u / std::sqrt(-qu);
    }
    throw Error(ErrorCode::BadGauge, "no admissible initial normal found");
}

}  // namespace

FrameField bishop(const ParamCurve& pc, const BishopGauge& gauge) {
    if (pc.causal() == CausalCharacter::Lightlike)
        throw Error(ErrorCode::LightlikeCurve, "no Bishop frame exists along lightlike curves");
    if (pc.kind() != ParamKind::ArcLength)
        throw Error(ErrorCode::InvalidArgument, "Bishop frames need an arc-length curve");

    const MetricField& mf = pc.metric();
    const PseudoMetric m0 = mf.at(pc.point(0.0));
    if (m0.index() > 1)
        throw Error(ErrorCode::InvalidArgument,
                    "metrics of index 2 or 3 must be negated before framing");

    const bool want_timelike = m0.index() == 1 && pc.causal() == CausalCharacter::Spacelike;
    const double eps = pc.causal() == CausalCharacter::Spacelike ? 1.0 : -1.0;
    const double eps1 = want_timelike ? -1.0 : 1.0;

    const std::vector<double>& grid = pc.grid();
    const std::size_t n = grid.size();
    const double h = pc.grid_step();

    // cached stage data at grid nodes and midpoints
    std::vector<StageData> stage(2 * n - 1);
    for (std::size_t k = 0; k < stage.size(); ++k) stage[k] = stage_at(pc, 0.5 * k * h);

    Vec3 n1;
    {
        const Vec3 t0 = stage[0].t;
        if (gauge.initial_normal) {
            n1 = *gauge.initial_normal;
            const double ip = m0.inner(n1, t0);
            if (std::abs(ip) > 1e-8 * (n1.norm() * t0.norm()))
                throw Error(ErrorCode::BadGauge, "initial normal is not orthogonal to the tangent");
            const double q = m0.inner(n1, n1);
            if ((want_timelike && q >= 0) || (!want_timelike && q <= 0))
                throw Error(ErrorCode::BadGauge,
                            want_timelike ? "initial normal must be timelike on this curve"
                                          : "initial normal must be spacelike on this curve");
            n1 /= std::sqrt(std::abs(q));
        } else {
            n1 = default_initial_normal(m0, t0, want_timelike);
        }
    }

    FrameField ff;
    ff.kind = FrameKind::Bishop;
    ff.causal = pc.causal();
    ff.pc = std::make_shared<ParamCurve>(pc);
    ff.s = grid;
    ff.e0.resize(n);
    ff.e1.resize(n);
    ff.e2.resize(n);
    ff.c1.resize(n);
    ff.c2.resize(n);
    ff.c3.assign(n, 0.0);
    ff.eps = eps;
    ff.eps1 = eps1;
    ff.gram = Vec3(eps, eps1, 1.0).asDiagonal();

    // n1' = -eps (Dt, n1) t - Gamma(t, n1): the relatively parallel condition,
    // written with plain derivatives
    auto rhs = [eps](const StageData& d, const Vec3& v) {
        Vec3 out = -eps * d.dt.dot(d.g * v) * d.t;
        if (d.curved) out -= d.chris.apply(d.t, v);
        return out;
    };

    auto record = [&](std::size_t i, const Vec3& v) {
        const StageData& d = stage[2 * i];
        // (t x n1, t x n1) = det(Gram(t, n1)) / det(G): unit only when
        // det(G) = -eps eps1; normalize so eps2 = +1 for any admissible metric
        Vec3 n2 = d.g.inverse() * d.t.cross(v);
        n2 /= std::sqrt(std::abs(n2.dot(d.g * n2)));
        ff.e0[i] = d.t;
        ff.e1[i] = v;
        ff.e2[i] = n2;
        ff.c1[i] = d.dt.dot(d.g * v);
        ff.c2[i] = d.dt.dot(d.g * n2);
    };

    record(0, n1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const StageData& a = stage[2 * i];
        const StageData& mid = stage[2 * i + 1];
        const StageData& b = stage[2 * i + 2];
        const Vec3 k1 = rhs(a, n1);
        const Vec3 k2 = rhs(mid, n1 + 0.5 * h * k1);
        const Vec3 k3 = rhs(mid, n1 + 0.5 * h * k2);
        const Vec3 k4 = rhs(b, n1 + h * k3);
        n1 += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        // constraint projection: restore orthogonality and unit pseudo-norm
        const double tt = b.t.dot(b.g * b.t);
        n1 -= (n1.dot(b.g * b.t) / tt) * b.t;
        const double q = n1.dot(b.g * n1);
        if (q * eps1 <= 0.0)
            throw Error(ErrorCode::InvalidArgument,
                        "frame integration lost the normal's causal type");
        n1 /= std::sqrt(std::abs(q));
        record(i + 1, n1);
    }
    return ff;
}

// ---------------------------------------------------------------------------
// Null frames
// ---------------------------------------------------------------------------

FrameField null_frame(const ParamCurve& pc, NullGaugeMode mode) {
    if (pc.causal() != CausalCharacter::Lightlike)
        throw Error(ErrorCode::NotNullFrame, "null frames require a lightlike curve");
    if (pc.kind() == ParamKind::ArcLength)
        throw Error(ErrorCode::InvalidArgument, "lightlike curves cannot carry arc-length");
    if (!pc.metric().constant())
        throw Error(ErrorCode::InvalidArgument, "null frames are built for constant metrics");

    const PseudoMetric m = pc.metric().at(Vec3::Zero());
    const Mat3& g = m.matrix();

    FrameField ff;
    ff.kind = FrameKind::Null;
    ff.causal = CausalCharacter::Lightlike;
    ff.straight_line = pc.kind() == ParamKind::Raw;
    ff.pc = std::make_shared<ParamCurve>(pc);
    ff.s = pc.grid();
    const std::size_t n = ff.s.size();
    ff.e0.resize(n);
    ff.e1.resize(n);
    ff.e2.resize(n);
    ff.c1.resize(n);
    ff.c2.resize(n);
    ff.c3.resize(n);
    ff.eps = 0.0;
    ff.eps1 = 1.0;
    ff.gram << 0, 0, -1, 0, 1, 0, -1, 0, 0;

    for (std::size_t i = 0; i < n; ++i) {
        const double s = ff.s[i];
        const Vec3 t = pc.derivative(s, 1);
        const Vec3 tp = pc.derivative(s, 2);

        Vec3 z1, z1_dot;
        if (mode == NullGaugeMode::Acceleration) {
            round_sign(m.inner(tp, tp), "acceleration");
            z1 = tp;
            z1_dot = pc.derivative(s, 3);
        } else {
            // z1 spans the spacelike direction of the normal plane, built from
            // the tangent alone so kappa_1 stays an honest measurement
            const Vec3 w = (g * t).cross(t);
            const double q = m.inner(w, w);
            if (q <= 0)
                throw Error(ErrorCode::InvalidArgument, "normal plane construction degenerated");
            const double rho = std::sqrt(q);
            z1 = w / rho;
            const Vec3 w_dot = (g * tp).cross(t) + (g * t).cross(tp);
            const double rho_dot = m.inner(w_dot, w) / rho;
            z1_dot = w_dot / rho - w * (rho_dot / (rho * rho));
        }

        const Vec3 z2 = solve_null_leg(g, t, -1.0, z1, 0.0, t);
        ff.e0[i] = t;
        ff.e1[i] = z1;
        ff.e2[i] = z2;
        ff.c1[i] = m.inner(tp, z1);
        ff.c2[i] = m.inner(z1_dot, z2);
    }

    // kappa_3 = (z2', t) via five-point stencils over the grid
    const double h = pc.grid_step();
    const std::vector<double> offsets = {-2, -1, 0, 1, 2};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = std::clamp<std::size_t>(i, 2, n - 3);
        const double o = static_cast<double>(i) - static_cast<double>(c);
        const Eigen::MatrixXd w = fd_weights(o, offsets, 1);
        Vec3 z2_dot = Vec3::Zero();
        for (int j = 0; j < 5; ++j) z2_dot += (w(1, j) / h) * ff.e2[c - 2 + j];
        ff.c3[i] = m.inner(z2_dot, ff.e0[i]);
    }
    return ff;
}

// ---------------------------------------------------------------------------
// gauge transformations and holonomy
// ---------------------------------------------------------------------------

FrameField regauge(const FrameField& ff, double angle) {
    if (ff.kind != FrameKind::Bishop)
        throw Error(ErrorCode::NotBishopFrame, "regauge applies to Bishop frames");
    FrameField out = ff;
    const bool hyperbolic = ff.eps1 < 0;
    const double ca = hyperbolic ? std::cosh(angle) : std::cos(angle);
    const double sa = hyperbolic ? std::sinh(angle) : std::sin(angle);
    for (std::size_t i = 0; i < ff.size(); ++i) {
        if (hyperbolic) {
            out.e1[i] = ca * ff.e1[i] + sa * ff.e2[i];
            out.e2[i] = sa * ff.e1[i] + ca * ff.e2[i];
            out.c1[i] = ca * ff.c1[i] + sa * ff.c2[i];
            out.c2[i] = sa * ff.c1[i] + ca * ff.c2[i];
        } else {
            out.e1[i] = ca * ff.e1[i] - sa * ff.e2[i];
            out.e2[i] = sa * ff.e1[i] + ca * ff.e2[i];
            out.c1[i] = ca * ff.c1[i] - sa * ff.c2[i];
            out.c2[i] = sa * ff.c1[i] + ca * ff.c2[i];
        }
    }
    return out;
}

std::vector<double> frenet_torsion(const ParamCurve& pc, const std::vector<double>& s) {
    if (!pc.metric().constant())
        throw Error(ErrorCode::InvalidArgument, "Frenet torsion needs a constant metric");
    const PseudoMetric m = pc.metric().at(Vec3::Zero());
    std::vector<double> tau(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Vec3 t = pc.derivative(s[i], 1);
        const Vec3 tp = pc.derivative(s[i], 2);
        const double qn = m.inner(tp, tp);
        if (tp.norm() <= 1e-9 || std::abs(qn) < m.causal_tol() * tp.squaredNorm())
            throw Error(ErrorCode::VanishingCurvature,
                        "torsion undefined near s = " + std::to_string(s[i]));
        const double rho = std::sqrt(std::abs(qn));
        const double eta = qn > 0 ? 1.0 : -1.0;
        const Vec3 nrm = tp / rho;
        const Vec3 b = m.cross(t, nrm);
        const Vec3 t3 = pc.derivative(s[i], 3);
        const double rho_dot = eta * m.inner(t3, tp) / rho;
        const Vec3 nrm_dot = t3 / rho - tp * (rho_dot / (rho * rho));
        tau[i] = m.inner(nrm_dot, b);
    }
    return tau;
}

double holonomy(const FrameField& ff) {
    if (ff.kind != FrameKind::Bishop)
        throw Error(ErrorCode::NotBishopFrame, "holonomy is reported for Bishop frames");
    const std::vector<double> tau = frenet_torsion(*ff.pc, ff.s);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < ff.s.size(); ++i)
        acc += 0.5 * (tau[i] + tau[i + 1]) * (ff.s[i + 1] - ff.s[i]);
    return acc;
}

}  // namespace framekit
