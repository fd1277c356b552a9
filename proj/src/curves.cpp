#include "framekit/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "framekit/fd.hpp"
#include "framekit/taylor.hpp"

namespace framekit {

namespace {

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 const double* fallback = nullptr) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (fallback) return *fallback;
    throw Error(ErrorCode::InvalidArgument, "curve family missing parameter '" + key + "'");
}

double get_param(const std::map<std::string, double>& params, const std::string& key, double dflt) {
    return get_param(params, key, &dflt);
}

using TaylorCurve = std::function<std::array<Taylor4, 3>(const Taylor4&)>;

Curve::JetFn wrap_taylor(TaylorCurve f) {
    return [f = std::move(f)](double t) {
        const auto c = f(Taylor4::variable(t));
        Jet3 jet;
        jet[0] = Vec3(c[0].v, c[1].v, c[2].v);
        jet[1] = Vec3(c[0].d1, c[1].d1, c[2].d1);
        jet[2] = Vec3(c[0].d2, c[1].d2, c[2].d2);
        jet[3] = Vec3(c[0].d3, c[1].d3, c[2].d3);
        return jet;
    };
}

}  // namespace

const char* to_string(ParamKind k) {
    switch (k) {
        case ParamKind::ArcLength: return "ArcLength";
        case ParamKind::PseudoArcLength: return "PseudoArcLength";
        case ParamKind::Raw: return "Raw";
    }
    return "?";
}

Curve Curve::analytic(std::string label, JetFn jet, double t0, double t1, int grid_n) {
    if (!(t1 > t0)) throw Error(ErrorCode::InvalidArgument, "curve domain must satisfy t0 < t1");
    Curve c;
    c.label_ = std::move(label);
    c.jet_ = std::move(jet);
    c.t0_ = t0;
    c.t1_ = t1;
    c.grid_n_ = std::max(grid_n, kMinSamples);
    return c;
}

Curve Curve::polynomial(std::vector<double> cx, std::vector<double> cy, std::vector<double> cz,
                        double t0, double t1, int grid_n) {
    auto eval_poly = [](const std::vector<double>& c, const Taylor4& t) {
        Taylor4 acc = Taylor4::constant(0.0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
        return acc;
    };
    TaylorCurve f = [cx = std::move(cx), cy = std::move(cy), cz = std::move(cz),
                     eval_poly](const Taylor4& t) {
        return std::array<Taylor4, 3>{eval_poly(cx, t), eval_poly(cy, t), eval_poly(cz, t)};
    };
    return analytic("polynomial", wrap_taylor(std::move(f)), t0, t1, grid_n);
}

const std::vector<std::string>& Curve::family_names() {
    static const std::vector<std::string> names = {
        "line",          "circle",           "helix",         "hyperbola_s1",
        "hyperbola_h0",  "lightcone_circle", "lightcone_spiral", "null_cosh",
        "small_circle",  "sphere_spiral",    "s1_spiral",     "h0_spiral",
        "torus_latitude", "torus_winding",   "parabola_null"};
    return names;
}

Curve Curve::family(const std::string& name, const std::map<std::string, double>& params,
                    double t0, double t1, int grid_n) {
    const Taylor4 zero = Taylor4::constant(0.0);
    TaylorCurve f;

    if (name == "line") {
        const Vec3 p(get_param(params, "px"), get_param(params, "py"), get_param(params, "pz"));
        const Vec3 u(get_param(params, "ux"), get_param(params, "uy"), get_param(params, "uz"));
        f = [p, u](const Taylor4& t) {
            return std::array<Taylor4, 3>{p.x() + u.x() * t, p.y() + u.y() * t, p.z() + u.z() * t};
        };
    } else if (name == "circle") {
        const double r = get_param(params, "r");
        const Vec3 c(get_param(params, "cx", 0.0), get_param(params, "cy", 0.0),
                     get_param(params, "cz", 0.0));
        f = [r, c](const Taylor4& t) {
            return std::array<Taylor4, 3>{c.x() + r * cos(t), c.y() + r * sin(t),
                                          Taylor4::constant(c.z())};
        };
    } else if (name == "helix") {
        const double a = get_param(params, "a"), b = get_param(params, "b");
        f = [a, b](const Taylor4& t) {
            return std::array<Taylor4, 3>{a * cos(t), a * sin(t), b * t};
        };
    } else if (name == "hyperbola_s1") {
        const double r = get_param(params, "r");
        f = [r, zero](const Taylor4& t) {
            return std::array<Taylor4, 3>{r * cosh(t), zero, r * sinh(t)};
        };
    } else if (name == "hyperbola_h0") {
        const double r = get_param(params, "r");
        f = [r, zero](const Taylor4& t) {
            return std::array<Taylor4, 3>{r * sinh(t), zero, r * cosh(t)};
        };
    } else if (name == "lightcone_circle") {
        const double r = get_param(params, "r");
        f = [r](const Taylor4& t) {
            return std::array<Taylor4, 3>{r * cos(t), r * sin(t), Taylor4::constant(r)};
        };
    } else if (name == "lightcone_spiral") {
        // rho(t) (cos t, sin t, 1) stays on the cone and spacelike for any rho
        const double r = get_param(params, "r"), amp = get_param(params, "amp");
        const double k = get_param(params, "k", 1.0);
        f = [r, amp, k](const Taylor4& t) {
            const Taylor4 rho = r * (amp * sin(k * t) + 1.0);
            return std::array<Taylor4, 3>{rho * cos(t), rho * sin(t), rho};
        };
    } else if (name == "null_cosh") {
        f = [](const Taylor4& t) { return std::array<Taylor4, 3>{cosh(t), t, sinh(t)}; };
    } else if (name == "small_circle") {
        const double r = get_param(params, "r"), lat = get_param(params, "lat");
        const Vec3 c(get_param(params, "cx", 0.0), get_param(params, "cy", 0.0),
                     get_param(params, "cz", 0.0));
        const double rho = r * std::cos(lat), z = r * std::sin(lat);
        f = [rho, z, c](const Taylor4& t) {
            return std::array<Taylor4, 3>{c.x() + rho * cos(t), c.y() + rho * sin(t),
                                          Taylor4::constant(c.z() + z)};
        };
    } else if (name == "sphere_spiral") {
        const double r = get_param(params, "r"), amp = get_param(params, "amp");
        const double k = get_param(params, "k", 1.0);
        const double phi0 = get_param(params, "phi0", 0.5 * M_PI);
        const Vec3 c(get_param(params, "cx", 0.0), get_param(params, "cy", 0.0),
                     get_param(params, "cz", 0.0));
        f = [r, amp, k, phi0, c](const Taylor4& t) {
            const Taylor4 phi = amp * sin(k * t) + phi0;
            return std::array<Taylor4, 3>{c.x() + r * sin(phi) * cos(t),
                                          c.y() + r * sin(phi) * sin(t), c.z() + r * cos(phi)};
        };
    } else if (name == "s1_spiral") {
        const double r = get_param(params, "r"), amp = get_param(params, "amp");
        const double k = get_param(params, "k", 1.0);
        f = [r, amp, k](const Taylor4& t) {
            const Taylor4 v = amp * sin(k * t);
            return std::array<Taylor4, 3>{r * cosh(v) * cos(t), r * cosh(v) * sin(t), r * sinh(v)};
        };
    } else if (name == "h0_spiral") {
        const double r = get_param(params, "r"), v0 = get_param(params, "v0");
        const double amp = get_param(params, "amp"), k = get_param(params, "k", 1.0);
        f = [r, v0, amp, k](const Taylor4& t) {
            const Taylor4 v = amp * sin(k * t) + v0;
            return std::array<Taylor4, 3>{r * sinh(v) * cos(t), r * sinh(v) * sin(t), r * cosh(v)};
        };
    } else if (name == "torus_latitude") {
        const double R = get_param(params, "R"), a = get_param(params, "a");
        const double phi = get_param(params, "phi", 0.0);
        const double rho = R + a * std::cos(phi), z = a * std::sin(phi);
        f = [rho, z](const Taylor4& t) {
            return std::array<Taylor4, 3>{rho * cos(t), rho * sin(t), Taylor4::constant(z)};
        };
    } else if (name == "torus_winding") {
        const double R = get_param(params, "R"), a = get_param(params, "a");
        const double m = get_param(params, "m"), phi0 = get_param(params, "phi0", 0.0);
        f = [R, a, m, phi0](const Taylor4& t) {
            const Taylor4 phi = m * t + phi0;
            const Taylor4 rho = a * cos(phi) + R;
            return std::array<Taylor4, 3>{rho * cos(t), rho * sin(t), a * sin(phi)};
        };
    } else if (name == "parabola_null") {
        const double c = get_param(params, "c", 0.5);
        f = [c](const Taylor4& t) {
            return std::array<Taylor4, 3>{t, c * t * t, c * t * t};
        };
    } else {
        std::ostringstream msg;
        msg << "unknown curve family '" << name << "'; available:";
        for (const auto& n : family_names()) msg << " " << n;
        throw Error(ErrorCode::InvalidArgument, msg.str());
    }

    return analytic(name, wrap_taylor(std::move(f)), t0, t1, grid_n);
}

Curve Curve::from_samples(std::vector<double> t, std::vector<Vec3> points) {
    if (t.size() != points.size())
        throw Error(ErrorCode::InvalidArgument, "sample parameter/point counts differ");
    if (t.size() < kMinSamples)
        throw Error(ErrorCode::InvalidArgument, "sampled curves need at least 8 samples");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "sample parameters must be strictly increasing");

    Curve c;
    c.label_ = "samples";
    c.t0_ = t.front();
    c.t1_ = t.back();
    c.grid_n_ = std::max<int>(static_cast<int>(t.size()), kMinSamples);
    c.sampled_ = true;
    c.nodes_ = t;

    auto nodes = std::make_shared<std::vector<double>>(std::move(t));
    auto vals = std::make_shared<std::vector<Vec3>>(std::move(points));
    c.jet_ = [nodes, vals](double tq) {
        const auto& x = *nodes;
        const int n = static_cast<int>(x.size());
        const int width = std::min(7, n);
        // contiguous stencil centered on the containing interval
        int hi = static_cast<int>(std::upper_bound(x.begin(), x.end(), tq) - x.begin());
        int lo = std::clamp(hi - (width + 1) / 2, 0, n - width);
        std::vector<double> xs(x.begin() + lo, x.begin() + lo + width);
        const Eigen::MatrixXd w = fd_weights(tq, xs, 3);
        Jet3 jet{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
        for (int k = 0; k <= 3; ++k)
            for (int j = 0; j < width; ++j) jet[k] += w(k, j) * (*vals)[lo + j];
        return jet;
    };
    return c;
}

Jet3 Curve::jet(double t) const {
    const double slack = 1e-9 * (1.0 + std::abs(t1_ - t0_));
    if (t < t0_ - slack || t > t1_ + slack)
        throw Error(ErrorCode::OutOfDomain, "parameter outside the curve domain");
    return jet_(t);
}

Vec3 Curve::eval(double t, int order) const {
    if (order < 0 || order > 3)
        throw Error(ErrorCode::InvalidArgument, "derivative order must be in 0..3");
    return jet(t)[order];
}

std::vector<double> Curve::grid_params() const {
    if (sampled_) return nodes_;
    std::vector<double> g(grid_n_);
    for (int i = 0; i < grid_n_; ++i)
        g[i] = t0_ + (t1_ - t0_) * static_cast<double>(i) / (grid_n_ - 1);
    return g;
}

void Curve::check_regular() const {
    for (double t : grid_params()) {
        if (jet(t)[1].norm() <= kRegularityTol)
            throw Error(ErrorCode::DegenerateCurve,
                        "velocity vanishes near t = " + std::to_string(t));
    }
}

// ---------------------------------------------------------------------------
// causal profiling
// ---------------------------------------------------------------------------

CausalCharacter profile_causal(const Curve& curve, const MetricField& metric) {
    curve.check_regular();
    const auto grid = curve.grid_params();
    CausalCharacter common{};
    bool first = true;
    std::vector<double> flips;
    double prev_t = 0;
    for (double t : grid) {
        const Jet3 jet = curve.jet(t);
        const CausalCharacter c = metric.at(jet[0]).classify_vector(jet[1]);
        if (first) {
            common = c;
            first = false;
        } else if (c != common) {
            flips.push_back(0.5 * (prev_t + t));
        }
        prev_t = t;
    }
    if (!flips.empty()) {
        std::ostringstream msg;
        msg << "causal character changes near t =";
        for (std::size_t i = 0; i < std::min<std::size_t>(flips.size(), 8); ++i)
            msg << " " << flips[i];
        if (flips.size() > 8) msg << " ...";
        throw Error(ErrorCode::MixedCausalCharacter, msg.str());
    }
    return common;
}

CausalCharacter profile_causal(const Curve& curve, const PseudoMetric& metric) {
    return profile_causal(curve, ConstantMetricField(metric));
}

// ---------------------------------------------------------------------------
// reparametrization
// ---------------------------------------------------------------------------

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

ParamCurve reparametrize(const Curve& curve, std::shared_ptr<const MetricField> metric,
                         const ReparamOptions& opts) {
    if (!metric) throw Error(ErrorCode::InvalidArgument, "null metric field");
    const CausalCharacter causal = profile_causal(curve, *metric);

    ParamCurve pc(curve);
    pc.metric_ = metric;
    pc.causal_ = causal;

    const int grid_n = std::max(opts.grid_n > 0 ? opts.grid_n : curve.grid_size(), kMinSamples);

    if (opts.raw) {
        pc.kind_ = ParamKind::Raw;
        pc.deriv_order_ = 1;
        pc.sign_q_ = causal == CausalCharacter::Spacelike  ? 1.0
                     : causal == CausalCharacter::Timelike ? -1.0
                                                           : 0.0;
        pc.total_ = curve.t_max() - curve.t_min();
        pc.s_grid_.resize(grid_n);
        for (int i = 0; i < grid_n; ++i)
            pc.s_grid_[i] = pc.total_ * static_cast<double>(i) / (grid_n - 1);
        return pc;
    }

    if (causal == CausalCharacter::Lightlike) {
        if (!metric->constant())
            throw Error(ErrorCode::InvalidArgument,
                        "pseudo arc-length needs a constant metric; lightlike directions in "
                        "position-dependent metrics are rejected upstream");
        pc.kind_ = ParamKind::PseudoArcLength;
        pc.deriv_order_ = 2;
        pc.sign_q_ = 0.0;
        // (alpha'', alpha'') must stay away from zero, otherwise the curve is a
        // straight line and no pseudo arc-length exists.
        for (double t : curve.grid_params()) {
            const Jet3 jet = curve.jet(t);
            const Mat3 g = metric->at(jet[0]).matrix();
            const double q = jet[2].dot(g * jet[2]);
            if (q <= kDefaultCausalTol * jet[2].squaredNorm())
                throw Error(ErrorCode::StraightLight,
                            "acceleration is proportional to the velocity near t = " +
                                std::to_string(t) + "; lightlike straight line");
        }
    } else {
        pc.kind_ = ParamKind::ArcLength;
        pc.deriv_order_ = 1;
        pc.sign_q_ = causal == CausalCharacter::Spacelike ? 1.0 : -1.0;
    }

    const int d = pc.deriv_order_;
    const double root_power = d == 1 ? 0.5 : 0.25;
    auto sigma = [&](double t) {
        const Jet3 jet = curve.jet(t);
        const Mat3 g = metric->matrix_at(jet[0]);
        const double q = jet[d].dot(g * jet[d]);
        return std::pow(std::abs(q), root_power);
    };

    // Dense monotone table s(t) for inversion.
    const int dense_n = std::max(opts.dense_n, 4 * grid_n);
    pc.dense_t_.resize(dense_n + 1);
    pc.dense_s_.resize(dense_n + 1);
    pc.dense_sigma_.resize(dense_n + 1);
    const double t0 = curve.t_min(), t1 = curve.t_max();
    for (int i = 0; i <= dense_n; ++i) {
        pc.dense_t_[i] = t0 + (t1 - t0) * static_cast<double>(i) / dense_n;
        pc.dense_sigma_[i] = sigma(pc.dense_t_[i]);
    }
    pc.dense_s_[0] = 0.0;
    const double tol_per = opts.quad_tol / dense_n;
    for (int i = 1; i <= dense_n; ++i) {
        pc.dense_s_[i] = pc.dense_s_[i - 1] +
                         integrate(sigma, pc.dense_t_[i - 1], pc.dense_t_[i], tol_per);
        if (!(pc.dense_s_[i] > pc.dense_s_[i - 1]))
            throw Error(ErrorCode::DegenerateCurve,
                        "parametrization speed vanishes near t = " + std::to_string(pc.dense_t_[i]));
    }
    pc.total_ = pc.dense_s_.back();

    pc.s_grid_.resize(grid_n);
    for (int i = 0; i < grid_n; ++i)
        pc.s_grid_[i] = pc.total_ * static_cast<double>(i) / (grid_n - 1);
    return pc;
}

ParamCurve reparametrize(const Curve& curve, const PseudoMetric& metric,
                         const ReparamOptions& opts) {
    return reparametrize(curve, std::make_shared<ConstantMetricField>(metric), opts);
}

double ParamCurve::param_of(double s) const {
    if (kind_ == ParamKind::Raw) return base_.t_min() + s;
    const double slack = 1e-9 * (1.0 + total_);
    if (s < -slack || s > total_ + slack)
        throw Error(ErrorCode::OutOfDomain, "arc-length parameter outside [0, S]");
    s = std::clamp(s, 0.0, total_);

    const auto it = std::upper_bound(dense_s_.begin(), dense_s_.end(), s);
    int j = std::clamp(static_cast<int>(it - dense_s_.begin()) - 1, 0,
                       static_cast<int>(dense_s_.size()) - 2);
    const double h = dense_s_[j + 1] - dense_s_[j];
    const double u = (s - dense_s_[j]) / h;
    // cubic Hermite of t(s); slopes are dt/ds = 1/sigma
    const double m0 = h / dense_sigma_[j], m1 = h / dense_sigma_[j + 1];
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * dense_t_[j] + (u3 - 2 * u2 + u) * m0 +
           (-2 * u3 + 3 * u2) * dense_t_[j + 1] + (u3 - u2) * m1;
}

Vec3 ParamCurve::point(double s) const { return base_.jet(param_of(s))[0]; }

Vec3 ParamCurve::derivative(double s, int order) const {
    if (order < 1 || order > 3)
        throw Error(ErrorCode::InvalidArgument, "derivative order must be in 1..3");
    if (kind_ == ParamKind::Raw) return base_.jet(param_of(s))[order];

    const double t = param_of(s);
    const Jet3 jet = base_.jet(t);
    const Vec3& p = jet[0];
    const Mat3 g = metric_->matrix_at(p);
    const int d = deriv_order_;
    const double sgn = d == 1 ? sign_q_ : 1.0;
    const double m = d == 1 ? 2.0 : 4.0;

    const double q = sgn * jet[d].dot(g * jet[d]);
    const double sig = std::pow(q, 1.0 / m);
    const double ts = 1.0 / sig;

    if (order == 1) return jet[1] * ts;

    const Mat3 gdot = metric_->directional_derivative(p, jet[1]);
    const double qdot = sgn * (2.0 * jet[d + 1].dot(g * jet[d]) + jet[d].dot(gdot * jet[d]));
    const double sigdot = sig * qdot / (m * q);
    const double tss = -sigdot / (sig * sig * sig);

    if (order == 2) return jet[2] * (ts * ts) + jet[1] * tss;

    if (d == 2) {
        // q'' would need the fourth base derivative; differentiate the exactly
        // computed second derivative through a five-point stencil instead.
        const double h = std::max(1e-5 * (1.0 + total_), 1e-7);
        const double c = std::clamp(s, 2 * h, total_ - 2 * h);
        std::vector<double> nodes = {c - 2 * h, c - h, c, c + h, c + 2 * h};
        const Eigen::MatrixXd w = fd_weights(s, nodes, 1);
        Vec3 out = Vec3::Zero();
        for (int j = 0; j < 5; ++j) out += w(1, j) * derivative(nodes[j], 2);
        return out;
    }

    const Mat3 gddot = metric_->second_directional_derivative(p, jet[1], jet[2]);
    const double qddot = sgn * (2.0 * jet[3].dot(g * jet[1]) + 2.0 * jet[2].dot(g * jet[2]) +
                                4.0 * jet[2].dot(gdot * jet[1]) + jet[1].dot(gddot * jet[1]));
    const double sigddot =
        sig * (qdot * qdot / (m * m * q * q) + qddot / (m * q) - qdot * qdot / (m * q * q));
    const double tsss = -sigddot / std::pow(sig, 4) + 3.0 * sigdot * sigdot / std::pow(sig, 5);
    return jet[3] * (ts * ts * ts) + 3.0 * jet[2] * (ts * tss) + jet[1] * tsss;
}

Curve ParamCurve::as_curve(int grid_n) const {
    const ParamCurve copy = *this;
    const int n = grid_n > 0 ? grid_n : static_cast<int>(s_grid_.size());
    return Curve::analytic(
        base_.label() + "|" + to_string(kind_),
        [copy](double s) {
            return Jet3{copy.point(s), copy.derivative(s, 1), copy.derivative(s, 2),
                        copy.derivative(s, 3)};
        },
        0.0, total_, n);
}

}  // namespace framekit
