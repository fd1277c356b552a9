#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "framekit/pseudo_metric.hpp"

namespace framekit {

// Position and first three parameter derivatives at one point.
using Jet3 = std::array<Vec3, 4>;

inline constexpr int kDefaultGrid = 1024;
inline constexpr int kMinSamples = 8;
inline constexpr double kRegularityTol = 1e-9;

/// Parametric curve with derivative access. Analytic curves carry exact
/// derivatives to order 3; sampled curves interpolate a table with local
/// polynomial stencils (Fornberg weights, 7-point window).
class Curve {
public:
    using JetFn = std::function<Jet3(double)>;

    static Curve analytic(std::string label, JetFn jet, double t0, double t1,
                          int grid_n = kDefaultGrid);

    // Built-in analytic families; see family_names() for the catalogue.
    static Curve family(const std::string& name, const std::map<std::string, double>& params,
                        double t0, double t1, int grid_n = kDefaultGrid);

    // Component-wise polynomial in t, coefficients in ascending degree.
    static Curve polynomial(std::vector<double> cx, std::vector<double> cy, std::vector<double> cz,
                            double t0, double t1, int grid_n = kDefaultGrid);

    static Curve from_samples(std::vector<double> t, std::vector<Vec3> points);

    static const std::vector<std::string>& family_names();

    Jet3 jet(double t) const;
    Vec3 eval(double t, int order = 0) const;

    double t_min() const { return t0_; }
    double t_max() const { return t1_; }
    int grid_size() const { return grid_n_; }
    bool sampled() const { return sampled_; }
    const std::string& label() const { return label_; }

    // Parameter grid used for profiling and validation: uniform for analytic
    // curves, the sample nodes for tables.
    std::vector<double> grid_params() const;

    // Throws DegenerateCurve if the velocity vanishes anywhere on the grid.
    void check_regular() const;

private:
    Curve() = default;

    std::string label_;
    JetFn jet_;
    double t0_ = 0, t1_ = 1;
    int grid_n_ = kDefaultGrid;
    bool sampled_ = false;
    std::vector<double> nodes_;  // sampled curves only
};

enum class ParamKind { ArcLength, PseudoArcLength, Raw };

const char* to_string(ParamKind k);

struct ReparamOptions {
    int grid_n = 0;        // 0: inherit from the curve
    bool raw = false;      // keep the original parameter (explicit request only)
    double quad_tol = 1e-10;
    int dense_n = 4096;    // resolution of the s <-> t inversion table
};

/// Curve carrying an arc-length / pseudo arc-length parametrization with a
/// fixed causal character. Evaluation composes the base curve with the
/// monotone parameter map; chain-rule derivatives are exact wherever the
/// base jet is.
class ParamCurve {
public:
    Vec3 point(double s) const;
    Vec3 derivative(double s, int order) const;  // order in {1, 2, 3}

    double s_min() const { return 0.0; }
    double s_max() const { return total_; }
    const std::vector<double>& grid() const { return s_grid_; }
    double grid_step() const { return s_grid_.size() > 1 ? s_grid_[1] - s_grid_[0] : 0.0; }

    ParamKind kind() const { return kind_; }
    CausalCharacter causal() const { return causal_; }
    double sign_q() const { return sign_q_; }  // sign of (beta', beta'); 0 when lightlike

    const MetricField& metric() const { return *metric_; }
    std::shared_ptr<const MetricField> metric_ptr() const { return metric_; }
    const Curve& base() const { return base_; }

    double param_of(double s) const;  // t(s)

    // Wrap as a Curve so it can be re-reparametrized or profiled.
    Curve as_curve(int grid_n = 0) const;

private:
    friend ParamCurve reparametrize(const Curve&, std::shared_ptr<const MetricField>,
                                    const ReparamOptions&);

    explicit ParamCurve(Curve base) : base_(std::move(base)) {}

    Curve base_;
    std::shared_ptr<const MetricField> metric_;
    ParamKind kind_ = ParamKind::ArcLength;
    CausalCharacter causal_ = CausalCharacter::Spacelike;
    double sign_q_ = 1.0;
    int deriv_order_ = 1;  // which base derivative enters the speed (1 or 2)
    double total_ = 0.0;
    std::vector<double> s_grid_;
    std::vector<double> dense_t_, dense_s_, dense_sigma_;
};

/// Common causal character of the velocity along the evaluation grid.
/// Mixed characters are a hard error listing the flip locations.
CausalCharacter profile_causal(const Curve& curve, const MetricField& metric);
CausalCharacter profile_causal(const Curve& curve, const PseudoMetric& metric);

ParamCurve reparametrize(const Curve& curve, std::shared_ptr<const MetricField> metric,
                         const ReparamOptions& opts = {});
ParamCurve reparametrize(const Curve& curve, const PseudoMetric& metric,
                         const ReparamOptions& opts = {});

}  // namespace framekit
