#pragma once

#include <string>

#include <json.hpp>

#include "framekit/characterize.hpp"
#include "framekit/level_surface.hpp"

namespace framekit {

using Json = nlohmann::ordered_json;

// ---- parsing --------------------------------------------------------------

/// "euclidean", "minkowski", or a row-major array of 9 numbers.
PseudoMetric parse_metric(const Json& spec, double causal_tol = kDefaultCausalTol);
Json metric_to_json(const PseudoMetric& m);

/// {"family": ..., "params": {...}, "domain": [a, b], "n_samples": N}
/// or {"samples": [[t, x, y, z], ...]}. The polynomial family takes its
/// coefficient lists in params as {"x": [...], "y": [...], "z": [...]}.
Curve parse_curve(const Json& spec);

/// CSV table t,x,y,z (header optional).
Curve parse_curve_csv(const std::string& text);

/// Polynomial field: a list of {"powers": [i, j, k], "coeff": c}, or an
/// object {"terms": [...]} carrying the same list.
ScalarField parse_field(const Json& spec);
Mat3 parse_matrix3(const Json& spec);

Json load_json_file(const std::string& path);
std::string load_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// ---- frame field CSV / JSON -------------------------------------------------

std::string frame_to_csv(const FrameField& ff);

struct FrameTable {
    FrameKind kind{};
    std::vector<double> s;
    std::vector<Vec3> e0, e1, e2;
    std::vector<double> c1, c2, c3;
};

FrameTable frame_from_csv(const std::string& text);

Json frame_to_json(const FrameField& ff);

// ---- reports ----------------------------------------------------------------

std::string development_to_csv(const NormalDevelopment& nd);
Json membership_to_json(const MembershipReport& rep);
Json line_fit_to_json(const LineFit& lf);
Json level_report_to_json(const LevelResidualReport& rep);
std::string level_report_to_csv(const LevelResidualReport& rep);

/// Self-contained scatter plot of the development with the fitted line and,
/// on Lorentzian normal planes, the constant-curvature reference conics.
std::string development_svg(const NormalDevelopment& nd, const LineFit& lf);

}  // namespace framekit
