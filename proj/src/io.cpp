#include "framekit/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace framekit {

namespace {

std::string fmt_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

PseudoMetric parse_metric(const Json& spec, double causal_tol) {
    if (spec.is_string()) {
        const std::string name = spec.get<std::string>();
        if (name == "euclidean") return PseudoMetric::euclidean(causal_tol);
        if (name == "minkowski") return PseudoMetric::minkowski(causal_tol);
        throw Error(ErrorCode::InvalidArgument,
                    "metric must be 'euclidean', 'minkowski', or a 9-number array");
    }
    return PseudoMetric(parse_matrix3(spec), causal_tol);
}

Mat3 parse_matrix3(const Json& spec) {
    if (!spec.is_array() || spec.size() != 9)
        throw Error(ErrorCode::InvalidArgument, "matrix must be a row-major array of 9 numbers");
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = spec[3 * i + j].get<double>();
    return m;
}

Json metric_to_json(const PseudoMetric& m) {
    Json out = Json::array();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.push_back(m.matrix()(i, j));
    return out;
}

Curve parse_curve(const Json& spec) {
    if (!spec.is_object()) throw Error(ErrorCode::InvalidArgument, "curve spec must be an object");

    if (spec.contains("samples")) {
        std::vector<double> t;
        std::vector<Vec3> p;
        for (const auto& row : spec.at("samples")) {
            if (!row.is_array() || row.size() != 4)
                throw Error(ErrorCode::InvalidArgument, "samples rows must be [t, x, y, z]");
            t.push_back(row[0].get<double>());
            p.emplace_back(row[1].get<double>(), row[2].get<double>(), row[3].get<double>());
        }
        return Curve::from_samples(std::move(t), std::move(p));
    }

    const std::string family = spec.value("family", std::string());
    if (family.empty())
        throw Error(ErrorCode::InvalidArgument, "curve spec needs 'family' or 'samples'");
    if (!spec.contains("domain") || !spec.at("domain").is_array() || spec.at("domain").size() != 2)
        throw Error(ErrorCode::InvalidArgument, "curve spec needs 'domain': [a, b]");
    const double t0 = spec.at("domain")[0].get<double>();
    const double t1 = spec.at("domain")[1].get<double>();
    const int n = spec.value("n_samples", kDefaultGrid);

    if (family == "polynomial") {
        const auto& params = spec.at("params");
        auto coeffs = [&](const char* key) {
            std::vector<double> c;
            if (params.contains(key))
                for (const auto& v : params.at(key)) c.push_back(v.get<double>());
            if (c.empty()) c.push_back(0.0);
            return c;
        };
        return Curve::polynomial(coeffs("x"), coeffs("y"), coeffs("z"), t0, t1, n);
    }

    std::map<std::string, double> params;
    if (spec.contains("params"))
        for (const auto& [key, value] : spec.at("params").items())
            params[key] = value.get<double>();
    return Curve::family(family, params, t0, t1, n);
}

Curve parse_curve_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> t;
    std::vector<Vec3> p;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double a, x, y, z;
        if (!(row >> a >> x >> y >> z)) continue;  // skips a header line
        t.push_back(a);
        p.emplace_back(x, y, z);
    }
    if (t.empty()) throw Error(ErrorCode::IoError, "no sample rows found in CSV");
    return Curve::from_samples(std::move(t), std::move(p));
}

ScalarField parse_field(const Json& spec) {
    const Json* terms = &spec;
    if (spec.is_object()) {
        if (!spec.contains("terms"))
            throw Error(ErrorCode::InvalidArgument, "field spec needs a 'terms' list");
        terms = &spec.at("terms");
    }
    if (!terms->is_array() || terms->empty())
        throw Error(ErrorCode::InvalidArgument,
                    "field spec must be a list of {powers, coeff} terms");
    Polynomial3 poly;
    for (const auto& term : *terms) {
        const auto& pw = term.at("powers");
        if (!pw.is_array() || pw.size() != 3)
            throw Error(ErrorCode::InvalidArgument, "'powers' must be [i, j, k]");
        Polynomial3::Powers powers{pw[0].get<int>(), pw[1].get<int>(), pw[2].get<int>()};
        for (int v : powers)
            if (v < 0) throw Error(ErrorCode::InvalidArgument, "powers must be non-negative");
        poly = poly + Polynomial3::monomial(powers, term.at("coeff").get<double>());
    }
    return ScalarField::polynomial(std::move(poly));
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::InvalidArgument, "malformed JSON in " + path + ": " + e.what());
    }
}

std::string load_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path);
}

// ---------------------------------------------------------------------------
// frame field CSV / JSON
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> coefficient_names(FrameKind kind) {
    switch (kind) {
        case FrameKind::Frenet: return {"kappa", "tau"};
        case FrameKind::Bishop: return {"kappa1", "kappa2"};
        case FrameKind::Null: return {"kappa1", "kappa2", "kappa3"};
    }
    return {};
}

}  // namespace

std::string frame_to_csv(const FrameField& ff) {
    std::ostringstream out;
    out << "# frame_kind=" << to_string(ff.kind) << "\n";
    out << "s,e0x,e0y,e0z,e1x,e1y,e1z,e2x,e2y,e2z";
    for (const auto& name : coefficient_names(ff.kind)) out << "," << name;
    out << "\n";
    for (std::size_t i = 0; i < ff.size(); ++i) {
        out << fmt_full(ff.s[i]);
        for (const Vec3* e : {&ff.e0[i], &ff.e1[i], &ff.e2[i]})
            for (int k = 0; k < 3; ++k) out << "," << fmt_full((*e)[k]);
        out << "," << fmt_full(ff.c1[i]) << "," << fmt_full(ff.c2[i]);
        if (ff.kind == FrameKind::Null) out << "," << fmt_full(ff.c3[i]);
        out << "\n";
    }
    return out.str();
}

FrameTable frame_from_csv(const std::string& text) {
    FrameTable table;
    std::istringstream in(text);
    std::string line;
    bool kind_seen = false;
    while (std::getline(in, line)) {
        if (line.rfind("# frame_kind=", 0) == 0) {
            const std::string kind = line.substr(13);
            if (kind == "Frenet") table.kind = FrameKind::Frenet;
            else if (kind == "Bishop") table.kind = FrameKind::Bishop;
            else if (kind == "Null") table.kind = FrameKind::Null;
            else throw Error(ErrorCode::IoError, "unknown frame kind in CSV: " + kind);
            kind_seen = true;
            continue;
        }
        if (line.empty() || line[0] == '#' || line.rfind("s,", 0) == 0) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        std::vector<double> vals;
        double v;
        while (row >> v) vals.push_back(v);
        const std::size_t want = table.kind == FrameKind::Null ? 13 : 12;
        if (vals.size() != want)
            throw Error(ErrorCode::IoError, "frame CSV row has wrong column count");
        table.s.push_back(vals[0]);
        table.e0.emplace_back(vals[1], vals[2], vals[3]);
        table.e1.emplace_back(vals[4], vals[5], vals[6]);
        table.e2.emplace_back(vals[7], vals[8], vals[9]);
        table.c1.push_back(vals[10]);
        table.c2.push_back(vals[11]);
        table.c3.push_back(table.kind == FrameKind::Null ? vals[12] : 0.0);
    }
    if (!kind_seen) throw Error(ErrorCode::IoError, "frame CSV missing the frame_kind header");
    return table;
}

namespace {

Json vec_to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

}  // namespace

Json frame_to_json(const FrameField& ff) {
    Json out;
    out["kind"] = to_string(ff.kind);
    out["causal"] = to_string(ff.causal);
    out["eps"] = ff.eps;
    out["eps1"] = ff.eps1;
    out["straight_line"] = ff.straight_line;
    Json rows = Json::array();
    for (std::size_t i = 0; i < ff.size(); ++i) {
        Json row;
        row["s"] = ff.s[i];
        row["e0"] = vec_to_json(ff.e0[i]);
        row["e1"] = vec_to_json(ff.e1[i]);
        row["e2"] = vec_to_json(ff.e2[i]);
        const auto names = coefficient_names(ff.kind);
        row[names[0]] = ff.c1[i];
        row[names[1]] = ff.c2[i];
        if (names.size() > 2) row[names[2]] = ff.c3[i];
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    return out;
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

std::string development_to_csv(const NormalDevelopment& nd) {
    std::ostringstream out;
    out << "s,kappa1,kappa2\n";
    for (std::size_t i = 0; i < nd.points.size(); ++i)
        out << fmt_full(nd.s[i]) << "," << fmt_full(nd.points[i].x()) << ","
            << fmt_full(nd.points[i].y()) << "\n";
    return out.str();
}

Json line_fit_to_json(const LineFit& lf) {
    Json out;
    out["coefficients"] = Json::array({lf.c[0], lf.c[1], lf.c[2]});
    out["rms_residual"] = lf.rms;
    out["through_origin"] = lf.through_origin;
    out["degenerate_point"] = lf.degenerate_point;
    if (!lf.through_origin) {
        out["a1"] = lf.a1;
        out["a2"] = lf.a2;
        out["quad_form"] = lf.quad;
        if (lf.lorentz_distance)
            out["lorentz_distance"] = *lf.lorentz_distance;
        else
            out["lorentz_distance"] = "critical";
    }
    return out;
}

Json membership_to_json(const MembershipReport& rep) {
    Json out;
    out["verdict"] = to_string(rep.verdict);
    if (rep.center) out["center"] = vec_to_json(*rep.center);
    out["radius"] = rep.radius;
    out["residual"] = rep.residual;
    if (rep.plane_normal) out["plane_normal"] = vec_to_json(*rep.plane_normal);
    if (!rep.detail.empty()) out["detail"] = rep.detail;
    Json diag;
    for (const auto& [key, value] : rep.diagnostics) diag[key] = value;
    out["diagnostics"] = std::move(diag);
    return out;
}

Json level_report_to_json(const LevelResidualReport& rep) {
    Json out;
    out["criterion"] = rep.criterion;
    out["on_surface"] = rep.on_surface;
    out["max_residual"] = rep.max_residual;
    out["derivative_consistency"] = rep.deriv_consistency;
    out["anchor_tangency"] = rep.anchor_tangency;
    out["level_value"] = rep.level_value;
    out["level_spread"] = rep.level_spread;
    out["n_points"] = rep.s.size();
    return out;
}

std::string level_report_to_csv(const LevelResidualReport& rep) {
    std::ostringstream out;
    out << "s,a0,a1,a2,residual\n";
    for (std::size_t i = 0; i < rep.s.size(); ++i)
        out << fmt_full(rep.s[i]) << "," << fmt_full(rep.a0[i]) << "," << fmt_full(rep.a1[i])
            << "," << fmt_full(rep.a2[i]) << "," << fmt_full(rep.residual[i]) << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace {

struct SvgMapper {
    double xmin, xmax, ymin, ymax;
    double size = 640.0, margin = 50.0;

    double X(double x) const {
        return margin + (x - xmin) / (xmax - xmin) * (size - 2 * margin);
    }
    double Y(double y) const {
        return size - margin - (y - ymin) / (ymax - ymin) * (size - 2 * margin);
    }
    bool inside(double x, double y) const {
        return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
    }
};

void polyline(std::ostringstream& out, const SvgMapper& map,
              const std::vector<Vec2>& pts, const char* style) {
    bool open = false;
    std::ostringstream path;
    for (const auto& p : pts) {
        if (!map.inside(p.x(), p.y())) {
            open = false;
            continue;
        }
        path << (open ? " L " : " M ") << map.X(p.x()) << " " << map.Y(p.y());
        open = true;
    }
    const std::string d = path.str();
    if (!d.empty()) out << "<path d=\"" << d << "\" style=\"" << style << "\"/>\n";
}

}  // namespace

std::string development_svg(const NormalDevelopment& nd, const LineFit& lf) {
    SvgMapper map{};
    double ext = 1e-6;
    for (const auto& p : nd.points) ext = std::max({ext, std::abs(p.x()), std::abs(p.y())});
    ext *= 1.3;
    map.xmin = -ext;
    map.xmax = ext;
    map.ymin = -ext;
    map.ymax = ext;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << map.size << "\" height=\""
        << map.size << "\" viewBox=\"0 0 " << map.size << " " << map.size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes
    out << "<line x1=\"" << map.X(map.xmin) << "\" y1=\"" << map.Y(0) << "\" x2=\""
        << map.X(map.xmax) << "\" y2=\"" << map.Y(0)
        << "\" style=\"stroke:#bbb;stroke-width:1\"/>\n";
    out << "<line x1=\"" << map.X(0) << "\" y1=\"" << map.Y(map.ymin) << "\" x2=\"" << map.X(0)
        << "\" y2=\"" << map.Y(map.ymax) << "\" style=\"stroke:#bbb;stroke-width:1\"/>\n";

    // constant-curvature reference orbits
    double mean_q = 0.0;
    for (const auto& p : nd.points) mean_q += nd.eps1 * p.x() * p.x() + p.y() * p.y();
    mean_q /= static_cast<double>(nd.points.size());
    const int steps = 200;
    if (!nd.lorentzian_plane) {
        const double r = std::sqrt(std::max(mean_q, 0.0));
        std::vector<Vec2> circle;
        for (int i = 0; i <= steps; ++i) {
            const double a = 2.0 * M_PI * i / steps;
            circle.emplace_back(r * std::cos(a), r * std::sin(a));
        }
        polyline(out, map, circle, "fill:none;stroke:#7a9;stroke-width:1;stroke-dasharray:4 3");
    } else {
        // asymptotes X = +-Y and the hyperbola through the mean square radius
        polyline(out, map, {Vec2(-ext, -ext), Vec2(ext, ext)},
                 "fill:none;stroke:#999;stroke-width:1;stroke-dasharray:2 3");
        polyline(out, map, {Vec2(-ext, ext), Vec2(ext, -ext)},
                 "fill:none;stroke:#999;stroke-width:1;stroke-dasharray:2 3");
        const double k2 = std::abs(mean_q);
        if (k2 > 1e-12) {
            const double k = std::sqrt(k2);
            const double vmax = std::acosh(std::max(1.5, 2.0 * ext / k));
            for (int sx = -1; sx <= 1; sx += 2) {
                std::vector<Vec2> h1, h2;
                for (int i = 0; i <= steps; ++i) {
                    const double v = -vmax + 2.0 * vmax * i / steps;
                    // mean_q < 0: foci on X (timelike normal); else on Y
                    if (mean_q < 0)
                        h1.emplace_back(sx * k * std::cosh(v), k * std::sinh(v));
                    else
                        h1.emplace_back(k * std::sinh(v), sx * k * std::cosh(v));
                }
                polyline(out, map, h1,
                         "fill:none;stroke:#7a9;stroke-width:1;stroke-dasharray:4 3");
                (void)h2;
            }
        }
    }

    // fitted line
    {
        std::vector<Vec2> seg;
        const double c0 = lf.c[0], c1 = lf.c[1], c2 = lf.c[2];
        if (std::abs(c2) > std::abs(c1)) {
            for (int i = 0; i <= steps; ++i) {
                const double x = map.xmin + (map.xmax - map.xmin) * i / steps;
                seg.emplace_back(x, -(c0 + c1 * x) / c2);
            }
        } else {
            for (int i = 0; i <= steps; ++i) {
                const double y = map.ymin + (map.ymax - map.ymin) * i / steps;
                seg.emplace_back(-(c0 + c2 * y) / c1, y);
            }
        }
        polyline(out, map, seg, "fill:none;stroke:#36c;stroke-width:1.5");
    }

    for (const auto& p : nd.points)
        out << "<circle cx=\"" << map.X(p.x()) << "\" cy=\"" << map.Y(p.y())
            << "\" r=\"2\" fill=\"#c33\"/>\n";

    out << "<text x=\"" << map.size / 2 << "\" y=\"" << map.size - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << "normal development (kappa1, kappa2)</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace framekit
