#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "framekit/curves.hpp"

namespace framekit {

enum class FrameKind { Frenet, Bishop, Null };
const char* to_string(FrameKind k);

// Which Frenet construction applied, by the causal characters of t and t'.
enum class FrenetCase { Generic, LightlikeNormal, LightlikeTangent };

/// Discrete field of frame triads and motion coefficients along a curve.
///
/// Coefficient meaning by kind:
///   Frenet : c1 = curvature, c2 = (pseudo-)torsion
///   Bishop : c1, c2 = Bishop curvatures (kappa_1, kappa_2)
///   Null   : c1, c2, c3 = kappa_1, kappa_2, kappa_3
struct FrameField {
    FrameKind kind{};
    CausalCharacter causal{};
    FrenetCase frenet_case = FrenetCase::Generic;

    std::vector<double> s;
    std::vector<Vec3> e0, e1, e2;
    std::vector<double> c1, c2, c3;

    double eps = 1.0;   // (e0, e0); 0 along lightlike curves
    double eps1 = 1.0;  // (e1, e1); 0 when e1 is lightlike
    Mat3 gram = Mat3::Identity();  // prescribed [(e_i, e_j)]

    bool straight_line = false;
    std::shared_ptr<const ParamCurve> pc;

    std::size_t size() const { return s.size(); }
    const MetricField& metric() const { return pc->metric(); }

    // Measured Gram matrix of the triad at grid node i.
    Mat3 gram_at(std::size_t i) const;
};

struct BishopGauge {
    // Normal leg at s = 0. Must be metric-orthogonal to the tangent and of the
    // causal type the normal plane requires; defaults to a deterministic
    // choice built from the canonical basis.
    std::optional<Vec3> initial_normal;
};

enum class NullGaugeMode {
    Transverse,    // z1 from the tangent's metric image; independent of t'
    Acceleration,  // z1 = t' (pseudo arc-length makes it unit)
};

/// Frenet frame; dispatches on the causal characters of t and t'.
FrameField frenet(const ParamCurve& pc);

/// Relatively parallel (Bishop) frame along a spacelike or timelike curve.
FrameField bishop(const ParamCurve& pc, const BishopGauge& gauge = {});

/// Null frame {t, z1, z2} along a lightlike curve.
FrameField null_frame(const ParamCurve& pc, NullGaugeMode mode = NullGaugeMode::Transverse);

/// Constant rotation of the normal legs: circular on spacelike normal planes,
/// hyperbolic on timelike ones.
FrameField regauge(const FrameField& ff, double angle);

/// Integral of the Frenet torsion over the domain (trapezoid on the grid).
double holonomy(const FrameField& ff);

/// Frenet torsion sampled at the given arc-length values (generic case only).
std::vector<double> frenet_torsion(const ParamCurve& pc, const std::vector<double>& s);

}  // namespace framekit
