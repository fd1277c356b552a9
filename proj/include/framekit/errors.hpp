#pragma once

#include <stdexcept>
#include <string>

namespace framekit {

// Machine-readable failure codes; the CLI maps these onto exit statuses.
enum class ErrorCode {
    ZeroVector,
    DependentVectors,
    DegenerateMetric,
    MixedCausalCharacter,
    DegenerateCurve,
    StraightLight,
    OutOfDomain,
    VanishingCurvature,
    LightlikeCurve,
    BadGauge,
    NotBishopFrame,
    NotNullFrame,
    NoLightlikeTangent,
    DegenerateHessian,
    MixedIndex,
    AsymptoticDirection,
    CriticalPoint,
    NonTangent,
    InvalidArgument,
    IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace framekit
