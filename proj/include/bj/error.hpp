#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace bj {

enum class ErrorCode {
    // data errors
    NonPositiveValue,
    SeriesTooShort,
    StateMismatch,
    DegenerateSplit,
    MissingYear,
    ParseError,
    IoError,
    LengthMismatch,
    ZeroActual,
    // modeling errors
    LagOutOfRange,
    ZeroVariance,
    NumericalBreakdown,
    InvalidAlpha,
    SingularDesign,
    UnsupportedKind,
    NonFiniteLikelihood,
    InvalidParams,
    TooFewObservations,
    OptimizerFailed,
    HessianSingular,
    EmptyGrid,
    TooFewResiduals,
    InvalidDof,
    NotConverged,
    InvalidConfidence,
    InvalidConfig,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// True for failures caused by the input data rather than the model.
[[nodiscard]] bool is_data_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// An Error raised inside the pipeline, tagged with the stage that failed.
class StageError : public Error {
public:
    StageError(std::string stage, const Error& cause)
        : Error(cause.code(), "[" + stage + "] " + cause.what()), stage_(std::move(stage)) {}

    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace bj
