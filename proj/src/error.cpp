#include "bj/error.hpp"

namespace bj {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveValue: return "NonPositiveValue";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::StateMismatch: return "StateMismatch";
        case ErrorCode::DegenerateSplit: return "DegenerateSplit";
        case ErrorCode::MissingYear: return "MissingYear";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::ZeroActual: return "ZeroActual";
        case ErrorCode::LagOutOfRange: return "LagOutOfRange";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
        case ErrorCode::InvalidAlpha: return "InvalidAlpha";
        case ErrorCode::SingularDesign: return "SingularDesign";
        case ErrorCode::UnsupportedKind: return "UnsupportedKind";
        case ErrorCode::NonFiniteLikelihood: return "NonFiniteLikelihood";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::TooFewObservations: return "TooFewObservations";
        case ErrorCode::OptimizerFailed: return "OptimizerFailed";
        case ErrorCode::HessianSingular: return "HessianSingular";
        case ErrorCode::EmptyGrid: return "EmptyGrid";
        case ErrorCode::TooFewResiduals: return "TooFewResiduals";
        case ErrorCode::InvalidDof: return "InvalidDof";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::InvalidConfidence: return "InvalidConfidence";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

bool is_data_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveValue:
        case ErrorCode::SeriesTooShort:
        case ErrorCode::StateMismatch:
        case ErrorCode::DegenerateSplit:
        case ErrorCode::MissingYear:
        case ErrorCode::ParseError:
        case ErrorCode::IoError:
        case ErrorCode::LengthMismatch:
        case ErrorCode::ZeroActual:
        case ErrorCode::InvalidConfig:
            return true;
        default:
            return false;
    }
}

}  // namespace bj
