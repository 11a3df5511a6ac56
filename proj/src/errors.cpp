#include "polyode/errors.hpp"

namespace polyode {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::Parse: return "Parse";
        case ErrorKind::ConstraintViolation: return "ConstraintViolation";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::SingularJacobian: return "SingularJacobian";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::SingularTime: return "SingularTime";
        case ErrorKind::NegativeTime: return "NegativeTime";
        case ErrorKind::ZeroOmega: return "ZeroOmega";
        case ErrorKind::SingularBracket: return "SingularBracket";
        case ErrorKind::GridTooCoarse: return "GridTooCoarse";
        case ErrorKind::NotClosed: return "NotClosed";
        case ErrorKind::StepUnderflow: return "StepUnderflow";
        case ErrorKind::MaxStepsExceeded: return "MaxStepsExceeded";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SingularSystem:
        case ErrorKind::SingularJacobian:
        case ErrorKind::SingularTime:
        case ErrorKind::SingularBracket:
        case ErrorKind::StepUnderflow:
            return kExitSingularity;
        case ErrorKind::NoConvergence:
        case ErrorKind::NotClosed:
        case ErrorKind::MaxStepsExceeded:
        case ErrorKind::ConstraintViolation:
            return kExitTolerance;
        default:
            return kExitValidation;
    }
}

}  // namespace polyode
