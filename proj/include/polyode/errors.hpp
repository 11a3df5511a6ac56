#pragma once

#include <stdexcept>
#include <string>

namespace polyode {

enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    Parse,
    ConstraintViolation,
    SingularSystem,
    SingularJacobian,
    NoConvergence,
    SingularTime,
    NegativeTime,
    ZeroOmega,
    SingularBracket,
    GridTooCoarse,
    NotClosed,
    StepUnderflow,
    MaxStepsExceeded,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Process exit codes used by the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitTolerance = 2;
inline constexpr int kExitSingularity = 3;

int exit_code(ErrorKind kind);

}  // namespace polyode
