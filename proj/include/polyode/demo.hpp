#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "polyode/constraints.hpp"
#include "polyode/oracle.hpp"
#include "polyode/periodic.hpp"

namespace polyode::demo {

inline constexpr std::uint64_t kDemoSeed = 1;
inline constexpr double kResidualLimit = 1e-10;
inline constexpr double kDeviationLimit = 1e-6;
inline constexpr double kExponentLimit = 1e-10;
inline constexpr std::size_t kDemoSamples = 64;
inline constexpr double kDemoOmega = 1.0;
inline constexpr double kSmallK = 0.1;

/// N = 2, M = 4 instance: eight seeded coefficients plus K and z0, two pure
/// monomial coefficients solved from the constraints.
struct Example1 {
    SolvableInstance instance;
    double residual = 0.0;
    /// max |log|z_n(t)/z_n(0)| + (1/3) log|1 + K t|| over the sample grid.
    double exponent_error = 0.0;
    VerificationReport verification;
    bool ok = false;
};

/// Example 1's construction with |K| <= 0.1, periodized with omega = 1.
struct Example2 {
    SolvableInstance instance;
    double omega = kDemoOmega;
    double residual = 0.0;
    VerificationReport verification;
    PeriodReport period;
    double integrated_closure = 0.0;
    bool ok = false;
};

/// Writes the demo artifacts into out_dir when given.
Example1 run_example1(const std::optional<std::filesystem::path>& out_dir = std::nullopt);
Example2 run_example2(const std::optional<std::filesystem::path>& out_dir = std::nullopt);

}  // namespace polyode::demo
