#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "polyode/closedform.hpp"
#include "polyode/constraints.hpp"
#include "polyode/periodic.hpp"
#include "polyode/trajectory.hpp"

namespace polyode {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 1e-3;
    std::size_t max_steps = 10'000'000;
    double min_step = 1e-12;

    /// Throws InvalidArgument unless every field is positive and rel_tol >= 1e-14.
    void validate() const;
};

/// Autonomous right-hand side on a real state: writes f(y) into dydt.
using RealRhs = std::function<void(std::span<const double> y, std::span<double> dydt)>;
using ComplexRhs = std::function<StateVector(std::span<const Complex> z)>;

struct RealSolution {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    StepStatistics meta;
};

/// Dormand-Prince 5(4) with max-norm error control
///   |err_i| <= abs_tol + rel_tol * max(|y_i|, |y_i_new|)
/// and the 4th-order continuous extension for output at the requested times.
/// Sample times must be nondecreasing in [0, t_end]; t_end = sample_times.back().
/// Throws StepUnderflow when the controller asks for a step below min_step
/// and MaxStepsExceeded after max_steps attempts.
RealSolution integrate_real(const RealRhs& rhs, std::span<const double> y0, std::span<const double> sample_times,
                            const IntegratorConfig& config);

/// Fixed-step classical RK4, used only as a cross-check of the adaptive pair.
std::vector<double> integrate_rk4(const RealRhs& rhs, std::span<const double> y0, double t_end, std::size_t steps);

/// Complex states are integrated as (Re z_1, Im z_1, ..., Re z_N, Im z_N).
Trajectory integrate(const ComplexRhs& rhs, std::span<const Complex> z0, std::span<const double> sample_times,
                     const IntegratorConfig& config);

/// Same, sampled on `samples` uniform points of [0, t_end].
Trajectory integrate(const ComplexRhs& rhs, std::span<const Complex> z0, double t_end, std::size_t samples,
                     const IntegratorConfig& config);

ComplexRhs base_rhs(const PolynomialSystem& system);
ComplexRhs periodic_rhs(const PeriodicSystem& psys);

/// max over samples and components of |a - b| / (1 + |b|).
double max_relative_deviation(const Trajectory& integrated, const Trajectory& reference);

struct VerificationReport {
    double max_deviation = 0.0;
    std::size_t samples = 0;
    double t_end = 0.0;
};

/// Integrates the base system from z0 and compares with the closed form at
/// `samples` uniform times in [0, t_end]. No constraint check is made, so this
/// also serves broken-constraint control runs.
VerificationReport verify_candidate(const PolynomialSystem& system, std::span<const Complex> z0, Complex k,
                                    double t_end, std::size_t samples, const IntegratorConfig& config = {});

VerificationReport verify_instance(const SolvableInstance& instance, double t_end, std::size_t samples,
                                   const IntegratorConfig& config = {});

/// Integrates the periodized system over `periods` base periods and compares
/// with the continued-branch closed form on `samples` uniform times.
VerificationReport verify_periodic(const SolvableInstance& instance, double omega, int periods,
                                   std::size_t samples, const IntegratorConfig& config = {});

/// max_n |w_n(periods * 2 pi/|omega|) - w_n(0)| from integration alone.
double integrated_closure(const SolvableInstance& instance, double omega, int periods,
                          const IntegratorConfig& config = {});

/// 0.8 * min(t*, 1), the verification window used throughout.
double default_window(Complex k);

}  // namespace polyode
