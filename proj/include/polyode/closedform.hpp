#pragma once

#include <optional>
#include <span>

#include "polyode/constraints.hpp"
#include "polyode/trajectory.hpp"

namespace polyode {

/// Guard on |1 + K t| below which evaluation is refused.
inline constexpr double kSingularGuard = 1e-12;

/// z_n(t) = z_n(0) (1 + K t)^(1/(1-M)), valid on the constrained family.
class ClosedFormSolution {
public:
    explicit ClosedFormSolution(const SolvableInstance& instance);

    /// Unchecked parts; used for control runs on data that violates the constraints.
    ClosedFormSolution(StateVector z0, Complex k, int degree);

    const StateVector& z0() const noexcept { return z0_; }
    Complex k() const noexcept { return k_; }
    int degree() const noexcept { return degree_; }
    double exponent() const noexcept { return 1.0 / (1.0 - degree_); }

private:
    StateVector z0_;
    Complex k_;
    int degree_;
};

/// Positive real root of 1 + K t, present only for real negative K.
std::optional<double> blow_up_time(Complex k);
std::optional<double> blow_up_time(const ClosedFormSolution& sol);

/// Principal-branch evaluation. Throws NegativeTime for t < 0 and SingularTime
/// when |1 + K t| < kSingularGuard or t is within the guard of (or past) the blow-up time.
StateVector eval_closed_form(const ClosedFormSolution& sol, double t);

Trajectory sample_closed_form(const ClosedFormSolution& sol, std::span<const double> times);

}  // namespace polyode
