#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "polyode/linalg.hpp"
#include "polyode/polysys.hpp"

namespace polyode {

/// Default bound on the scaled constraint residual of a SolvableInstance.
inline constexpr double kConstructionTolerance = 1e-10;

/// r_n = K z_n(0) - (1 - M) [evaluate_rhs(system, z0)]_n. The closed-form
/// solution exists exactly when every component vanishes.
StateVector constraint_residual(const PolynomialSystem& system, std::span<const Complex> z0, Complex k);

/// Largest modulus among the individual terms K z_n and (M-1) c z^m entering the residual.
double residual_term_scale(const PolynomialSystem& system, std::span<const Complex> z0, Complex k);

/// max_n |r_n| / max(1, residual_term_scale).
double scaled_residual(const PolynomialSystem& system, std::span<const Complex> z0, Complex k);

double max_modulus(std::span<const Complex> v);

/// A system together with initial data and rate K satisfying the constraints.
class SolvableInstance {
public:
    /// Throws ConstraintViolation when scaled_residual exceeds tolerance.
    SolvableInstance(PolynomialSystem system, StateVector z0, Complex k, double tolerance = kConstructionTolerance);

    const PolynomialSystem& system() const noexcept { return system_; }
    const StateVector& z0() const noexcept { return z0_; }
    Complex k() const noexcept { return k_; }
    int dimension() const noexcept { return system_.dimension(); }
    int degree() const noexcept { return system_.degree(); }
    double tolerance() const noexcept { return tolerance_; }

    StateVector residual() const { return constraint_residual(system_, z0_, k_); }

private:
    PolynomialSystem system_;
    StateVector z0_;
    Complex k_;
    double tolerance_;
};

struct CoefficientSlot {
    int eq;
    MultiIndex index;

    friend bool operator==(const CoefficientSlot&, const CoefficientSlot&) = default;
};

struct RateK {
    friend bool operator==(RateK, RateK) = default;
};

using UnknownSlot = std::variant<CoefficientSlot, RateK>;

/// The N quantities treated as unknowns by the linear strategy.
class UnknownSelection {
public:
    explicit UnknownSelection(std::vector<UnknownSlot> slots) : slots_(std::move(slots)) {}

    const std::vector<UnknownSlot>& slots() const noexcept { return slots_; }
    bool has_rate() const noexcept;

    /// Exactly N slots, at most one RateK, distinct coefficient slots valid for (N, M).
    void validate_for(const PolynomialSystem& system) const;

private:
    std::vector<UnknownSlot> slots_;
};

/// Constraints written as matrix * unknowns + constant = residual.
struct LinearConstraints {
    ComplexMatrix matrix;
    StateVector constant;
};

LinearConstraints assemble_linear_constraints(const PolynomialSystem& system, std::span<const Complex> z0,
                                              std::optional<Complex> k_given, const UnknownSelection& selection);

/// Writes values for the selected slots into a copy of (system, K).
std::pair<PolynomialSystem, Complex> apply_unknowns(const PolynomialSystem& system, std::optional<Complex> k_given,
                                                    const UnknownSelection& selection, std::span<const Complex> values);

/// Solves the constraints for the selected coefficients (and optionally K)
/// with z0 and the remaining data held fixed. Throws SingularSystem when the
/// selection leaves the linear system rank-deficient.
SolvableInstance solve_linear_selection(const PolynomialSystem& system, std::span<const Complex> z0,
                                        std::optional<Complex> k_given, const UnknownSelection& selection);

/// d r_n / d z_j = K delta_nj + (M - 1) sum_m c_{n,m} d(z^m)/dz_j.
ComplexMatrix jacobian(const PolynomialSystem& system, std::span<const Complex> z, Complex k);

struct NewtonResult {
    StateVector root;
    int iterations = 0;
    /// Max-modulus residual before the first step and after every accepted step.
    std::vector<double> residual_history;
};

inline constexpr int kMaxStepHalvings = 30;

/// Damped Newton iteration for initial data satisfying the constraints with
/// coefficients and K held fixed. Each step is halved until the max-modulus
/// residual decreases. Throws NoConvergence or SingularJacobian.
NewtonResult newton_solve_initial_data(const PolynomialSystem& system, Complex k, std::span<const Complex> guess,
                                       double tol, int max_iter);

}  // namespace polyode
