#pragma once

#include <span>
#include <vector>

#include "polyode/constraints.hpp"
#include "polyode/trajectory.hpp"

namespace polyode {

/// w_n' = i [omega/(M-1)] w_n + sum_m c_{n,m} w^m, the autonomous system
/// obtained from the base system by the substitution
///   w_n(t) = exp(i omega t/(M-1)) z_n(tau),  tau = (exp(i omega t) - 1)/(i omega).
class PeriodicSystem {
public:
    /// Throws ZeroOmega when omega == 0.
    PeriodicSystem(PolynomialSystem base, double omega);

    const PolynomialSystem& base() const noexcept { return base_; }
    double omega() const noexcept { return omega_; }
    int dimension() const noexcept { return base_.dimension(); }
    /// omega / (M - 1), the frequency of the linear rotation term.
    double rotation_rate() const noexcept { return omega_ / (base_.degree() - 1); }

private:
    PolynomialSystem base_;
    double omega_;
};

PeriodicSystem periodize(const PolynomialSystem& system, double omega);

/// Complex form i [omega/(M-1)] w + evaluate_rhs(base, w).
StateVector eval_periodic_rhs(const PeriodicSystem& psys, std::span<const Complex> w);

/// Real form on (x_1, y_1, ..., x_N, y_N):
///   x_n' = -[omega/(M-1)] y_n + Re Z_n,  y_n' = [omega/(M-1)] x_n + Im Z_n.
std::vector<double> eval_periodic_rhs_real(const PeriodicSystem& psys, std::span<const double> xy);

/// Base period 2 pi / |omega|.
double base_period(double omega);

/// tau(t) = (exp(i omega t) - 1)/(i omega), evaluated without cancellation for small omega t.
Complex complex_time(double omega, double t);

/// Closed-form trajectory of the periodic system on the constrained family:
///   zeta_n(t) = z_n(0) exp(i omega t/(M-1)) g(t)^(1/(1-M)),  g(t) = 1 + K tau(t),
/// with the power taken on the branch continued along t.
class PeriodicClosedForm {
public:
    PeriodicClosedForm(const SolvableInstance& instance, double omega);
    /// Unchecked parts, for control runs.
    PeriodicClosedForm(StateVector z0, Complex k, double omega, int degree);

    const StateVector& z0() const noexcept { return z0_; }
    Complex k() const noexcept { return k_; }
    double omega() const noexcept { return omega_; }
    int degree() const noexcept { return degree_; }

    Complex bracket(double t) const { return 1.0 + k_ * complex_time(omega_, t); }

private:
    StateVector z0_;
    Complex k_;
    double omega_;
    int degree_;
};

inline constexpr double kBracketGuard = 1e-10;
inline constexpr double kMaxPhaseIncrement = 0.78539816339744830962;  // pi/4
inline constexpr std::size_t kSamplesPerPeriod = 4096;
inline constexpr double kClosureTolerance = 1e-8;

/// Cumulative argument of g along the grid, increments in (-pi, pi].
/// Throws SingularBracket or GridTooCoarse.
std::vector<double> unwrapped_bracket_phase(const PeriodicClosedForm& pcf, std::span<const double> t_grid);

/// Grid must start at 0 and increase strictly.
Trajectory eval_periodic_closed_form(const PeriodicClosedForm& pcf, std::span<const double> t_grid);

/// Smallest k >= 1 with k (sgn(omega) - q) divisible by (M - 1).
int predicted_period_multiple(int degree, int winding, double omega);

struct PeriodReport {
    int q = 0;
    int k = 0;
    double period = 0.0;
    double closure_error = 0.0;
};

/// Winding q of g over one base period, predicted multiple k, confirmed by
/// evaluating the trajectory at integer multiples of the base period.
/// Throws NotClosed when the numeric check disagrees with the prediction.
PeriodReport detect_period(const PeriodicClosedForm& pcf, double tol = kClosureTolerance,
                           std::size_t samples_per_period = kSamplesPerPeriod);

}  // namespace polyode
