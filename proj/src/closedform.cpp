#include "polyode/closedform.hpp"

#include <cmath>

#include "polyode/errors.hpp"

namespace polyode {

std::vector<double> uniform_grid(double t_end, std::size_t intervals) {
    if (intervals == 0) throw Error(ErrorKind::InvalidArgument, "grid needs at least one interval");
    std::vector<double> grid(intervals + 1);
    for (std::size_t i = 0; i < intervals; ++i)
        grid[i] = t_end * static_cast<double>(i) / static_cast<double>(intervals);
    grid[intervals] = t_end;
    return grid;
}

ClosedFormSolution::ClosedFormSolution(const SolvableInstance& instance)
    : ClosedFormSolution(instance.z0(), instance.k(), instance.degree()) {}

ClosedFormSolution::ClosedFormSolution(StateVector z0, Complex k, int degree)
    : z0_(std::move(z0)), k_(k), degree_(degree) {
    if (degree_ < 2) throw Error(ErrorKind::InvalidArgument, "degree M must be at least 2");
}

std::optional<double> blow_up_time(Complex k) {
    if (std::abs(k.imag()) < 1e-14 && k.real() < 0.0) return -1.0 / k.real();
    return std::nullopt;
}

std::optional<double> blow_up_time(const ClosedFormSolution& sol) { return blow_up_time(sol.k()); }

StateVector eval_closed_form(const ClosedFormSolution& sol, double t) {
    if (t < 0.0) throw Error(ErrorKind::NegativeTime, "closed form is defined for t >= 0");
    if (t == 0.0) return sol.z0();

    const Complex bracket = 1.0 + sol.k() * t;
    if (std::abs(bracket) < kSingularGuard)
        throw Error(ErrorKind::SingularTime, "|1 + K t| below guard at t = " + std::to_string(t));
    if (auto t_star = blow_up_time(sol); t_star && t >= *t_star - kSingularGuard * std::max(1.0, *t_star))
        throw Error(ErrorKind::SingularTime, "t = " + std::to_string(t) + " at or beyond blow-up time " +
                                                 std::to_string(*t_star));

    const Complex factor = std::exp(sol.exponent() * std::log(bracket));
    return scale_state(sol.z0(), factor);
}

Trajectory sample_closed_form(const ClosedFormSolution& sol, std::span<const double> times) {
    Trajectory traj;
    traj.source = TrajectorySource::ClosedForm;
    traj.times.assign(times.begin(), times.end());
    traj.states.reserve(times.size());
    for (double t : times) traj.states.push_back(eval_closed_form(sol, t));
    return traj;
}

}  // namespace polyode
