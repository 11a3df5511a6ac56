#include "polyode/periodic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "polyode/errors.hpp"

namespace polyode {

PeriodicSystem::PeriodicSystem(PolynomialSystem base, double omega) : base_(std::move(base)), omega_(omega) {
    if (omega_ == 0.0) throw Error(ErrorKind::ZeroOmega, "omega must be nonzero");
    if (!std::isfinite(omega_)) throw Error(ErrorKind::InvalidArgument, "omega must be finite");
}

PeriodicSystem periodize(const PolynomialSystem& system, double omega) { return PeriodicSystem(system, omega); }

StateVector eval_periodic_rhs(const PeriodicSystem& psys, std::span<const Complex> w) {
    StateVector out = evaluate_rhs(psys.base(), w);
    const Complex rot{0.0, psys.rotation_rate()};
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += rot * w[n];
    return out;
}

std::vector<double> eval_periodic_rhs_real(const PeriodicSystem& psys, std::span<const double> xy) {
    const auto n = static_cast<std::size_t>(psys.dimension());
    if (xy.size() != 2 * n)
        throw Error(ErrorKind::DimensionMismatch, "real state must have 2N components");
    StateVector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = Complex{xy[2 * i], xy[2 * i + 1]};
    const StateVector z = evaluate_rhs(psys.base(), w);
    const double rate = psys.rotation_rate();
    std::vector<double> out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out[2 * i] = -rate * xy[2 * i + 1] + z[i].real();
        out[2 * i + 1] = rate * xy[2 * i] + z[i].imag();
    }
    return out;
}

double base_period(double omega) {
    if (omega == 0.0) throw Error(ErrorKind::ZeroOmega, "omega must be nonzero");
    return 2.0 * std::numbers::pi / std::abs(omega);
}

Complex complex_time(double omega, double t) {
    // exp(i a) - 1 = 2 i sin(a/2) exp(i a/2)
    const double half = 0.5 * omega * t;
    return (2.0 * std::sin(half) / omega) * Complex{std::cos(half), std::sin(half)};
}

PeriodicClosedForm::PeriodicClosedForm(const SolvableInstance& instance, double omega)
    : PeriodicClosedForm(instance.z0(), instance.k(), omega, instance.degree()) {}

PeriodicClosedForm::PeriodicClosedForm(StateVector z0, Complex k, double omega, int degree)
    : z0_(std::move(z0)), k_(k), omega_(omega), degree_(degree) {
    if (omega_ == 0.0) throw Error(ErrorKind::ZeroOmega, "omega must be nonzero");
    if (degree_ < 2) throw Error(ErrorKind::InvalidArgument, "degree M must be at least 2");
}

std::vector<double> unwrapped_bracket_phase(const PeriodicClosedForm& pcf, std::span<const double> t_grid) {
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw Error(ErrorKind::InvalidArgument, "time grid must start at 0");
    std::vector<double> phase(t_grid.size(), 0.0);
    Complex prev{1.0, 0.0};
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1]))
            throw Error(ErrorKind::InvalidArgument, "time grid must be strictly increasing");
        const Complex g = pcf.bracket(t_grid[i]);
        if (std::abs(g) < kBracketGuard)
            throw Error(ErrorKind::SingularBracket,
                        "bracket vanishes near t = " + std::to_string(t_grid[i]) + "; trajectory blows up");
        const double step = std::arg(g / prev);
        if (std::abs(step) > kMaxPhaseIncrement)
            throw Error(ErrorKind::GridTooCoarse, "bracket phase jumps by " + std::to_string(step) +
                                                      " near t = " + std::to_string(t_grid[i]));
        phase[i] = phase[i - 1] + step;
        prev = g;
    }
    return phase;
}

Trajectory eval_periodic_closed_form(const PeriodicClosedForm& pcf, std::span<const double> t_grid) {
    const std::vector<double> phase = unwrapped_bracket_phase(pcf, t_grid);
    const double p = 1.0 / (1.0 - pcf.degree());
    const double rate = pcf.omega() / (pcf.degree() - 1);

    Trajectory traj;
    traj.source = TrajectorySource::ClosedForm;
    traj.times.assign(t_grid.begin(), t_grid.end());
    traj.states.reserve(t_grid.size());
    traj.states.push_back(pcf.z0());
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        const Complex g = pcf.bracket(t);
        const Complex power = std::exp(p * Complex{std::log(std::abs(g)), phase[i]});
        const Complex rotation = std::exp(Complex{0.0, rate * t});
        traj.states.push_back(scale_state(pcf.z0(), rotation * power));
    }
    return traj;
}

int predicted_period_multiple(int degree, int winding, double omega) {
    const int d = degree - 1;
    const int sign = omega > 0.0 ? 1 : -1;
    const int residue = (((1 - winding * sign) % d) + d) % d;
    return d / std::gcd(d, residue);
}

PeriodReport detect_period(const PeriodicClosedForm& pcf, double tol, std::size_t samples_per_period) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "closure tolerance must be positive");
    if (samples_per_period < 8) throw Error(ErrorKind::InvalidArgument, "too few samples per period");

    const int max_multiple = pcf.degree() - 1;
    const double tb = base_period(pcf.omega());
    const auto per = samples_per_period;
    const std::vector<double> grid = uniform_grid(tb * max_multiple, per * static_cast<std::size_t>(max_multiple));
    const std::vector<double> phase = unwrapped_bracket_phase(pcf, grid);

    const double turns = phase[per] / (2.0 * std::numbers::pi);
    PeriodReport report;
    report.q = static_cast<int>(std::lround(turns));
    if (std::abs(turns - report.q) > 1e-6)
        throw Error(ErrorKind::GridTooCoarse, "bracket winding is not an integer: " + std::to_string(turns));

    const Trajectory traj = eval_periodic_closed_form(pcf, grid);
    auto closure = [&](int j) {
        const StateVector& s = traj.states[per * static_cast<std::size_t>(j)];
        double err = 0.0;
        for (std::size_t n = 0; n < s.size(); ++n) err = std::max(err, std::abs(s[n] - pcf.z0()[n]));
        return err;
    };

    if (max_modulus(pcf.z0()) == 0.0) {
        // Identically zero trajectory closes after every base period.
        report.k = 1;
        report.period = tb;
        report.closure_error = 0.0;
        return report;
    }

    report.k = predicted_period_multiple(pcf.degree(), report.q, pcf.omega());
    report.period = report.k * tb;
    report.closure_error = closure(report.k);
    if (!(report.closure_error <= tol))
        throw Error(ErrorKind::NotClosed, "closure error " + std::to_string(report.closure_error) + " at k = " +
                                              std::to_string(report.k));
    for (int j = 1; j < report.k; ++j)
        if (closure(j) <= tol)
            throw Error(ErrorKind::NotClosed, "trajectory already closes at k = " + std::to_string(j) +
                                                  ", predicted " + std::to_string(report.k));
    return report;
}

}  // namespace polyode
