#include "polyode/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyode/errors.hpp"

namespace polyode {

void IntegratorConfig::validate() const {
    if (!(rel_tol >= 1e-14)) throw Error(ErrorKind::InvalidArgument, "rel_tol must be at least 1e-14");
    if (!(abs_tol > 0.0) || !(initial_step > 0.0) || !(min_step > 0.0) || max_steps == 0)
        throw Error(ErrorKind::InvalidArgument, "integrator tolerances and step limits must be positive");
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
// difference between the 5th- and 4th-order weights
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// continuous extension
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::vector<double> pack(std::span<const Complex> z) {
    std::vector<double> y(2 * z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        y[2 * i] = z[i].real();
        y[2 * i + 1] = z[i].imag();
    }
    return y;
}

StateVector unpack(std::span<const double> y) {
    StateVector z(y.size() / 2);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = Complex{y[2 * i], y[2 * i + 1]};
    return z;
}

RealRhs packed(const ComplexRhs& rhs) {
    return [rhs](std::span<const double> y, std::span<double> dydt) {
        const StateVector f = rhs(unpack(y));
        for (std::size_t i = 0; i < f.size(); ++i) {
            dydt[2 * i] = f[i].real();
            dydt[2 * i + 1] = f[i].imag();
        }
    };
}

}  // namespace

RealSolution integrate_real(const RealRhs& rhs, std::span<const double> y0, std::span<const double> sample_times,
                            const IntegratorConfig& config) {
    config.validate();
    if (sample_times.empty()) throw Error(ErrorKind::InvalidArgument, "at least one sample time is required");
    if (sample_times.front() < 0.0 || !std::is_sorted(sample_times.begin(), sample_times.end()))
        throw Error(ErrorKind::InvalidArgument, "sample times must be nondecreasing and nonnegative");

    const double t_end = sample_times.back();
    const std::size_t n = y0.size();

    RealSolution sol;
    sol.times.assign(sample_times.begin(), sample_times.end());
    sol.states.reserve(sample_times.size());
    sol.meta.min_step = std::numeric_limits<double>::infinity();

    std::vector<double> y(y0.begin(), y0.end());
    std::size_t next = 0;
    while (next < sample_times.size() && sample_times[next] == 0.0) {
        sol.states.push_back(y);
        ++next;
    }
    if (next == sample_times.size()) {
        sol.meta.min_step = 0.0;
        return sol;
    }

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y_new(n);
    std::vector<double> r1(n), r2(n), r3(n), r4(n), r5(n);
    rhs(y, k1);

    double t = 0.0;
    double h = std::min(config.initial_step, t_end);
    std::size_t attempts = 0;

    while (t < t_end) {
        if (++attempts > config.max_steps)
            throw Error(ErrorKind::MaxStepsExceeded, "step budget exhausted at t = " + std::to_string(t));
        bool last = false;
        if (t + h >= t_end) {
            h = t_end - t;
            last = true;
        }

        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(tmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        rhs(y_new, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double est = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = config.abs_tol + config.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err = std::max(err, std::abs(est) / scale);
        }
        if (!std::isfinite(err) || !all_finite(y_new) || !all_finite(k7)) err = std::numeric_limits<double>::infinity();

        double factor = err == 0.0 ? kMaxFactor : kSafety * std::pow(err, -0.2);
        factor = std::clamp(std::isfinite(factor) ? factor : kMinFactor, kMinFactor, kMaxFactor);

        if (err <= 1.0) {
            for (std::size_t i = 0; i < n; ++i) {
                const double diff = y_new[i] - y[i];
                const double bspl = h * k1[i] - diff;
                r1[i] = y[i];
                r2[i] = diff;
                r3[i] = bspl;
                r4[i] = diff - h * k7[i] - bspl;
                r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            const double t_new = last ? t_end : t + h;
            while (next < sample_times.size() && sample_times[next] <= t_new) {
                if (sample_times[next] == t_new) {
                    sol.states.push_back(y_new);
                } else {
                    const double theta = (sample_times[next] - t) / h;
                    const double theta1 = 1.0 - theta;
                    std::vector<double> out(n);
                    for (std::size_t i = 0; i < n; ++i)
                        out[i] = r1[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i])));
                    sol.states.push_back(std::move(out));
                }
                ++next;
            }
            ++sol.meta.accepted;
            sol.meta.min_step = std::min(sol.meta.min_step, h);
            t = t_new;
            y.swap(y_new);
            k1.swap(k7);
            h *= factor;
        } else {
            ++sol.meta.rejected;
            h *= std::min(factor, 1.0);
        }
        if (t < t_end && h < config.min_step)
            throw Error(ErrorKind::StepUnderflow, "step " + std::to_string(h) + " below minimum at t = " +
                                                      std::to_string(t) + "; solution likely blows up");
    }
    return sol;
}

std::vector<double> integrate_rk4(const RealRhs& rhs, std::span<const double> y0, double t_end, std::size_t steps) {
    if (steps == 0) throw Error(ErrorKind::InvalidArgument, "RK4 needs at least one step");
    const std::size_t n = y0.size();
    const double h = t_end / static_cast<double>(steps);
    std::vector<double> y(y0.begin(), y0.end()), k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (std::size_t s = 0; s < steps; ++s) {
        rhs(y, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
        rhs(tmp, k4);
        for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return y;
}

Trajectory integrate(const ComplexRhs& rhs, std::span<const Complex> z0, std::span<const double> sample_times,
                     const IntegratorConfig& config) {
    const std::vector<double> y0 = pack(z0);
    RealSolution real = integrate_real(packed(rhs), y0, sample_times, config);
    Trajectory traj;
    traj.source = TrajectorySource::Integrated;
    traj.times = std::move(real.times);
    traj.meta = real.meta;
    traj.states.reserve(real.states.size());
    for (const auto& s : real.states) traj.states.push_back(unpack(s));
    return traj;
}

Trajectory integrate(const ComplexRhs& rhs, std::span<const Complex> z0, double t_end, std::size_t samples,
                     const IntegratorConfig& config) {
    if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
    if (samples < 2) throw Error(ErrorKind::InvalidArgument, "at least two samples are required");
    const std::vector<double> grid = uniform_grid(t_end, samples - 1);
    return integrate(rhs, z0, grid, config);
}

ComplexRhs base_rhs(const PolynomialSystem& system) {
    return [system](std::span<const Complex> z) { return evaluate_rhs(system, z); };
}

ComplexRhs periodic_rhs(const PeriodicSystem& psys) {
    return [psys](std::span<const Complex> w) { return eval_periodic_rhs(psys, w); };
}

double max_relative_deviation(const Trajectory& integrated, const Trajectory& reference) {
    if (integrated.states.size() != reference.states.size())
        throw Error(ErrorKind::DimensionMismatch, "trajectories have different sample counts");
    double worst = 0.0;
    for (std::size_t s = 0; s < reference.states.size(); ++s) {
        const auto& a = integrated.states[s];
        const auto& b = reference.states[s];
        for (std::size_t n = 0; n < b.size(); ++n) worst = std::max(worst, std::abs(a[n] - b[n]) / (1.0 + std::abs(b[n])));
    }
    return worst;
}

double default_window(Complex k) {
    const auto t_star = blow_up_time(k);
    return 0.8 * std::min(t_star.value_or(1.0), 1.0);
}

VerificationReport verify_candidate(const PolynomialSystem& system, std::span<const Complex> z0, Complex k,
                                    double t_end, std::size_t samples, const IntegratorConfig& config) {
    require_dimension(z0, system.dimension(), "initial data");
    if (auto t_star = blow_up_time(k); t_star && t_end >= *t_star)
        throw Error(ErrorKind::SingularTime, "verification window reaches the blow-up time");
    const ClosedFormSolution sol(StateVector(z0.begin(), z0.end()), k, system.degree());
    const Trajectory integrated = integrate(base_rhs(system), z0, t_end, samples, config);
    const Trajectory exact = sample_closed_form(sol, integrated.times);
    return {max_relative_deviation(integrated, exact), samples, t_end};
}

VerificationReport verify_instance(const SolvableInstance& instance, double t_end, std::size_t samples,
                                   const IntegratorConfig& config) {
    return verify_candidate(instance.system(), instance.z0(), instance.k(), t_end, samples, config);
}

VerificationReport verify_periodic(const SolvableInstance& instance, double omega, int periods,
                                   std::size_t samples, const IntegratorConfig& config) {
    if (periods < 1) throw Error(ErrorKind::InvalidArgument, "periods must be at least 1");
    if (samples < 2) throw Error(ErrorKind::InvalidArgument, "at least two samples are required");
    const PeriodicSystem psys = periodize(instance.system(), omega);
    const PeriodicClosedForm pcf(instance, omega);
    const double t_end = periods * base_period(omega);

    // The closed form needs a fine grid for phase continuation; compare on a subset.
    const std::size_t intervals = samples - 1;
    const std::size_t wanted = kSamplesPerPeriod * static_cast<std::size_t>(periods);
    const std::size_t refine = (wanted + intervals - 1) / intervals;
    const std::vector<double> fine = uniform_grid(t_end, intervals * refine);
    const Trajectory fine_cf = eval_periodic_closed_form(pcf, fine);

    std::vector<double> coarse(samples);
    Trajectory exact;
    exact.source = TrajectorySource::ClosedForm;
    for (std::size_t i = 0; i < samples; ++i) {
        coarse[i] = fine[i * refine];
        exact.times.push_back(coarse[i]);
        exact.states.push_back(fine_cf.states[i * refine]);
    }
    const Trajectory integrated = integrate(periodic_rhs(psys), instance.z0(), coarse, config);
    return {max_relative_deviation(integrated, exact), samples, t_end};
}

double integrated_closure(const SolvableInstance& instance, double omega, int periods,
                          const IntegratorConfig& config) {
    if (periods < 1) throw Error(ErrorKind::InvalidArgument, "periods must be at least 1");
    const PeriodicSystem psys = periodize(instance.system(), omega);
    const std::vector<double> times{0.0, periods * base_period(omega)};
    const Trajectory traj = integrate(periodic_rhs(psys), instance.z0(), times, config);
    double err = 0.0;
    for (std::size_t n = 0; n < instance.z0().size(); ++n)
        err = std::max(err, std::abs(traj.states.back()[n] - instance.z0()[n]));
    return err;
}

}  // namespace polyode
