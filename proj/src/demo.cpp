#include "polyode/demo.hpp"

#include <cmath>

#include "polyode/closedform.hpp"
#include "polyode/generate.hpp"
#include "polyode/io.hpp"

namespace polyode::demo {

namespace {

double exponent_error(const SolvableInstance& instance, std::span<const double> times) {
    const ClosedFormSolution sol(instance);
    double worst = 0.0;
    for (double t : times) {
        if (t == 0.0) continue;
        const StateVector z = eval_closed_form(sol, t);
        const double expected = -std::log(std::abs(1.0 + instance.k() * t)) / 3.0;
        for (std::size_t n = 0; n < z.size(); ++n) {
            const double got = std::log(std::abs(z[n] / instance.z0()[n]));
            worst = std::max(worst, std::abs(got - expected));
        }
    }
    return worst;
}

}  // namespace

Example1 run_example1(const std::optional<std::filesystem::path>& out_dir) {
    SolvableInstance instance = generate_random_instance(2, 4, kDemoSeed);
    const double t_end = default_window(instance.k());
    const std::vector<double> grid = uniform_grid(t_end, kDemoSamples - 1);
    const Trajectory integrated = integrate(base_rhs(instance.system()), instance.z0(), grid, IntegratorConfig{});
    const Trajectory exact = sample_closed_form(ClosedFormSolution(instance), grid);

    Example1 result{instance, max_modulus(instance.residual()), exponent_error(instance, grid),
                    VerificationReport{max_relative_deviation(integrated, exact), kDemoSamples, t_end}, false};
    result.ok = result.residual < kResidualLimit && result.exponent_error < kExponentLimit &&
                result.verification.max_deviation < kDeviationLimit;

    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        io::write_system_file(*out_dir / "system.json", instance.system());
        io::write_instance_file(*out_dir / "instance.json", instance);
        io::write_text(*out_dir / "closed_form.csv", io::trajectory_csv(exact));
        io::write_text(*out_dir / "integrated.csv", io::trajectory_csv(integrated));
        io::write_text(*out_dir / "verification.json", io::report_to_json(result.verification).dump(2) + "\n");
    }
    return result;
}

Example2 run_example2(const std::optional<std::filesystem::path>& out_dir) {
    GeneratorOptions options;
    options.k_modulus_limit = kSmallK;
    SolvableInstance instance = generate_random_instance(2, 4, kDemoSeed, options);
    const PeriodicClosedForm pcf(instance, kDemoOmega);

    Example2 result{instance, kDemoOmega, max_modulus(instance.residual()), {}, {}, 0.0, false};
    result.verification = verify_periodic(instance, kDemoOmega, 1, kDemoSamples);
    result.period = detect_period(pcf);
    result.integrated_closure = integrated_closure(instance, kDemoOmega, result.period.k);
    result.ok = result.residual < kResidualLimit && result.verification.max_deviation < kDeviationLimit &&
                result.period.k == 3 && result.period.closure_error < kClosureTolerance &&
                result.integrated_closure < kDeviationLimit;

    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        io::write_system_file(*out_dir / "system.json", instance.system());
        io::write_instance_file(*out_dir / "instance.json", instance);
        const std::vector<double> grid =
            uniform_grid(result.period.period, kSamplesPerPeriod * static_cast<std::size_t>(result.period.k));
        io::write_text(*out_dir / "periodic.csv", io::periodic_trajectory_csv(eval_periodic_closed_form(pcf, grid)));
        io::write_text(*out_dir / "period.json", io::report_to_json(result.period).dump(2) + "\n");
        auto report = io::report_to_json(result.verification);
        report["integrated_closure"] = result.integrated_closure;
        io::write_text(*out_dir / "periodic_verification.json", report.dump(2) + "\n");
    }
    return result;
}

}  // namespace polyode::demo
