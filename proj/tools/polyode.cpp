// Command-line front end for the solvable homogeneous polynomial ODE toolkit.

#include <cstdint>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyode/closedform.hpp"
#include "polyode/constraints.hpp"
#include "polyode/demo.hpp"
#include "polyode/errors.hpp"
#include "polyode/generate.hpp"
#include "polyode/io.hpp"
#include "polyode/oracle.hpp"
#include "polyode/periodic.hpp"

namespace {

using namespace polyode;

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-")
        std::cout << text;
    else
        io::write_text(out, text);
}

int run_enumerate(int n, int m) {
    const auto indices = enumerate_multi_indices(n, m);
    for (const auto& index : indices) std::cout << index.to_string() << '\n';
    std::cout << "count " << indices.size() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicitly solvable homogeneous polynomial ODE systems"};
    app.require_subcommand(1);

    int n = 2, m = 2;
    auto* enumerate = app.add_subcommand("enumerate", "List the multi-indices of degree M in N variables");
    enumerate->add_option("--n", n, "Number of variables")->required()->check(CLI::Range(1, 64));
    enumerate->add_option("--m", m, "Total degree")->required()->check(CLI::Range(0, 64));

    std::string system_path, z0_text, unknowns_text, k_text, out;
    auto* solve = app.add_subcommand("solve", "Solve the constraints for N selected coefficients and/or K");
    solve->add_option("--system", system_path, "System JSON file")->required()->check(CLI::ExistingFile);
    solve->add_option("--z0", z0_text, "Initial data as re,im;re,im;...")->required();
    solve->add_option("--unknowns", unknowns_text, "Unknown slots, e.g. K,c:1:4-0")->required();
    solve->add_option("--k", k_text, "Rate parameter K as re,im (when K is not an unknown)");
    solve->add_option("--out", out, "Instance output file (default stdout)");

    std::string guess_text;
    double newton_tol = 1e-12;
    int max_iter = 100;
    auto* newton = app.add_subcommand("newton", "Find initial data satisfying the constraints by damped Newton");
    newton->add_option("--system", system_path, "System JSON file")->required()->check(CLI::ExistingFile);
    newton->add_option("--k", k_text, "Rate parameter K as re,im")->required();
    newton->add_option("--guess", guess_text, "Starting point as re,im;re,im;...")->required();
    newton->add_option("--tol", newton_tol, "Residual tolerance")->check(CLI::PositiveNumber);
    newton->add_option("--max-iter", max_iter, "Iteration limit")->check(CLI::PositiveNumber);
    newton->add_option("--out", out, "Instance output file (default stdout)");

    std::vector<std::string> instance_paths;
    double t_max = 0.0;
    std::size_t samples = 64;
    auto* eval = app.add_subcommand("eval", "Sample the closed-form solution");
    eval->add_option("--instance", instance_paths, "Instance JSON file")->required()->expected(1)->check(CLI::ExistingFile);
    eval->add_option("--t-max", t_max, "End time")->required()->check(CLI::PositiveNumber);
    eval->add_option("--samples", samples, "Number of sample points")->required()->check(CLI::Range(2, 100000000));
    eval->add_option("--out", out, "Trajectory CSV (default stdout)");

    IntegratorConfig config;
    double threshold = demo::kDeviationLimit;
    auto* verify = app.add_subcommand("verify", "Compare the closed form with numerical integration");
    verify->add_option("--instance", instance_paths, "Instance JSON file(s)")->required()->check(CLI::ExistingFile);
    verify->add_option("--t-max", t_max, "End time")->required()->check(CLI::PositiveNumber);
    verify->add_option("--samples", samples, "Number of sample points")->required()->check(CLI::Range(2, 100000000));
    verify->add_option("--rel-tol", config.rel_tol, "Integrator relative tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--abs-tol", config.abs_tol, "Integrator absolute tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--threshold", threshold, "Largest accepted deviation")->check(CLI::PositiveNumber);

    double omega = 1.0;
    int periods = 1;
    auto* periodize_cmd = app.add_subcommand("periodize", "Sample the periodic variant's closed-form trajectory");
    periodize_cmd->add_option("--instance", instance_paths, "Instance JSON file")->required()->expected(1)->check(CLI::ExistingFile);
    periodize_cmd->add_option("--omega", omega, "Nonzero frequency")->required();
    periodize_cmd->add_option("--periods", periods, "Number of base periods")->check(CLI::PositiveNumber);
    periodize_cmd->add_option("--out", out, "Periodic trajectory CSV (default stdout)");

    double closure_tol = kClosureTolerance;
    auto* period = app.add_subcommand("period", "Detect the period of the periodic variant");
    period->add_option("--instance", instance_paths, "Instance JSON file")->required()->expected(1)->check(CLI::ExistingFile);
    period->add_option("--omega", omega, "Nonzero frequency")->required();
    period->add_option("--tol", closure_tol, "Closure tolerance")->check(CLI::PositiveNumber);

    std::uint64_t seed = 0;
    GeneratorOptions gen_options;
    auto* gen = app.add_subcommand("gen", "Generate a random solvable instance");
    gen->add_option("--n", n, "Number of variables")->required()->check(CLI::Range(2, 64));
    gen->add_option("--m", m, "Degree")->required()->check(CLI::Range(2, 64));
    gen->add_option("--seed", seed, "Random seed")->required();
    gen->add_option("--density", gen_options.density, "Fraction of populated coefficient slots")
        ->check(CLI::Range(1e-9, 1.0));
    gen->add_option("--k-max", gen_options.k_modulus_limit, "Upper bound on |K|")->check(CLI::PositiveNumber);
    gen->add_option("--out", out, "Instance output file (default stdout)");

    std::string demo_name, out_dir = ".";
    auto* demo_cmd = app.add_subcommand("demo", "Run a built-in worked example");
    demo_cmd->add_option("name", demo_name, "example1 or example2")
        ->required()
        ->check(CLI::IsMember({"example1", "example2"}));
    demo_cmd->add_option("--out-dir", out_dir, "Directory for emitted files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*enumerate) return run_enumerate(n, m);

        if (*solve) {
            const PolynomialSystem system = io::parse_system_file(system_path);
            const StateVector z0 = io::parse_state(z0_text);
            const UnknownSelection selection = io::parse_selection(unknowns_text);
            std::optional<Complex> k;
            if (!k_text.empty()) k = io::parse_complex(k_text);
            const SolvableInstance instance = solve_linear_selection(system, z0, k, selection);
            emit(out, io::instance_to_json(instance).dump(2) + "\n");
            return kExitOk;
        }

        if (*newton) {
            const PolynomialSystem system = io::parse_system_file(system_path);
            const Complex k = io::parse_complex(k_text);
            const NewtonResult result = newton_solve_initial_data(system, k, io::parse_state(guess_text), newton_tol, max_iter);
            std::cerr << "newton: converged in " << result.iterations << " iterations, residual "
                      << io::format_double(result.residual_history.back()) << '\n';
            const SolvableInstance instance(system, result.root, k);
            emit(out, io::instance_to_json(instance).dump(2) + "\n");
            return kExitOk;
        }

        if (*eval) {
            const SolvableInstance instance = io::parse_instance_file(instance_paths.front());
            const std::vector<double> grid = uniform_grid(t_max, samples - 1);
            emit(out, io::trajectory_csv(sample_closed_form(ClosedFormSolution(instance), grid)));
            return kExitOk;
        }

        if (*verify) {
            config.validate();
            std::vector<std::future<VerificationReport>> jobs;
            for (const auto& path : instance_paths) {
                jobs.push_back(std::async(std::launch::async, [&, path] {
                    return verify_instance(io::parse_instance_file(path), t_max, samples, config);
                }));
            }
            nlohmann::json reports = nlohmann::json::array();
            bool pass = true;
            for (auto& job : jobs) {
                const VerificationReport report = job.get();
                pass = pass && report.max_deviation <= threshold;
                reports.push_back(io::report_to_json(report));
            }
            std::cout << (reports.size() == 1 ? reports.front() : reports).dump(2) << '\n';
            return pass ? kExitOk : kExitTolerance;
        }

        if (*periodize_cmd) {
            const SolvableInstance instance = io::parse_instance_file(instance_paths.front());
            const PeriodicClosedForm pcf(instance, omega);
            const std::vector<double> grid =
                uniform_grid(periods * base_period(omega), kSamplesPerPeriod * static_cast<std::size_t>(periods));
            emit(out, io::periodic_trajectory_csv(eval_periodic_closed_form(pcf, grid)));
            return kExitOk;
        }

        if (*period) {
            const SolvableInstance instance = io::parse_instance_file(instance_paths.front());
            const PeriodReport report = detect_period(PeriodicClosedForm(instance, omega), closure_tol);
            std::cout << io::report_to_json(report).dump(2) << '\n';
            return kExitOk;
        }

        if (*gen) {
            const SolvableInstance instance = generate_random_instance(n, m, seed, gen_options);
            emit(out, io::instance_to_json(instance).dump(2) + "\n");
            return kExitOk;
        }

        if (*demo_cmd) {
            if (demo_name == "example1") {
                const auto result = demo::run_example1(std::filesystem::path(out_dir));
                std::cout << "example1: residual " << io::format_double(result.residual) << ", exponent error "
                          << io::format_double(result.exponent_error) << ", max deviation "
                          << io::format_double(result.verification.max_deviation) << '\n';
                return result.ok ? kExitOk : kExitTolerance;
            }
            const auto result = demo::run_example2(std::filesystem::path(out_dir));
            std::cout << "example2: residual " << io::format_double(result.residual) << ", periodic deviation "
                      << io::format_double(result.verification.max_deviation) << ", q " << result.period.q
                      << ", k " << result.period.k << ", T " << io::format_double(result.period.period)
                      << ", closure " << io::format_double(result.period.closure_error) << ", integrated closure "
                      << io::format_double(result.integrated_closure) << '\n';
            return result.ok ? kExitOk : kExitTolerance;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}
