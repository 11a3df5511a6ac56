#include <doctest.h>

#include <numbers>

#include "polyode/generate.hpp"
#include "polyode/periodic.hpp"
#include "test_util.hpp"

using namespace polyode;
using polyode::test::max_abs_diff;
using polyode::test::random_complex;
using polyode::test::random_state;
using polyode::test::random_system;

namespace {

// Random system with the pure monomials solved so that (z0, k) satisfies the constraints.
SolvableInstance instance_with_k(int n, int m, Complex k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const PolynomialSystem s = random_system(rng, n, m);
    StateVector z0(static_cast<std::size_t>(n));
    std::uniform_real_distribution<double> mag(0.3, 1.0), ang(0.0, 2.0 * std::numbers::pi);
    for (auto& z : z0) z = std::polar(mag(rng), ang(rng));
    return solve_linear_selection(s, z0, k, pure_monomial_selection(n, m));
}

// Five-point central difference of the sampled trajectory at interior index i.
Complex derivative(const Trajectory& traj, std::size_t i, std::size_t n) {
    const double h = traj.times[i + 1] - traj.times[i];
    const auto& s = traj.states;
    return (-s[i + 2][n] + 8.0 * s[i + 1][n] - 8.0 * s[i - 1][n] + s[i - 2][n]) / (12.0 * h);
}

}  // namespace

TEST_SUITE("periodic") {

TEST_CASE("periodize requires nonzero omega") {
    CHECK_ERROR_KIND(periodize(PolynomialSystem(2, 4), 0.0), ErrorKind::ZeroOmega);
    CHECK(periodize(PolynomialSystem(2, 4), 1.5).rotation_rate() == doctest::Approx(0.5));
    CHECK(periodize(PolynomialSystem(2, 4), -3.0).rotation_rate() == doctest::Approx(-1.0));
}

TEST_CASE("real form at a real state") {
    std::mt19937_64 rng(3);
    const auto base = random_system(rng, 2, 4);
    const auto psys = periodize(base, 2.0);
    const std::vector<double> xy{0.7, 0.0, -0.4, 0.0};
    const auto f = eval_periodic_rhs_real(psys, xy);
    const auto z = evaluate_rhs(base, StateVector{0.7, -0.4});
    CHECK(f[0] == doctest::Approx(z[0].real()));
    CHECK(f[1] == doctest::Approx(2.0 / 3.0 * 0.7 + z[0].imag()));
    CHECK(f[2] == doctest::Approx(z[1].real()));
    CHECK(f[3] == doctest::Approx(2.0 / 3.0 * -0.4 + z[1].imag()));
}

TEST_CASE("complex and real forms agree") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 3, m = 2 + trial % 3;
        const auto psys = periodize(random_system(rng, n, m), 0.5 + trial * 0.1);
        const auto w = random_state(rng, n);
        std::vector<double> xy;
        for (const auto& v : w) {
            xy.push_back(v.real());
            xy.push_back(v.imag());
        }
        const auto c = eval_periodic_rhs(psys, w);
        const auto r = eval_periodic_rhs_real(psys, xy);
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(std::abs(c[i].real() - r[2 * i]) <= 1e-14);
            CHECK(std::abs(c[i].imag() - r[2 * i + 1]) <= 1e-14);
        }
    }
}

TEST_CASE("periodic right-hand side parts") {
    std::mt19937_64 rng(7);
    const auto base = random_system(rng, 3, 3);
    const auto psys = periodize(base, 1.0);
    CHECK(eval_periodic_rhs(psys, StateVector(3, 0.0)) == StateVector(3, 0.0));

    const auto rot = periodize(PolynomialSystem(3, 3), 1.0);
    const auto w = random_state(rng, 3);
    const auto f = eval_periodic_rhs(rot, w);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(f[i] - Complex{0.0, 0.5} * w[i]) < 1e-16);

    const auto g = eval_periodic_rhs(psys, w);
    const auto poly = evaluate_rhs(base, w);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(g[i] - (Complex{0.0, 0.5} * w[i] + poly[i])) < 1e-15);
    CHECK_ERROR_KIND(eval_periodic_rhs(psys, StateVector(2, 0.0)), ErrorKind::DimensionMismatch);
}

TEST_CASE("complex time tends to real time") {
    // tau = t + i omega t^2/2 + O(omega^2 t^3), so tau/t - 1 is of order omega t.
    for (double omega : {1.0, -2.0, 1e3}) {
        for (double wt : {1e-7, 1e-5, 1e-4}) {
            const double t = wt / std::abs(omega);
            const Complex tau = complex_time(omega, t);
            CHECK(std::abs(tau.real() - t) <= 1e-8 * t);
            CHECK(std::abs(tau - Complex{t, 0.5 * omega * t * t}) <= 1e-8 * t);
        }
        const double t = 1e-8 / std::abs(omega);
        CHECK(std::abs(complex_time(omega, t) - t) <= 1e-8 * t);
    }
    CHECK(std::abs(complex_time(1.0, 2.0 * std::numbers::pi)) < 1e-15);
}

TEST_CASE("closed form at the origin and without K") {
    const StateVector z0{Complex{0.5, 0.2}, Complex{-0.3, 0.9}};
    const PeriodicClosedForm pcf(z0, 0.0, 2.0, 4);
    const auto grid = uniform_grid(3.0 * base_period(2.0), 3 * 512);
    const auto traj = eval_periodic_closed_form(pcf, grid);
    CHECK(traj.states.front() == z0);
    for (std::size_t i = 0; i < grid.size(); i += 97) {
        const Complex rot = std::exp(Complex{0.0, 2.0 * grid[i] / 3.0});
        for (std::size_t n = 0; n < 2; ++n) CHECK(std::abs(traj.states[i][n] - z0[n] * rot) < 1e-14);
    }
    CHECK(max_abs_diff(traj.states.back(), z0) < 1e-13);
}

TEST_CASE("degree four uses exp(i omega t/3) and the cube-root bracket") {
    const auto inst = instance_with_k(2, 4, Complex{0.05, -0.03}, 11);
    const double omega = 1.0;
    const PeriodicClosedForm pcf(inst, omega);
    const auto grid = uniform_grid(base_period(omega), 1024);
    const auto traj = eval_periodic_closed_form(pcf, grid);
    for (std::size_t i = 0; i < grid.size(); i += 31) {
        const double t = grid[i];
        const Complex g = 1.0 + inst.k() * (std::exp(Complex{0.0, omega * t}) - 1.0) / Complex{0.0, omega};
        const Complex factor = std::exp(Complex{0.0, omega * t / 3.0}) * std::pow(g, -1.0 / 3.0);
        for (std::size_t n = 0; n < 2; ++n) CHECK(std::abs(traj.states[i][n] - inst.z0()[n] * factor) < 1e-13);
    }
}

TEST_CASE("closed form solves the periodic system in both forms") {
    struct Case {
        int n, m;
        Complex k;
        double omega;
    };
    for (const Case c : {Case{2, 4, {0.05, 0.02}, 1.0}, Case{2, 3, {0.3, 1.2}, 1.0}, Case{3, 2, {-0.4, -0.9}, -1.5},
                         Case{2, 5, {1.0, 2.0}, 2.0}}) {
        const auto inst = instance_with_k(c.n, c.m, c.k, 100 + static_cast<std::uint64_t>(c.m));
        const auto psys = periodize(inst.system(), c.omega);
        const PeriodicClosedForm pcf(inst, c.omega);
        const auto grid = uniform_grid((c.m - 1) * base_period(c.omega), 4096 * static_cast<std::size_t>(c.m - 1));
        const auto traj = eval_periodic_closed_form(pcf, grid);
        for (std::size_t i = 2; i + 2 < grid.size(); i += 37) {
            const auto f = eval_periodic_rhs(psys, traj.states[i]);
            std::vector<double> xy;
            for (const auto& v : traj.states[i]) {
                xy.push_back(v.real());
                xy.push_back(v.imag());
            }
            const auto fr = eval_periodic_rhs_real(psys, xy);
            for (std::size_t n = 0; n < f.size(); ++n) {
                const Complex d = derivative(traj, i, n);
                const double scale = std::max(std::abs(f[n]), 1e-12);
                CHECK(std::abs(d - f[n]) <= 1e-5 * scale);
                CHECK(std::abs(d.real() - fr[2 * n]) <= 1e-5 * scale);
                CHECK(std::abs(d.imag() - fr[2 * n + 1]) <= 1e-5 * scale);
            }
        }
    }
}

TEST_CASE("grid validation and bracket failures") {
    const StateVector z0{1.0, 1.0};
    const PeriodicClosedForm winding(z0, Complex{0.0, 2.0}, 1.0, 4);
    const double tb = base_period(1.0);
    CHECK_ERROR_KIND(eval_periodic_closed_form(winding, std::vector<double>{0.0, tb / 3, 2 * tb / 3, tb}),
                     ErrorKind::GridTooCoarse);
    CHECK_ERROR_KIND(eval_periodic_closed_form(winding, std::vector<double>{0.1, 0.2}), ErrorKind::InvalidArgument);
    CHECK_ERROR_KIND(eval_periodic_closed_form(winding, std::vector<double>{0.0, 0.2, 0.2}),
                     ErrorKind::InvalidArgument);

    // Im(K/omega) = 1/2 puts the origin on the bracket's circle, reached at t = pi.
    const PeriodicClosedForm through_zero(z0, Complex{0.0, 0.5}, 1.0, 4);
    CHECK_ERROR_KIND(eval_periodic_closed_form(through_zero, uniform_grid(tb, 4096)), ErrorKind::SingularBracket);
    CHECK_ERROR_KIND(detect_period(through_zero), ErrorKind::SingularBracket);
    CHECK_ERROR_KIND(PeriodicClosedForm(z0, 1.0, 0.0, 4), ErrorKind::ZeroOmega);
}

TEST_CASE("predicted period multiples") {
    CHECK(predicted_period_multiple(4, 0, 1.0) == 3);
    CHECK(predicted_period_multiple(4, 0, -1.0) == 3);
    CHECK(predicted_period_multiple(2, 0, 1.0) == 1);
    CHECK(predicted_period_multiple(3, 0, 1.0) == 2);
    CHECK(predicted_period_multiple(4, 1, 1.0) == 1);
    CHECK(predicted_period_multiple(4, -1, -1.0) == 1);
    CHECK(predicted_period_multiple(4, -1, 1.0) == 3);
    CHECK(predicted_period_multiple(5, -1, 1.0) == 2);
    CHECK(predicted_period_multiple(7, 3, 1.0) == 3);
}

TEST_CASE("period of the pure rotation") {
    const StateVector z0{Complex{0.4, 0.1}, Complex{0.2, -0.7}};
    for (int m = 3; m <= 5; ++m) {
        const auto report = detect_period(PeriodicClosedForm(z0, 0.0, 1.0, m));
        CHECK(report.q == 0);
        CHECK(report.k == m - 1);
        CHECK(report.period == doctest::Approx((m - 1) * 2.0 * std::numbers::pi));
    }
}

TEST_CASE("small K regime has period (M - 1) base periods") {
    const auto inst = instance_with_k(2, 4, Complex{0.08, -0.05}, 21);
    const double omega = 1.3;
    const auto report = detect_period(PeriodicClosedForm(inst, omega));
    CHECK(report.q == 0);
    CHECK(report.k == 3);
    CHECK(report.period == doctest::Approx(3.0 * base_period(omega)));
    CHECK(report.closure_error <= 1e-8);

    const auto deg2 = instance_with_k(2, 2, Complex{0.1, 0.1}, 22);
    const auto r2 = detect_period(PeriodicClosedForm(deg2, omega));
    CHECK(r2.q == 0);
    CHECK(r2.k == 1);
}

TEST_CASE("winding brackets shorten the period") {
    // Im(K/omega) > 1/2 encloses the origin once, in the direction of sgn(omega).
    const auto inst = instance_with_k(2, 4, Complex{0.3, 2.0}, 31);
    const auto r = detect_period(PeriodicClosedForm(inst, 1.0));
    CHECK(r.q == 1);
    CHECK(r.k == 1);

    const auto neg = instance_with_k(2, 4, Complex{0.3, -2.0}, 32);
    const auto rn = detect_period(PeriodicClosedForm(neg, -1.0));
    CHECK(rn.q == -1);
    CHECK(rn.k == 1);

    const auto deg5 = instance_with_k(2, 5, Complex{-0.2, 3.0}, 33);
    const auto r5 = detect_period(PeriodicClosedForm(deg5, 1.0));
    CHECK(r5.q == 1);
    CHECK(r5.k == 1);

    const auto deg3 = instance_with_k(3, 3, Complex{0.0, 1.5}, 34);
    const auto r3 = detect_period(PeriodicClosedForm(deg3, 1.0));
    CHECK(r3.q == 1);
    CHECK(r3.k == 1);
}

TEST_CASE("closure and minimality witness") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const double omega = seed % 2 ? -0.7 : 1.9;
        const auto inst = instance_with_k(2 + static_cast<int>(seed % 2), 4, Complex{0.05, 0.04}, seed);
        const PeriodicClosedForm pcf(inst, omega);
        const auto report = detect_period(pcf);
        REQUIRE(report.k == 3);
        const auto grid = uniform_grid(report.period, 4096 * 3);
        const auto traj = eval_periodic_closed_form(pcf, grid);
        CHECK(max_abs_diff(traj.states.back(), inst.z0()) <= 1e-8);
        CHECK(max_abs_diff(traj.states[grid.size() / 2], inst.z0()) > 1e-8);
    }
}

TEST_CASE("zero initial data closes after one base period") {
    const auto report = detect_period(PeriodicClosedForm(StateVector{0.0, 0.0}, Complex{0.1, 0.0}, 1.0, 4));
    CHECK(report.k == 1);
    CHECK(report.closure_error == 0.0);
}

}
