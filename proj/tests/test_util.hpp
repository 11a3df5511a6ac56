#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "polyode/errors.hpp"
#include "polyode/polysys.hpp"

namespace polyode::test {

inline Complex random_complex(std::mt19937_64& rng, double radius = 1.0) {
    std::uniform_real_distribution<double> u(-radius, radius);
    const double re = u(rng);
    return {re, u(rng)};
}

inline StateVector random_state(std::mt19937_64& rng, int n, double radius = 1.0) {
    StateVector z(static_cast<std::size_t>(n));
    for (auto& v : z) v = random_complex(rng, radius);
    return z;
}

/// Each slot populated with probability `density`, values uniform on [-1, 1]^2.
inline PolynomialSystem random_system(std::mt19937_64& rng, int n, int m, double density = 1.0) {
    PolynomialSystem system(n, m);
    std::bernoulli_distribution keep(density);
    for (int eq = 1; eq <= n; ++eq)
        for (const auto& index : enumerate_multi_indices(n, m))
            if (keep(rng)) system.set(eq, index, random_complex(rng));
    return system;
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline double max_abs(const StateVector& a) {
    double worst = 0.0;
    for (const auto& v : a) worst = std::max(worst, std::abs(v));
    return worst;
}

}  // namespace polyode::test

#define CHECK_ERROR_KIND(expr, expected_kind)                       \
    do {                                                            \
        bool thrown_ = false;                                       \
        try {                                                       \
            (void)(expr);                                           \
        } catch (const ::polyode::Error& e_) {                      \
            thrown_ = true;                                         \
            CHECK_MESSAGE(e_.kind() == (expected_kind), e_.what()); \
        }                                                           \
        CHECK_MESSAGE(thrown_, "expected " #expected_kind);         \
    } while (false)
