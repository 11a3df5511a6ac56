#pragma once

#include <cstdint>
#include <limits>

#include "polyode/constraints.hpp"

namespace polyode {

struct GeneratorOptions {
    /// Probability that a non-solved coefficient slot is populated, in (0, 1].
    double density = 1.0;
    /// K is rescaled onto this modulus when it is drawn larger.
    double k_modulus_limit = std::numeric_limits<double>::infinity();
};

inline constexpr int kGeneratorReseeds = 16;

/// Random instance built by the linear strategy: z0 with |Re|, |Im| in
/// [0.2, 1], coefficients and K uniform on [-1, 1]^2, then the N pure
/// monomial coefficients c_{n, M e_n} solved from the constraints.
/// Identical arguments give a bit-identical instance.
SolvableInstance generate_random_instance(int n, int m, std::uint64_t seed, const GeneratorOptions& options = {});

/// The N slots c_{n, M e_n}.
UnknownSelection pure_monomial_selection(int n, int m);

}  // namespace polyode
