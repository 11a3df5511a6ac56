#include "polyode/generate.hpp"

#include <cmath>
#include <random>

#include "polyode/errors.hpp"

namespace polyode {

UnknownSelection pure_monomial_selection(int n, int m) {
    std::vector<UnknownSlot> slots;
    for (int eq = 1; eq <= n; ++eq) {
        std::vector<int> exps(static_cast<std::size_t>(n), 0);
        exps[static_cast<std::size_t>(eq - 1)] = m;
        slots.emplace_back(CoefficientSlot{eq, MultiIndex(std::move(exps))});
    }
    return UnknownSelection(std::move(slots));
}

namespace {

SolvableInstance draw_instance(int n, int m, std::uint64_t seed, const GeneratorOptions& options) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> offset(0.2, 1.0);
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution keep(options.density);

    StateVector z0(static_cast<std::size_t>(n));
    for (auto& z : z0) {
        const double re = (coin(rng) ? 1.0 : -1.0) * offset(rng);
        const double im = (coin(rng) ? 1.0 : -1.0) * offset(rng);
        z = Complex{re, im};
    }

    PolynomialSystem system(n, m);
    const auto indices = enumerate_multi_indices(n, m);
    for (int eq = 1; eq <= n; ++eq) {
        for (const auto& index : indices) {
            if (index[static_cast<std::size_t>(eq - 1)] == m) continue;
            const double re = unit(rng);
            const double im = unit(rng);
            if (keep(rng)) system.set(eq, index, Complex{re, im});
        }
    }

    Complex k{unit(rng), unit(rng)};
    if (std::abs(k) > options.k_modulus_limit) k *= options.k_modulus_limit / std::abs(k);

    return solve_linear_selection(system, z0, k, pure_monomial_selection(n, m));
}

}  // namespace

SolvableInstance generate_random_instance(int n, int m, std::uint64_t seed, const GeneratorOptions& options) {
    if (n < 2 || m < 2) throw Error(ErrorKind::InvalidArgument, "generation requires N >= 2 and M >= 2");
    if (!(options.density > 0.0 && options.density <= 1.0))
        throw Error(ErrorKind::InvalidArgument, "density must lie in (0, 1]");
    if (!(options.k_modulus_limit > 0.0)) throw Error(ErrorKind::InvalidArgument, "K modulus limit must be positive");

    for (int attempt = 0;; ++attempt) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL;
        try {
            return draw_instance(n, m, s, options);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SingularSystem && e.kind() != ErrorKind::ConstraintViolation) throw;
            if (attempt + 1 >= kGeneratorReseeds) throw;
        }
    }
}

}  // namespace polyode
