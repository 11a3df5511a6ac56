#include "polyode/constraints.hpp"

#include <algorithm>
#include <cmath>

#include "polyode/errors.hpp"

namespace polyode {

StateVector constraint_residual(const PolynomialSystem& system, std::span<const Complex> z0, Complex k) {
    const StateVector rhs = evaluate_rhs(system, z0);
    const double one_minus_m = 1.0 - system.degree();
    StateVector r(z0.size());
    for (std::size_t n = 0; n < z0.size(); ++n) r[n] = k * z0[n] - one_minus_m * rhs[n];
    return r;
}

double residual_term_scale(const PolynomialSystem& system, std::span<const Complex> z0, Complex k) {
    require_dimension(z0, system.dimension(), "initial data");
    double scale = 0.0;
    for (const auto& z : z0) scale = std::max(scale, std::abs(k * z));
    const double factor = system.degree() - 1.0;
    for (const auto& [key, c] : system.coefficients())
        scale = std::max(scale, factor * std::abs(c * monomial(key.index, z0)));
    return scale;
}

double max_modulus(std::span<const Complex> v) {
    double best = 0.0;
    for (const auto& x : v) best = std::max(best, std::abs(x));
    return best;
}

double scaled_residual(const PolynomialSystem& system, std::span<const Complex> z0, Complex k) {
    const StateVector r = constraint_residual(system, z0, k);
    return max_modulus(r) / std::max(1.0, residual_term_scale(system, z0, k));
}

SolvableInstance::SolvableInstance(PolynomialSystem system, StateVector z0, Complex k, double tolerance)
    : system_(std::move(system)), z0_(std::move(z0)), k_(k), tolerance_(tolerance) {
    require_dimension(z0_, system_.dimension(), "initial data");
    for (const auto& z : z0_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(ErrorKind::InvalidArgument, "initial data must be finite");
    if (!std::isfinite(k_.real()) || !std::isfinite(k_.imag()))
        throw Error(ErrorKind::InvalidArgument, "K must be finite");
    const double res = scaled_residual(system_, z0_, k_);
    if (!(res <= tolerance_))
        throw Error(ErrorKind::ConstraintViolation,
                    "constraint residual " + std::to_string(res) + " exceeds " + std::to_string(tolerance_));
}

bool UnknownSelection::has_rate() const noexcept {
    return std::any_of(slots_.begin(), slots_.end(),
                       [](const UnknownSlot& s) { return std::holds_alternative<RateK>(s); });
}

void UnknownSelection::validate_for(const PolynomialSystem& system) const {
    if (static_cast<int>(slots_.size()) != system.dimension())
        throw Error(ErrorKind::DimensionMismatch, "selection has " + std::to_string(slots_.size()) +
                                                      " unknowns, system needs " +
                                                      std::to_string(system.dimension()));
    int rates = 0;
    std::vector<CoefficientKey> seen;
    for (const auto& slot : slots_) {
        if (std::holds_alternative<RateK>(slot)) {
            ++rates;
            continue;
        }
        const auto& cs = std::get<CoefficientSlot>(slot);
        if (cs.eq < 1 || cs.eq > system.dimension() || !cs.index.valid_for(system.dimension(), system.degree()))
            throw Error(ErrorKind::InvalidArgument, "invalid coefficient slot c:" + std::to_string(cs.eq) + ":" +
                                                        cs.index.to_string());
        CoefficientKey key{cs.eq, cs.index};
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw Error(ErrorKind::InvalidArgument, "duplicate coefficient slot c:" + std::to_string(cs.eq) + ":" +
                                                        cs.index.to_string());
        seen.push_back(std::move(key));
    }
    if (rates > 1) throw Error(ErrorKind::InvalidArgument, "K selected more than once");
}

namespace {

void check_rate_given(const UnknownSelection& selection, std::optional<Complex> k_given) {
    if (selection.has_rate() && k_given)
        throw Error(ErrorKind::InvalidArgument, "K is selected as unknown but a value was also given");
    if (!selection.has_rate() && !k_given)
        throw Error(ErrorKind::InvalidArgument, "K must be given when it is not an unknown");
}

bool is_selected(const UnknownSelection& selection, const CoefficientKey& key) {
    for (const auto& slot : selection.slots())
        if (const auto* cs = std::get_if<CoefficientSlot>(&slot); cs && cs->eq == key.eq && cs->index == key.index)
            return true;
    return false;
}

}  // namespace

LinearConstraints assemble_linear_constraints(const PolynomialSystem& system, std::span<const Complex> z0,
                                              std::optional<Complex> k_given, const UnknownSelection& selection) {
    require_dimension(z0, system.dimension(), "initial data");
    selection.validate_for(system);
    check_rate_given(selection, k_given);

    const std::size_t n = z0.size();
    const double factor = system.degree() - 1.0;
    LinearConstraints lc{ComplexMatrix(n), StateVector(n, Complex{0.0, 0.0})};

    for (std::size_t col = 0; col < n; ++col) {
        const auto& slot = selection.slots()[col];
        if (std::holds_alternative<RateK>(slot)) {
            for (std::size_t row = 0; row < n; ++row) lc.matrix(row, col) = z0[row];
        } else {
            const auto& cs = std::get<CoefficientSlot>(slot);
            lc.matrix(static_cast<std::size_t>(cs.eq - 1), col) = factor * monomial(cs.index, z0);
        }
    }
    if (k_given)
        for (std::size_t row = 0; row < n; ++row) lc.constant[row] = *k_given * z0[row];
    for (const auto& [key, c] : system.coefficients()) {
        if (is_selected(selection, key)) continue;
        lc.constant[static_cast<std::size_t>(key.eq - 1)] += factor * c * monomial(key.index, z0);
    }
    return lc;
}

std::pair<PolynomialSystem, Complex> apply_unknowns(const PolynomialSystem& system, std::optional<Complex> k_given,
                                                    const UnknownSelection& selection,
                                                    std::span<const Complex> values) {
    if (values.size() != selection.slots().size())
        throw Error(ErrorKind::DimensionMismatch, "one value per selected unknown is required");
    PolynomialSystem out = system;
    Complex k = k_given.value_or(Complex{0.0, 0.0});
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& slot = selection.slots()[i];
        if (std::holds_alternative<RateK>(slot))
            k = values[i];
        else {
            const auto& cs = std::get<CoefficientSlot>(slot);
            out.set(cs.eq, cs.index, values[i]);
        }
    }
    return {std::move(out), k};
}

SolvableInstance solve_linear_selection(const PolynomialSystem& system, std::span<const Complex> z0,
                                        std::optional<Complex> k_given, const UnknownSelection& selection) {
    LinearConstraints lc = assemble_linear_constraints(system, z0, k_given, selection);
    StateVector rhs(lc.constant.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = -lc.constant[i];
    auto solution = solve_linear(std::move(lc.matrix), std::move(rhs));
    if (!solution) throw Error(ErrorKind::SingularSystem, "selected unknowns leave the constraints rank-deficient");
    auto [solved, k] = apply_unknowns(system, k_given, selection, *solution);
    return SolvableInstance(std::move(solved), StateVector(z0.begin(), z0.end()), k);
}

ComplexMatrix jacobian(const PolynomialSystem& system, std::span<const Complex> z, Complex k) {
    require_dimension(z, system.dimension(), "state");
    const std::size_t n = z.size();
    const double factor = system.degree() - 1.0;
    ComplexMatrix j = ComplexMatrix::identity(n, k);
    for (const auto& [key, c] : system.coefficients()) {
        const auto row = static_cast<std::size_t>(key.eq - 1);
        for (std::size_t col = 0; col < n; ++col) {
            if (key.index[col] == 0) continue;
            j(row, col) += factor * c * monomial_derivative(key.index, z, col);
        }
    }
    return j;
}

NewtonResult newton_solve_initial_data(const PolynomialSystem& system, Complex k, std::span<const Complex> guess,
                                       double tol, int max_iter) {
    require_dimension(guess, system.dimension(), "guess");
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be at least 1");

    NewtonResult result;
    result.root.assign(guess.begin(), guess.end());
    StateVector r = constraint_residual(system, result.root, k);
    double norm = max_modulus(r);
    result.residual_history.push_back(norm);

    for (int iter = 0; iter < max_iter; ++iter) {
        if (norm <= tol) return result;

        StateVector minus_r(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) minus_r[i] = -r[i];
        auto step = solve_linear(jacobian(system, result.root, k), std::move(minus_r));
        if (!step) throw Error(ErrorKind::SingularJacobian, "Newton step is unsolvable at iteration " +
                                                                std::to_string(iter));

        double lambda = 1.0;
        bool decreased = false;
        StateVector trial(result.root.size());
        StateVector trial_r;
        double trial_norm = norm;
        for (int h = 0; h <= kMaxStepHalvings; ++h, lambda *= 0.5) {
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] = result.root[i] + lambda * (*step)[i];
            trial_r = constraint_residual(system, trial, k);
            trial_norm = max_modulus(trial_r);
            if (std::isfinite(trial_norm) && trial_norm < norm) {
                decreased = true;
                break;
            }
        }
        if (!decreased)
            throw Error(ErrorKind::NoConvergence, "damped step failed to reduce residual " + std::to_string(norm));

        result.root = trial;
        r = std::move(trial_r);
        norm = trial_norm;
        result.iterations = iter + 1;
        result.residual_history.push_back(norm);
    }
    if (norm <= tol) return result;
    throw Error(ErrorKind::NoConvergence, "residual " + std::to_string(norm) + " after " +
                                              std::to_string(max_iter) + " iterations");
}

}  // namespace polyode
