#include "polyode/polysys.hpp"

#include <cmath>
#include <numeric>

#include "polyode/errors.hpp"

namespace polyode {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {}

MultiIndex::MultiIndex(std::initializer_list<int> exponents) : exponents_(exponents) {}

int MultiIndex::degree() const noexcept {
    return std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

bool MultiIndex::valid_for(int n, int m) const noexcept {
    if (static_cast<int>(exponents_.size()) != n) return false;
    for (int e : exponents_)
        if (e < 0) return false;
    return degree() == m;
}

std::string MultiIndex::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(exponents_[i]);
    }
    return out;
}

namespace {

void enumerate_into(std::vector<int>& prefix, int remaining, int slots, std::vector<MultiIndex>& out) {
    if (slots == 1) {
        prefix.push_back(remaining);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        prefix.push_back(e);
        enumerate_into(prefix, remaining - e, slots - 1, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int n, int m) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "multi-index length must be at least 1");
    if (m < 0) throw Error(ErrorKind::InvalidArgument, "total degree must be nonnegative");
    std::vector<MultiIndex> out;
    std::vector<int> prefix;
    prefix.reserve(static_cast<std::size_t>(n));
    enumerate_into(prefix, m, n, out);
    return out;
}

Complex monomial(const MultiIndex& index, std::span<const Complex> z) {
    Complex value{1.0, 0.0};
    for (std::size_t l = 0; l < index.size(); ++l)
        for (int p = 0; p < index[l]; ++p) value *= z[l];
    return value;
}

Complex monomial_derivative(const MultiIndex& index, std::span<const Complex> z, std::size_t j) {
    const int mj = index[j];
    if (mj == 0) return {0.0, 0.0};
    Complex value{static_cast<double>(mj), 0.0};
    for (std::size_t l = 0; l < index.size(); ++l) {
        const int p_max = (l == j) ? index[l] - 1 : index[l];
        for (int p = 0; p < p_max; ++p) value *= z[l];
    }
    return value;
}

PolynomialSystem::PolynomialSystem(int n, int m) : n_(n), m_(m) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "system dimension N must be at least 2");
    if (m < 2) throw Error(ErrorKind::InvalidArgument, "polynomial degree M must be at least 2");
}

void PolynomialSystem::check_key(int eq, const MultiIndex& index) const {
    if (eq < 1 || eq > n_)
        throw Error(ErrorKind::InvalidArgument, "equation index " + std::to_string(eq) + " outside [1, N]");
    if (!index.valid_for(n_, m_))
        throw Error(ErrorKind::InvalidArgument,
                    "multi-index " + index.to_string() + " is not valid for N=" + std::to_string(n_) +
                        ", M=" + std::to_string(m_));
}

void PolynomialSystem::set(int eq, const MultiIndex& index, Complex value) {
    check_key(eq, index);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw Error(ErrorKind::InvalidArgument, "coefficient must be finite");
    CoefficientKey key{eq, index};
    if (value == Complex{0.0, 0.0})
        coeffs_.erase(key);
    else
        coeffs_[key] = value;
}

Complex PolynomialSystem::coefficient(int eq, const MultiIndex& index) const {
    check_key(eq, index);
    auto it = coeffs_.find(CoefficientKey{eq, index});
    return it == coeffs_.end() ? Complex{0.0, 0.0} : it->second;
}

bool PolynomialSystem::contains(int eq, const MultiIndex& index) const {
    return coeffs_.count(CoefficientKey{eq, index}) != 0;
}

void require_dimension(std::span<const Complex> z, int expected, const char* what) {
    if (static_cast<int>(z.size()) != expected)
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has length " + std::to_string(z.size()) +
                                                      ", expected " + std::to_string(expected));
}

StateVector evaluate_rhs(const PolynomialSystem& system, std::span<const Complex> z) {
    require_dimension(z, system.dimension(), "state");
    StateVector out(z.size(), Complex{0.0, 0.0});
    for (const auto& [key, c] : system.coefficients())
        out[static_cast<std::size_t>(key.eq - 1)] += c * monomial(key.index, z);
    return out;
}

StateVector scale_state(std::span<const Complex> z, Complex lambda) {
    StateVector out(z.begin(), z.end());
    for (auto& v : out) v *= lambda;
    return out;
}

}  // namespace polyode
