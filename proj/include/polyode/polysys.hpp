#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace polyode {

using Complex = std::complex<double>;

/// Complex state z = (z_1, ..., z_N).
using StateVector = std::vector<Complex>;

/// Exponent tuple (m_1, ..., m_N) identifying one monomial z_1^m_1 ... z_N^m_N.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> exponents);
    MultiIndex(std::initializer_list<int> exponents);

    std::size_t size() const noexcept { return exponents_.size(); }
    int operator[](std::size_t i) const { return exponents_[i]; }
    int degree() const noexcept;
    const std::vector<int>& exponents() const noexcept { return exponents_; }

    /// True when the index has n entries summing to m.
    bool valid_for(int n, int m) const noexcept;

    /// Dash-separated form, e.g. "4-0".
    std::string to_string() const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<int> exponents_;
};

/// Canonical order: lexicographic descending on exponents, so (4,0) precedes (3,1).
struct CanonicalOrder {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return a.exponents() > b.exponents();
    }
};

/// Every multi-index of length n and total degree m, in canonical order.
/// Throws InvalidArgument for n < 1 or m < 0.
std::vector<MultiIndex> enumerate_multi_indices(int n, int m);

/// z^index by repeated multiplication; a zero exponent contributes 1.
Complex monomial(const MultiIndex& index, std::span<const Complex> z);

/// Partial derivative of z^index with respect to z_j (0-based j).
Complex monomial_derivative(const MultiIndex& index, std::span<const Complex> z, std::size_t j);

struct CoefficientKey {
    int eq;  // 1-based equation index
    MultiIndex index;

    friend bool operator==(const CoefficientKey&, const CoefficientKey&) = default;
};

struct CoefficientKeyOrder {
    bool operator()(const CoefficientKey& a, const CoefficientKey& b) const {
        if (a.eq != b.eq) return a.eq < b.eq;
        return CanonicalOrder{}(a.index, b.index);
    }
};

/// Right-hand sides of z_n' = sum_m c_{n,m} z^m with all monomials of degree M.
///
/// Coefficients are stored sparsely; an absent key is a zero coefficient and a
/// stored value is never exactly zero. Iteration follows (eq, canonical index)
/// order, which also fixes the floating-point summation order of evaluation.
class PolynomialSystem {
public:
    using CoefficientMap = std::map<CoefficientKey, Complex, CoefficientKeyOrder>;

    /// Requires n >= 2 and m >= 2.
    PolynomialSystem(int n, int m);

    int dimension() const noexcept { return n_; }
    int degree() const noexcept { return m_; }

    /// Assigns c_{eq,index}; assigning exactly zero removes the entry.
    void set(int eq, const MultiIndex& index, Complex value);
    Complex coefficient(int eq, const MultiIndex& index) const;
    bool contains(int eq, const MultiIndex& index) const;

    const CoefficientMap& coefficients() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    friend bool operator==(const PolynomialSystem&, const PolynomialSystem&) = default;

private:
    void check_key(int eq, const MultiIndex& index) const;

    int n_;
    int m_;
    CoefficientMap coeffs_;
};

/// Component n: sum over stored indices of c_{n,m} z^m.
StateVector evaluate_rhs(const PolynomialSystem& system, std::span<const Complex> z);

StateVector scale_state(std::span<const Complex> z, Complex lambda);

/// Throws DimensionMismatch unless z.size() == expected.
void require_dimension(std::span<const Complex> z, int expected, const char* what);

}  // namespace polyode
