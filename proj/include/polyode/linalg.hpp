#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polyode/polysys.hpp"

namespace polyode {

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n, Complex{0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t n, Complex diag = {1.0, 0.0});

    std::size_t size() const noexcept { return n_; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    double max_abs() const noexcept;

private:
    std::size_t n_;
    std::vector<Complex> data_;
};

/// Relative pivot threshold below which a matrix is declared rank-deficient.
inline constexpr double kPivotTolerance = 1e-13;

/// Solves a x = b by Gaussian elimination with partial pivoting.
/// Returns nullopt when some pivot modulus falls below
/// kPivotTolerance * (largest entry modulus of the original matrix), or when
/// the matrix is identically zero.
std::optional<StateVector> solve_linear(ComplexMatrix a, StateVector b);

}  // namespace polyode
