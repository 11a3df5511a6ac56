#include "polyode/linalg.hpp"

#include <cmath>
#include <utility>

namespace polyode {

ComplexMatrix ComplexMatrix::identity(std::size_t n, Complex diag) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = diag;
    return m;
}

double ComplexMatrix::max_abs() const noexcept {
    double best = 0.0;
    for (const auto& v : data_) best = std::max(best, std::abs(v));
    return best;
}

std::optional<StateVector> solve_linear(ComplexMatrix a, StateVector b) {
    const std::size_t n = a.size();
    const double threshold = kPivotTolerance * a.max_abs();
    if (!(threshold > 0.0)) return std::nullopt;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double pivot_abs = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > pivot_abs) {
                pivot = r;
                pivot_abs = v;
            }
        }
        if (!(pivot_abs >= threshold)) return std::nullopt;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = a(r, col) / a(col, col);
            if (factor == Complex{0.0, 0.0}) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
            b[r] -= factor * b[col];
        }
    }

    StateVector x(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * x[c];
        x[i] = acc / a(i, i);
    }
    return x;
}

}  // namespace polyode
