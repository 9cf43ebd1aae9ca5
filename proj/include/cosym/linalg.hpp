#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cosym/errors.hpp"

// Small dense solvers templated over the scalar so they work on plain doubles
// and on Taylor jets alike. Pivoting always compares plain values.

namespace cosym {

inline double value_of(double x) { return x; }

namespace detail {

// Gauss-Jordan with partial pivoting; a is n*n row-major. Throws on breakdown.
template <class T>
std::vector<T> gauss_jordan_inverse(std::vector<T> a, int n) {
    std::vector<T> inv;
    inv.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.push_back(a[0] * 0.0 + (i == j ? 1.0 : 0.0));

    auto row = [n](std::vector<T>& m, int r) { return m.data() + static_cast<std::size_t>(r) * n; };

    for (int c = 0; c < n; ++c) {
        int piv = c;
        double best = std::fabs(value_of(a[static_cast<std::size_t>(c) * n + c]));
        for (int r = c + 1; r < n; ++r) {
            const double cand = std::fabs(value_of(a[static_cast<std::size_t>(r) * n + c]));
            if (cand > best) { best = cand; piv = r; }
        }
        if (!(best > 0.0)) throw SingularMatrixError("matrix inversion: zero pivot");
        if (piv != c) {
            for (int j = 0; j < n; ++j) {
                std::swap(row(a, c)[j], row(a, piv)[j]);
                std::swap(row(inv, c)[j], row(inv, piv)[j]);
            }
        }
        const T d = a[static_cast<std::size_t>(c) * n + c];
        for (int j = 0; j < n; ++j) {
            row(a, c)[j] = row(a, c)[j] / d;
            row(inv, c)[j] = row(inv, c)[j] / d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            const T f = a[static_cast<std::size_t>(r) * n + c];
            if (value_of(f) == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                row(a, r)[j] = row(a, r)[j] - f * row(a, c)[j];
                row(inv, r)[j] = row(inv, r)[j] - f * row(inv, c)[j];
            }
        }
    }
    return inv;
}

// Plain Cholesky test; true iff the symmetric matrix is positive definite.
bool cholesky_spd(std::vector<double> a, int n);

} // namespace detail
} // namespace cosym
