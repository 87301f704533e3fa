#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "freemagma/rational.hpp"

namespace freemagma {

// Dense exact-rational matrix, row major.
using Matrix = std::vector<std::vector<Rat>>;

namespace detail {

// Forward elimination; returns the pivot column of each eliminated row.
inline std::vector<std::size_t> eliminate(Matrix& a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const Rat inv = a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rat f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(Matrix a) { return detail::eliminate(a).size(); }

// Solve A x = b exactly. Returns the particular solution with every free
// variable set to zero (deterministic), or nullopt if inconsistent.
inline std::optional<std::vector<Rat>> solve_linear(const Matrix& a, const std::vector<Rat>& b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    Matrix aug(rows, std::vector<Rat>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    std::vector<std::size_t> pivots = detail::eliminate(aug);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // 0 = 1 row
    std::vector<Rat> x(cols, Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
    return x;
}

}  // namespace freemagma
