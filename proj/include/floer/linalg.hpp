#pragma once

/* Small dense exact-rational linear algebra: row reduction, rank, kernel
 * bases, and reduction of vectors against a column space.  Everything here
 * operates on matrices a few dozen entries wide; clarity over asymptotics.
 */

#include "base.hpp"

#include <utility>

namespace floer {
inline namespace linear {

struct qmatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<rat> a;   // row-major

    qmatrix() = default;
    qmatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, rat(0)) {}

    rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/* in-place reduced row echelon form; returns pivot column of each pivot row */
inline std::vector<std::size_t> rref(qmatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        rat inv = rat(1) / m.at(row, col);
        for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            rat f = m.at(i, col);
            for (std::size_t j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(qmatrix m) { return rref(m).size(); }

/* basis of { x : m x = 0 }, one column vector per free column */
inline std::vector<std::vector<rat>> kernel_basis(qmatrix m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<rat>> basis;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<rat> v(m.cols, rat(0));
        v[free] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr)
            v[pivots[pr]] = -m.at(pr, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/* Reduce each of `vecs` modulo the column span of `cols` (vectors of common
 * length n); returns the reduced vectors.  Zero result means membership. */
inline std::vector<std::vector<rat>>
reduce_mod_span(const std::vector<std::vector<rat>>& cols,
                std::vector<std::vector<rat>> vecs) {
    if (vecs.empty()) return vecs;
    std::size_t n = vecs.front().size();
    // echelonize the span: list of (pivot row index, column vector)
    std::vector<std::pair<std::size_t, std::vector<rat>>> ech;
    auto insert = [&](std::vector<rat> v) {
        for (auto& [piv, w] : ech) {
            if (v[piv] != 0) {
                rat f = v[piv] / w[piv];
                for (std::size_t i = 0; i < n; ++i) v[i] -= f * w[i];
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] != 0) {
                ech.emplace_back(i, std::move(v));
                return;
            }
    };
    for (const auto& c : cols) insert(c);
    for (auto& v : vecs)
        for (auto& [piv, w] : ech)
            if (v[piv] != 0) {
                rat f = v[piv] / w[piv];
                for (std::size_t i = 0; i < n; ++i) v[i] -= f * w[i];
            }
    return vecs;
}

} // namespace linear
} // namespace floer
