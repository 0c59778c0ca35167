#pragma once

#include "coflow/field.hpp"

#include <optional>
#include <vector>

namespace coflow {

/// Dense exact matrix over Q(r2,r3); everything here is tiny (<= 20x20),
/// so plain Gauss-Jordan is fine.
using FMatrix = std::vector<std::vector<FieldElem>>;

inline FMatrix identity_matrix(std::size_t n) {
    FMatrix m(n, std::vector<FieldElem>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = FieldElem(1);
    return m;
}

/// Exact inverse; nullopt when singular.
inline std::optional<FMatrix> invert(FMatrix m) {
    const std::size_t n = m.size();
    FMatrix inv = identity_matrix(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        FieldElem inv_p = m[col][col].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] *= inv_p;
            inv[col][j] *= inv_p;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            FieldElem factor = m[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[row][j] -= factor * m[col][j];
                inv[row][j] -= factor * inv[col][j];
            }
        }
    }
    return inv;
}

/// y = M x for any ring R with FieldElem-scalar multiplication.
template <class R>
std::vector<R> mat_apply(const FMatrix& m, const std::vector<R>& x) {
    std::vector<R> y(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        R acc{};
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (m[i][j].is_zero()) continue;
            acc = acc + R(m[i][j]) * x[j];
        }
        y[i] = std::move(acc);
    }
    return y;
}

/// Basis of the right nullspace of an (equations x unknowns) matrix.
/// Deterministic: reduced row echelon form with first-found pivots, free
/// variables in increasing column order.
inline std::vector<std::vector<FieldElem>> nullspace(FMatrix m) {
    if (m.empty()) return {};
    const std::size_t rows = m.size(), cols = m[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[r]);
        FieldElem inv_p = m[r][c].inverse();
        for (std::size_t j = 0; j < cols; ++j) m[r][j] *= inv_p;
        for (std::size_t row = 0; row < rows; ++row) {
            if (row == r || m[row][c].is_zero()) continue;
            FieldElem factor = m[row][c];
            for (std::size_t j = 0; j < cols; ++j) m[row][j] -= factor * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<FieldElem>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldElem> v(cols);
        v[free] = FieldElem(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace coflow
