#pragma once

// Integer lattice routines: Hermite and Smith normal forms, integer kernels,
// unimodular completion.

#include "mlpoly/linalg.hpp"

#include <algorithm>

namespace mlpoly {

namespace detail {

inline void row_sub(IVec& a, const IVec& b, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= q * b[k];
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace detail

// Row-style Hermite normal form of the lattice spanned by the rows.
// Pivots positive, entries above each pivot reduced into [0, pivot). Zero rows dropped.
inline IMat hnf(IMat m) {
    if (m.empty()) return m;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        for (;;) {
            std::size_t best = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][c] != 0 && (best == m.size() || abs(m[i][c]) < abs(m[best][c]))) best = i;
            if (best == m.size()) break;
            std::swap(m[r], m[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][c] == 0) continue;
                detail::row_sub(m[i], m[r], m[i][c] / m[r][c]);
                if (m[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r < m.size() && m[r][c] != 0) {
            if (m[r][c] < 0)
                for (auto& x : m[r]) x = -x;
            for (std::size_t i = 0; i < r; ++i)
                detail::row_sub(m[i], m[r], detail::floor_div(m[i][c], m[r][c]));
            ++r;
        }
    }
    m.resize(r);
    return m;
}

// Lattice basis (HNF) of {x in Z^cols : a x = 0}.
inline IMat integer_kernel(const IMat& a, std::size_t cols) {
    // Rows of [a^T | I]; integer row reduction on the left block.
    const std::size_t m = a.size();
    IMat aug(cols, IVec(m + cols, 0));
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < m; ++i) aug[j][i] = a[i][j];
        aug[j][m + j] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < cols; ++c) {
        for (;;) {
            std::size_t best = cols;
            for (std::size_t i = r; i < cols; ++i)
                if (aug[i][c] != 0 && (best == cols || abs(aug[i][c]) < abs(aug[best][c]))) best = i;
            if (best == cols) break;
            std::swap(aug[r], aug[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < cols; ++i) {
                if (aug[i][c] == 0) continue;
                detail::row_sub(aug[i], aug[r], aug[i][c] / aug[r][c]);
                if (aug[i][c] != 0) done = false;
            }
            if (done) {
                ++r;
                break;
            }
        }
    }
    IMat ker;
    for (std::size_t i = r; i < cols; ++i) ker.emplace_back(aug[i].begin() + m, aug[i].end());
    return hnf(ker);
}

// Nonzero invariant factors d1 | d2 | ... of the integer matrix.
inline IVec smith_invariants(IMat m) {
    IVec out;
    if (m.empty()) return out;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pick the smallest nonzero entry in the trailing block
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        std::swap(m[t], m[pi]);
        for (auto& row : m) std::swap(row[t], row[pj]);
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (m[i][t] == 0) continue;
            detail::row_sub(m[i], m[t], m[i][t] / m[t][t]);
            if (m[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (m[t][j] == 0) continue;
            const Int q = m[t][j] / m[t][t];
            for (std::size_t i = 0; i < rows; ++i) m[i][j] -= q * m[i][t];
            if (m[t][j] != 0) clean = false;
        }
        if (!clean) continue;
        // divisibility of the rest of the block by the pivot
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
            for (std::size_t j = t + 1; j < cols; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
                    divides = false;
                    break;
                }
        if (!divides) continue;
        out.push_back(abs(m[t][t]));
        ++t;
    }
    return out;
}

// Unimodular U (columns) with v^T U = e_1^T for a primitive integer vector v.
inline IMat unimodular_completion(const IVec& v) {
    const std::size_t n = v.size();
    IVec w = v;
    IMat u(n, IVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto col_sub = [&](std::size_t a, std::size_t b, const Int& q) {  // col_a -= q col_b
        w[a] -= q * w[b];
        for (std::size_t i = 0; i < n; ++i) u[i][a] -= q * u[i][b];
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        std::swap(w[a], w[b]);
        for (std::size_t i = 0; i < n; ++i) std::swap(u[i][a], u[i][b]);
    };
    for (;;) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] != 0 && (best == n || abs(w[i]) < abs(w[best]))) best = i;
        if (best == n) throw std::invalid_argument("unimodular_completion: zero vector");
        col_swap(0, best);
        bool done = true;
        for (std::size_t i = 1; i < n; ++i) {
            if (w[i] == 0) continue;
            col_sub(i, 0, w[i] / w[0]);
            if (w[i] != 0) done = false;
        }
        if (done) break;
    }
    if (abs(w[0]) != 1) throw std::invalid_argument("unimodular_completion: vector not primitive");
    if (w[0] < 0) {
        w[0] = -w[0];
        for (std::size_t i = 0; i < n; ++i) u[i][0] = -u[i][0];
    }
    return u;
}

inline IMat to_imat(const Mat& m) {
    IMat r;
    for (const auto& row : m) r.push_back(to_ivec(row));
    return r;
}

inline Mat to_mat(const IMat& m) {
    Mat r;
    for (const auto& row : m) r.push_back(to_vec(row));
    return r;
}

// Scale each row to integers (row-wise, by its common denominator).
inline IMat clear_denominators(const Mat& m) {
    IMat r;
    for (const auto& row : m) r.push_back(to_ivec(Rat(common_denominator(row)) * row));
    return r;
}

}  // namespace mlpoly
