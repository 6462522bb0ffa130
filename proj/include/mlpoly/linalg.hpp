#pragma once

#include "mlpoly/rational.hpp"

#include <optional>
#include <utility>

namespace mlpoly {

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        const Rat inv = Rat(1) / m[r][c];
        for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rat f = m[i][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    m.resize(r);
    return pivots;
}

inline int rank(Mat m) { return static_cast<int>(rref(m).size()); }

inline int rank_of_vectors(const std::vector<Vec>& vs) {
    if (vs.empty()) return 0;
    return rank(vs);
}

// Basis of {x : m x = 0}; m has `cols` columns (needed when m has no rows).
inline std::vector<Vec> kernel(Mat m, std::size_t cols) {
    std::vector<int> piv = rref(m);
    std::vector<bool> is_piv(cols, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        Vec x = zeros(cols);
        x[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -m[r][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

inline Mat transpose(const Mat& m, std::size_t cols) {
    Mat t(cols, Vec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

inline Vec mat_vec(const Mat& m, const Vec& x) {
    Vec y(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) y[i] = dot(m[i], x);
    return y;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    const std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
    Mat c(a.size(), zeros(cols));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

// Some solution of m x = b, or nullopt.
inline std::optional<Vec> solve(const Mat& m, const Vec& b, std::size_t cols) {
    Mat aug(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        aug[i] = m[i];
        aug[i].push_back(b[i]);
    }
    std::vector<int> piv = rref(aug);
    Vec x = zeros(cols);
    for (std::size_t r = 0; r < piv.size(); ++r) {
        if (static_cast<std::size_t>(piv[r]) == cols) return std::nullopt;
        x[piv[r]] = aug[r][cols];
    }
    return x;
}

inline Rat det(Mat m) {
    const std::size_t n = m.size();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            const Rat f = m[i][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
        }
    }
    return d;
}

inline std::optional<Mat> inverse(const Mat& m) {
    const std::size_t n = m.size();
    Mat aug(n);
    for (std::size_t i = 0; i < n; ++i) {
        aug[i] = m[i];
        Vec e = unit(n, i);
        aug[i].insert(aug[i].end(), e.begin(), e.end());
    }
    std::vector<int> piv = rref(aug);
    if (piv.size() < n || static_cast<std::size_t>(piv[n - 1]) >= n) return std::nullopt;
    Mat inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = Vec(aug[i].begin() + n, aug[i].end());
    return inv;
}

// Coordinates of v in the span of independent vectors `basis`, or nullopt.
inline std::optional<Vec> coordinates(const std::vector<Vec>& basis, const Vec& v) {
    if (basis.empty()) {
        if (is_zero(v)) return Vec{};
        return std::nullopt;
    }
    Mat cols = transpose(basis, v.size());
    return solve(cols, v, basis.size());
}

}  // namespace mlpoly
