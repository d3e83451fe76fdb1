#pragma once

#include "rational.hpp"

#include <vector>

namespace svlab {

using IntMatrix = std::vector<std::vector<Int>>;
using RatMatrix = std::vector<std::vector<Rational>>;

/**
 * Smith normal form diagonal of an integer matrix.
 *
 * Returns the positive invariant factors d1 | d2 | ... (rank many).
 * Pivoting always picks the smallest nonzero entry of the remaining
 * submatrix, which keeps intermediate entries from blowing up.
 */
inline std::vector<Int> smith_diagonal(IntMatrix a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<Int> diag;
    int t = 0;
    while (t < rows && t < cols) {
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                Int mag = boost::multiprecision::abs(a[i][j]);
                if (pi < 0 || mag < best) {
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        std::swap(a[t], a[pi]);
        if (pj != t)
            for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Int q = a[i][t] / a[t][t];
                if (q != 0)
                    for (int j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Int q = a[t][j] / a[t][t];
                if (q != 0)
                    for (int i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                    clean = false;
                }
            }
        }

        bool redo = false;
        for (int i = t + 1; i < rows && !redo; ++i)
            for (int j = t + 1; j < cols && !redo; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    for (int jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
                    redo = true;
                }
        if (redo) continue;

        if (a[t][t] < 0)
            for (int j = t; j < cols; ++j) a[t][j] = -a[t][j];
        diag.push_back(a[t][t]);
        ++t;
    }
    return diag;
}

inline int integer_rank(const IntMatrix& a) {
    return static_cast<int>(smith_diagonal(a).size());
}

/**
 * Decides whether `target` lies in the column span of `columns` over Q.
 * Plain Gauss elimination on the augmented system.
 */
inline bool in_rational_span(const RatMatrix& columns,
                             const std::vector<Rational>& target) {
    const int n = static_cast<int>(target.size());
    const int m = static_cast<int>(columns.size());
    for (const auto& col : columns)
        if (static_cast<int>(col.size()) != n) return false;

    RatMatrix aug(n, std::vector<Rational>(m + 1));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) aug[i][j] = columns[j][i];
    for (int i = 0; i < n; ++i) aug[i][m] = target[i];

    int row = 0;
    for (int col = 0; col < m && row < n; ++col) {
        int pivot = -1;
        for (int i = row; i < n; ++i)
            if (aug[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(aug[row], aug[pivot]);
        Rational inv = aug[row][col];
        for (int j = col; j <= m; ++j) aug[row][j] /= inv;
        for (int i = 0; i < n; ++i) {
            if (i == row || aug[i][col] == 0) continue;
            Rational factor = aug[i][col];
            for (int j = col; j <= m; ++j) aug[i][j] -= factor * aug[row][j];
        }
        ++row;
    }
    for (int i = row; i < n; ++i)
        if (aug[i][m] != 0) return false;
    return true;
}

inline int rational_rank(RatMatrix a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i)
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int i = rank + 1; i < rows; ++i) {
            if (a[i][col] == 0) continue;
            Rational factor = a[i][col] / a[rank][col];
            for (int j = col; j < cols; ++j) a[i][j] -= factor * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace svlab
