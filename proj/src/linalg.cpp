#include "logdisc/linalg.hpp"
#include <cassert>

namespace logdisc {

int rank_q(QMat m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return (int)r;
}

Rat det_bareiss(QMat m) {
    size_t n = m.size();
    if (n == 0) return 1;
    assert(m[0].size() == n);
    Rat prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

QMat rref(QMat m, std::vector<int>* pivot_cols) {
    if (pivot_cols) pivot_cols->clear();
    if (m.empty()) return m;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        Rat inv = m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        if (pivot_cols) pivot_cols->push_back((int)c);
        ++r;
    }
    return m;
}

QMat nullspace(const QMat& m) {
    if (m.empty()) return {};
    size_t cols = m[0].size();
    std::vector<int> pivots;
    QMat r = rref(m, &pivots);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    QMat basis; // each entry: one column vector of length cols
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[fc] = 1;
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            v[pivots[pi]] = -r[pi][fc];
        basis.push_back(std::move(v));
    }
    // return as columns
    QMat out(cols, std::vector<Rat>(basis.size(), Rat(0)));
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < cols; ++i) out[i][j] = basis[j][i];
    return out;
}

QMat transpose(const QMat& m) {
    if (m.empty()) return {};
    QMat t(m[0].size(), std::vector<Rat>(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
    return t;
}

QMat matmul(const QMat& a, const QMat& b) {
    if (a.empty() || b.empty()) return {};
    QMat c(a.size(), std::vector<Rat>(b[0].size(), Rat(0)));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < b[0].size(); ++j)
                c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

} // namespace logdisc
