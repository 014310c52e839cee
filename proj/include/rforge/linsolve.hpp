#pragma once

#include <optional>
#include <vector>

#include "rforge/numbers.hpp"

namespace rforge {

/// Dense exact linear algebra over Q(i), small systems only.  Row-major.
struct LinearSystem {
    int rows = 0, cols = 0;
    std::vector<GaussianRational> a;  // rows x cols
    std::vector<GaussianRational> b;  // rows

    LinearSystem(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c), b(r) {}
    GaussianRational& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const GaussianRational& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }
};

/// Gaussian elimination with exact pivoting (any nonzero pivot works over a
/// field).  Returns a particular solution if the system is consistent.
inline std::optional<std::vector<GaussianRational>> solve(LinearSystem sys) {
    int r = 0;
    std::vector<int> pivot_col_of_row;
    for (int c = 0; c < sys.cols && r < sys.rows; ++c) {
        int piv = -1;
        for (int i = r; i < sys.rows; ++i)
            if (!sys.at(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < sys.cols; ++j) std::swap(sys.at(piv, j), sys.at(r, j));
            std::swap(sys.b[piv], sys.b[r]);
        }
        GaussianRational inv = GaussianRational(1) / sys.at(r, c);
        for (int j = c; j < sys.cols; ++j) sys.at(r, j) *= inv;
        sys.b[r] *= inv;
        for (int i = 0; i < sys.rows; ++i) {
            if (i == r || sys.at(i, c).is_zero()) continue;
            GaussianRational f = sys.at(i, c);
            for (int j = c; j < sys.cols; ++j) sys.at(i, j) -= f * sys.at(r, j);
            sys.b[i] -= f * sys.b[r];
        }
        pivot_col_of_row.push_back(c);
        ++r;
    }
    for (int i = r; i < sys.rows; ++i)
        if (!sys.b[i].is_zero()) return std::nullopt;
    std::vector<GaussianRational> x(sys.cols);
    for (int i = 0; i < r; ++i) x[pivot_col_of_row[i]] = sys.b[i];
    return x;
}

/// Rank of the coefficient matrix alone.
inline int rank(LinearSystem sys) {
    int r = 0;
    for (int c = 0; c < sys.cols && r < sys.rows; ++c) {
        int piv = -1;
        for (int i = r; i < sys.rows; ++i)
            if (!sys.at(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < sys.cols; ++j) std::swap(sys.at(piv, j), sys.at(r, j));
        GaussianRational inv = GaussianRational(1) / sys.at(r, c);
        for (int j = c; j < sys.cols; ++j) sys.at(r, j) *= inv;
        for (int i = r + 1; i < sys.rows; ++i) {
            if (sys.at(i, c).is_zero()) continue;
            GaussianRational f = sys.at(i, c);
            for (int j = c; j < sys.cols; ++j) sys.at(i, j) -= f * sys.at(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace rforge
