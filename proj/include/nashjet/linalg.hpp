#pragma once

// Exact nullspace of a rational matrix. Rows are scaled to content-free
// integers, forward elimination is fraction-free (Bareiss), and the basis
// vectors produced by back-substitution are normalized to integer,
// content-free form with the free coordinate positive.

#include <vector>

#include "rational.hpp"

namespace nashjet {

using RationalMatrix = std::vector<std::vector<Rational>>;

namespace detail {

struct Echelon {
    std::vector<std::vector<Integer>> rows;
    std::vector<int> pivot_cols;  // one per row, ascending
};

inline Echelon fraction_free_echelon(const RationalMatrix& input, int ncols) {
    std::vector<std::vector<Integer>> rows;
    rows.reserve(input.size());
    for (const auto& r : input) {
        if (static_cast<int>(r.size()) != ncols)
            throw std::invalid_argument("matrix rows must all have the given width");
        Integer l = 1;
        bool nonzero = false;
        for (const Rational& v : r) {
            if (v != 0) nonzero = true;
            l = lcm(l, v.get_den());
        }
        if (!nonzero) continue;
        std::vector<Integer> row;
        row.reserve(r.size());
        Integer g = 0;
        for (const Rational& v : r) {
            Rational scaled = v * Rational(l);
            row.push_back(scaled.get_num());
            g = gcd(g, row.back());
        }
        for (Integer& v : row) v /= g;
        rows.push_back(std::move(row));
    }

    Echelon e;
    Integer prev = 1;
    std::size_t rank = 0;
    for (int col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][static_cast<std::size_t>(col)] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const Integer& p = rows[rank][static_cast<std::size_t>(col)];
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            const Integer head = rows[i][static_cast<std::size_t>(col)];
            for (int j = col; j < ncols; ++j) {
                Integer v = rows[i][static_cast<std::size_t>(j)] * p -
                            head * rows[rank][static_cast<std::size_t>(j)];
                rows[i][static_cast<std::size_t>(j)] = v / prev;  // exact
            }
        }
        prev = p;
        e.pivot_cols.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    e.rows = std::move(rows);
    return e;
}

}  // namespace detail

inline long matrix_rank(const RationalMatrix& a, int ncols) {
    return static_cast<long>(detail::fraction_free_echelon(a, ncols).pivot_cols.size());
}

inline std::vector<std::vector<Rational>> nullspace_basis(const RationalMatrix& a, int ncols) {
    detail::Echelon e = detail::fraction_free_echelon(a, ncols);
    const std::size_t rank = e.rows.size();
    std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
    for (int c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<std::vector<Rational>> basis;
    for (int free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(ncols), Rational(0));
        v[static_cast<std::size_t>(free_col)] = 1;
        for (std::size_t r = rank; r-- > 0;) {
            const int pc = e.pivot_cols[r];
            Rational sum = 0;
            for (int j = pc + 1; j < ncols; ++j) {
                const Integer& coeff = e.rows[r][static_cast<std::size_t>(j)];
                if (coeff != 0 && v[static_cast<std::size_t>(j)] != 0)
                    sum += Rational(coeff) * v[static_cast<std::size_t>(j)];
            }
            v[static_cast<std::size_t>(pc)] = -sum / Rational(e.rows[r][static_cast<std::size_t>(pc)]);
        }
        // normalize to integer, content-free form; the free coordinate stays positive
        Integer l = 1;
        for (const Rational& x : v) l = lcm(l, x.get_den());
        Integer g = 0;
        for (Rational& x : v) {
            x *= Rational(l);
            g = gcd(g, x.get_num());
        }
        for (Rational& x : v) x /= Rational(g);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace nashjet
