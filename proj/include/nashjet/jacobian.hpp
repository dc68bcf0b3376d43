#pragma once

// The order-n Jacobian matrix: rows indexed by multi-indices |beta| <= n-1,
// columns by 1 <= |alpha| <= n, entry (beta, alpha) the Hasse derivative of f
// at alpha - beta. Entries vanish when alpha_i < beta_i for some i; the
// beta = alpha cells carry 0 or f depending on the variant (both conventions
// generate the same ideal modulo f).

#include <cstdint>
#include <vector>

#include "polynomial.hpp"

namespace nashjet {

enum class MatrixVariant { zero_diagonal, f_diagonal };

inline const char* to_string(MatrixVariant v) {
    return v == MatrixVariant::zero_diagonal ? "zero-diagonal" : "f-diagonal";
}

struct IndexSets {
    std::vector<MultiIndex> rows;  // |beta| <= n-1, canonical order
    std::vector<MultiIndex> cols;  // 1 <= |alpha| <= n, canonical order
};

// Row count C(n+s-1, s), column count C(n+s, s) - 1.
inline IndexSets index_sets(int n, int s) {
    if (n < 1) throw std::invalid_argument("order n must be >= 1");
    if (s < 1) throw std::invalid_argument("dimension s must be >= 1");
    return IndexSets{multi_indices_up_to(s, 0, n - 1), multi_indices_up_to(s, 1, n)};
}

class JacobianMatrix {
public:
    JacobianMatrix(Polynomial f, int n, MatrixVariant variant, IndexSets idx,
                   std::vector<Polynomial> entries)
        : f_(std::move(f)),
          n_(n),
          variant_(variant),
          rows_(std::move(idx.rows)),
          cols_(std::move(idx.cols)),
          entries_(std::move(entries)) {}

    const Polynomial& f() const { return f_; }
    int order() const { return n_; }
    int nvars() const { return f_.nvars(); }
    MatrixVariant variant() const { return variant_; }
    const std::vector<MultiIndex>& rows() const { return rows_; }
    const std::vector<MultiIndex>& cols() const { return cols_; }
    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return cols_.size(); }

    const Polynomial& entry(std::size_t i, std::size_t j) const {
        return entries_[i * cols_.size() + j];
    }

private:
    Polynomial f_;
    int n_;
    MatrixVariant variant_;
    std::vector<MultiIndex> rows_, cols_;
    std::vector<Polynomial> entries_;  // row-major
};

inline JacobianMatrix build_jacobian(const Polynomial& f, int n,
                                     MatrixVariant variant = MatrixVariant::zero_diagonal) {
    if (f.is_zero()) throw std::invalid_argument("build_jacobian: f must be nonzero");
    IndexSets idx = index_sets(n, f.nvars());
    std::vector<Polynomial> entries;
    entries.reserve(idx.rows.size() * idx.cols.size());
    for (const MultiIndex& beta : idx.rows) {
        for (const MultiIndex& alpha : idx.cols) {
            if (alpha == beta) {
                entries.push_back(variant == MatrixVariant::f_diagonal ? f
                                                                       : Polynomial::zero(f.nvars()));
            } else if (componentwise_leq(beta, alpha)) {
                entries.push_back(hasse_derivative(f, alpha - beta));
            } else {
                entries.push_back(Polynomial::zero(f.nvars()));
            }
        }
    }
    return JacobianMatrix(f, n, variant, std::move(idx), std::move(entries));
}

}  // namespace nashjet
