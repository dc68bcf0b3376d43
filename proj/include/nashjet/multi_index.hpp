#pragma once

// Exponent vectors in N^s: the row/column labels of higher-order Jacobian
// matrices and the monomial keys of sparse polynomials.

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace nashjet {

class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
        for (int v : e_)
            if (v < 0) throw std::invalid_argument("multi-index exponents must be non-negative");
    }

    static MultiIndex zero(int nvars) { return MultiIndex(std::vector<int>(nvars, 0)); }

    static MultiIndex unit(int nvars, int i) {
        std::vector<int> e(static_cast<std::size_t>(nvars), 0);
        e.at(static_cast<std::size_t>(i)) = 1;
        return MultiIndex(std::move(e));
    }

    int size() const { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& exponents() const { return e_; }

    long norm() const {
        long t = 0;
        for (int v : e_) t += v;
        return t;
    }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
    }

    // prod e_i!
    Integer factorial() const {
        Integer r = 1, f;
        for (int v : e_) {
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(v));
            r *= f;
        }
        return r;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

private:
    std::vector<int> e_;
};

inline bool componentwise_leq(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw std::invalid_argument("multi-index dimension mismatch");
    for (int i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw std::invalid_argument("multi-index dimension mismatch");
    std::vector<int> e(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) e[static_cast<std::size_t>(i)] = a[i] + b[i];
    return MultiIndex(std::move(e));
}

// defined only when b <= a componentwise
inline MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
    if (!componentwise_leq(b, a))
        throw std::invalid_argument("multi-index subtraction requires componentwise order");
    std::vector<int> e(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) e[static_cast<std::size_t>(i)] = a[i] - b[i];
    return MultiIndex(std::move(e));
}

inline int compare_lex(const MultiIndex& a, const MultiIndex& b) {
    for (int i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

inline bool lex_less(const MultiIndex& a, const MultiIndex& b) { return compare_lex(a, b) < 0; }

// Unweighted graded reverse-lex: higher total degree wins; ties go to the
// multi-index with the smaller exponent at the last position where they differ.
inline bool grevlex_greater(const MultiIndex& a, const MultiIndex& b) {
    long na = a.norm(), nb = b.norm();
    if (na != nb) return na > nb;
    for (int i = a.size() - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

// Canonical enumeration order: total degree ascending, grevlex-greater first
// inside each degree block. For s = 2 this lists (1,0),(0,1),(2,0),(1,1),(0,2),...
inline bool canonical_less(const MultiIndex& a, const MultiIndex& b) {
    long na = a.norm(), nb = b.norm();
    if (na != nb) return na < nb;
    return grevlex_greater(a, b);
}

// prod C(a_i, g_i); zero when g_i > a_i for some i
inline Integer binomial_product(const MultiIndex& a, const MultiIndex& g) {
    if (a.size() != g.size()) throw std::invalid_argument("multi-index dimension mismatch");
    Integer r = 1, b;
    for (int i = 0; i < a.size(); ++i) {
        if (g[i] > a[i]) return Integer(0);
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(a[i]),
                     static_cast<unsigned long>(g[i]));
        r *= b;
    }
    return r;
}

namespace detail {
inline void compositions_rec(int nvars, int pos, int remaining, std::vector<int>& cur,
                             std::vector<MultiIndex>& out) {
    if (pos == nvars - 1) {
        cur[static_cast<std::size_t>(pos)] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur[static_cast<std::size_t>(pos)] = v;
        compositions_rec(nvars, pos + 1, remaining - v, cur, out);
    }
}
}  // namespace detail

// All multi-indices of the given total degree, in canonical order.
inline std::vector<MultiIndex> multi_indices_of_degree(int nvars, int degree) {
    if (nvars < 1) throw std::invalid_argument("need at least one variable");
    if (degree < 0) return {};
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
    detail::compositions_rec(nvars, 0, degree, cur, out);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

// All multi-indices with lo <= |m| <= hi, in canonical order.
inline std::vector<MultiIndex> multi_indices_up_to(int nvars, int lo, int hi) {
    std::vector<MultiIndex> out;
    for (int d = std::max(lo, 0); d <= hi; ++d) {
        auto block = multi_indices_of_degree(nvars, d);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

inline std::string to_string(const MultiIndex& m) {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < m.size(); ++i) {
        if (i) os << ',';
        os << m[i];
    }
    os << ')';
    return os.str();
}

}  // namespace nashjet
