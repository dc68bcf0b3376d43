#pragma once

// Sparse multivariate polynomials over Q. Terms are kept lex-sorted with no
// zero coefficients, so equality is structural and iteration order is fixed.
// Polynomials are immutable values after construction and safe to share
// across threads.

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monomial_order.hpp"

namespace nashjet {

struct Term {
    MultiIndex monomial;
    Rational coefficient;

    friend bool operator==(const Term& a, const Term& b) {
        return a.monomial == b.monomial && a.coefficient == b.coefficient;
    }
};

class Polynomial {
public:
    Polynomial() = default;

    static Polynomial zero(int nvars) {
        Polynomial p;
        p.nvars_ = nvars;
        return p;
    }

    static Polynomial constant(int nvars, Rational c) {
        return monomial(MultiIndex::zero(nvars), std::move(c));
    }

    static Polynomial monomial(MultiIndex m, Rational c) {
        Polynomial p;
        p.nvars_ = m.size();
        if (c != 0) p.terms_.push_back(Term{std::move(m), std::move(c)});
        return p;
    }

    static Polynomial variable(int nvars, int i) {
        return monomial(MultiIndex::unit(nvars, i), Rational(1));
    }

    // sorts, merges duplicates, drops zeros
    static Polynomial from_terms(int nvars, std::vector<Term> terms) {
        std::map<MultiIndex, Rational, bool (*)(const MultiIndex&, const MultiIndex&)> acc(lex_less);
        for (auto& t : terms) {
            if (t.monomial.size() != nvars)
                throw std::invalid_argument("term dimension mismatch");
            acc[std::move(t.monomial)] += t.coefficient;
        }
        Polynomial p;
        p.nvars_ = nvars;
        for (auto& [m, c] : acc)
            if (c != 0) p.terms_.push_back(Term{m, c});
        return p;
    }

    // trusts the input: lex-sorted, unique monomials, no zero coefficients
    static Polynomial from_sorted_terms(int nvars, std::vector<Term> terms) {
        Polynomial p;
        p.nvars_ = nvars;
        p.terms_ = std::move(terms);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    long total_degree() const {
        if (is_zero()) throw std::logic_error("total degree of the zero polynomial");
        long d = 0;
        for (const Term& t : terms_) d = std::max(d, t.monomial.norm());
        return d;
    }

    const Term& leading_term(const MonomialOrder& order) const {
        if (is_zero()) throw std::logic_error("leading term of the zero polynomial");
        const Term* best = &terms_.front();
        for (const Term& t : terms_)
            if (order.greater(t.monomial, best->monomial)) best = &t;
        return *best;
    }

    Polynomial operator-() const {
        Polynomial p = *this;
        for (Term& t : p.terms_) t.coefficient = -t.coefficient;
        return p;
    }

    Polynomial operator+(const Polynomial& o) const { return merged(o, false); }
    Polynomial operator-(const Polynomial& o) const { return merged(o, true); }

    Polynomial operator*(const Rational& c) const {
        if (c == 0) return zero(nvars_);
        Polynomial p = *this;
        for (Term& t : p.terms_) t.coefficient *= c;
        return p;
    }

    // multiply by the monomial c * x^m (order-preserving shift of exponents)
    Polynomial shifted(const MultiIndex& m, const Rational& c) const {
        if (m.size() != nvars_) throw std::invalid_argument("shift dimension mismatch");
        if (c == 0) return zero(nvars_);
        Polynomial p;
        p.nvars_ = nvars_;
        p.terms_.reserve(terms_.size());
        for (const Term& t : terms_) p.terms_.push_back(Term{t.monomial + m, t.coefficient * c});
        return p;
    }

    Polynomial operator*(const Polynomial& o) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
    Polynomial merged(const Polynomial& o, bool subtract) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial dimension mismatch");
        Polynomial p;
        p.nvars_ = nvars_;
        p.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            int cmp = compare_lex(terms_[i].monomial, o.terms_[j].monomial);
            if (cmp < 0) {
                p.terms_.push_back(terms_[i++]);
            } else if (cmp > 0) {
                Term t = o.terms_[j++];
                if (subtract) t.coefficient = -t.coefficient;
                p.terms_.push_back(std::move(t));
            } else {
                Rational c = terms_[i].coefficient;
                if (subtract)
                    c -= o.terms_[j].coefficient;
                else
                    c += o.terms_[j].coefficient;
                if (c != 0) p.terms_.push_back(Term{terms_[i].monomial, std::move(c)});
                ++i;
                ++j;
            }
        }
        for (; i < terms_.size(); ++i) p.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) {
            Term t = o.terms_[j];
            if (subtract) t.coefficient = -t.coefficient;
            p.terms_.push_back(std::move(t));
        }
        return p;
    }

    int nvars_ = 0;
    std::vector<Term> terms_;
};

// Accumulates sums of scaled polynomials/products without building
// intermediate term vectors; used by multiplication and determinants.
class PolynomialAccumulator {
public:
    explicit PolynomialAccumulator(int nvars) : nvars_(nvars), acc_(lex_less) {}

    void add_scaled(const Polynomial& p, const Rational& c) {
        if (c == 0) return;
        for (const Term& t : p.terms()) acc_[t.monomial] += t.coefficient * c;
    }

    void add_product(const Polynomial& a, const Polynomial& b, bool negate = false) {
        const Polynomial& outer = a.term_count() <= b.term_count() ? a : b;
        const Polynomial& inner = a.term_count() <= b.term_count() ? b : a;
        for (const Term& t : outer.terms()) {
            Rational c = negate ? -t.coefficient : t.coefficient;
            for (const Term& u : inner.terms()) acc_[t.monomial + u.monomial] += c * u.coefficient;
        }
    }

    Polynomial take() {
        std::vector<Term> terms;
        terms.reserve(acc_.size());
        for (auto& [m, c] : acc_)
            if (c != 0) terms.push_back(Term{m, std::move(c)});
        acc_.clear();
        return Polynomial::from_sorted_terms(nvars_, std::move(terms));
    }

private:
    int nvars_;
    std::map<MultiIndex, Rational, bool (*)(const MultiIndex&, const MultiIndex&)> acc_;
};

inline Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial dimension mismatch");
    if (is_zero() || o.is_zero()) return zero(nvars_);
    PolynomialAccumulator acc(nvars_);
    acc.add_product(*this, o);
    return acc.take();
}

// total order on polynomials, used for deterministic deduplication
inline int compare(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars()) return a.nvars() < b.nvars() ? -1 : 1;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t k = 0; k < std::min(ta.size(), tb.size()); ++k) {
        int cmp = compare_lex(ta[k].monomial, tb[k].monomial);
        if (cmp != 0) return cmp;
        int cc = ::cmp(ta[k].coefficient, tb[k].coefficient);
        if (cc != 0) return cc < 0 ? -1 : 1;
    }
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    return 0;
}

struct PolynomialLess {
    bool operator()(const Polynomial& a, const Polynomial& b) const { return compare(a, b) < 0; }
};

// (1/gamma!) d^gamma f: the term c x^a maps to c * prod C(a_i, gamma_i) * x^(a-gamma).
inline Polynomial hasse_derivative(const Polynomial& f, const MultiIndex& gamma) {
    if (gamma.size() != f.nvars())
        throw std::invalid_argument("hasse_derivative: dimension mismatch");
    std::vector<Term> terms;
    for (const Term& t : f.terms()) {
        if (!componentwise_leq(gamma, t.monomial)) continue;
        Integer b = binomial_product(t.monomial, gamma);
        terms.push_back(Term{t.monomial - gamma, t.coefficient * Rational(b)});
    }
    // subtracting a fixed gamma preserves lex order, no re-sort needed
    return Polynomial::from_sorted_terms(f.nvars(), std::move(terms));
}

// ordinary first partial, i zero-based
inline Polynomial partial_derivative(const Polynomial& f, int i) {
    if (i < 0 || i >= f.nvars()) throw std::out_of_range("partial_derivative: variable index");
    return hasse_derivative(f, MultiIndex::unit(f.nvars(), i));
}

struct WeightedDegree {
    long degree = 0;          // common degree, or max term degree when mixed
    bool homogeneous = true;
};

// absent for the zero polynomial
inline std::optional<WeightedDegree> weighted_degree(const Polynomial& f, const WeightSystem& w) {
    if (f.is_zero()) return std::nullopt;
    WeightedDegree r;
    bool first = true;
    for (const Term& t : f.terms()) {
        long d = w.degree(t.monomial);
        if (first) {
            r.degree = d;
            first = false;
        } else if (d != r.degree) {
            r.homogeneous = false;
            r.degree = std::max(r.degree, d);
        }
    }
    return r;
}

// zero counts as weighted homogeneous (of every degree)
inline bool is_weighted_homogeneous(const Polynomial& f, const WeightSystem& w) {
    auto d = weighted_degree(f, w);
    return !d || d->homogeneous;
}

// sum_i w_i x_i df/dx_i; equals deg_w(f) * f exactly on weighted homogeneous f
inline Polynomial euler_apply(const Polynomial& f, const WeightSystem& w) {
    if (w.size() != f.nvars()) throw std::invalid_argument("euler_apply: dimension mismatch");
    PolynomialAccumulator acc(f.nvars());
    for (int i = 0; i < f.nvars(); ++i) {
        Polynomial p = partial_derivative(f, i).shifted(MultiIndex::unit(f.nvars(), i),
                                                        Rational(w[i]));
        acc.add_scaled(p, Rational(1));
    }
    return acc.take();
}

// content-free form: integer coefficients with gcd 1 and positive leading
// coefficient in the unweighted grevlex order
inline Polynomial normalize_content(const Polynomial& f) {
    if (f.is_zero()) return f;
    Integer g = 0, l = 1;
    for (const Term& t : f.terms()) {
        g = gcd(g, t.coefficient.get_num());
        l = lcm(l, t.coefficient.get_den());
    }
    Rational scale = make_rational(l, abs(g));
    const Term& lead = f.leading_term(MonomialOrder::grevlex(f.nvars()));
    if (lead.coefficient < 0) scale = -scale;
    return f * scale;
}

// exact quotient p / q; throws std::domain_error when q does not divide p
inline Polynomial exact_divide(const Polynomial& p, const Polynomial& q) {
    if (q.is_zero()) throw std::domain_error("exact_divide: division by zero polynomial");
    if (p.is_zero()) return Polynomial::zero(p.nvars());
    MonomialOrder ord = MonomialOrder::grevlex(p.nvars());
    const Term& qlead = q.leading_term(ord);
    Polynomial rem = p;
    std::vector<Term> quot;
    while (!rem.is_zero()) {
        const Term& rlead = rem.leading_term(ord);
        if (!componentwise_leq(qlead.monomial, rlead.monomial))
            throw std::domain_error("exact_divide: not divisible");
        Term t{rlead.monomial - qlead.monomial, rlead.coefficient / qlead.coefficient};
        rem = rem - q.shifted(t.monomial, t.coefficient);
        quot.push_back(std::move(t));
    }
    return Polynomial::from_terms(p.nvars(), std::move(quot));
}

}  // namespace nashjet
