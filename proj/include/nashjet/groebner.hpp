#pragma once

// Buchberger engine over Q with a weighted grevlex order: reduced bases,
// normal forms, ideal comparison, and graded quotient data (standard
// monomials, degree strata, zero-dimensionality). Pair selection follows the
// normal strategy (lowest weighted lcm degree first) with the coprime and
// chain criteria; intermediate remainders are kept content-free so
// coefficients stay small. Finished bases are immutable and safe to share.
//
// Local algebras defined in convergent power series are handled here in the
// polynomial ring: for weighted homogeneous ideals the two quotients have the
// same graded dimensions, so the graded data computed below is the local data.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "format.hpp"
#include "polynomial.hpp"

namespace nashjet {

namespace detail {

// terms ascending in the active order, leading term at the back
struct OrderedPoly {
    std::vector<Term> terms;

    bool is_zero() const { return terms.empty(); }
    const Term& leading() const { return terms.back(); }
};

inline OrderedPoly to_ordered(const Polynomial& p, const MonomialOrder& order) {
    OrderedPoly out;
    out.terms.assign(p.terms().begin(), p.terms().end());
    std::sort(out.terms.begin(), out.terms.end(),
              [&](const Term& a, const Term& b) { return order.less(a.monomial, b.monomial); });
    return out;
}

inline Polynomial from_ordered(const OrderedPoly& p, int nvars) {
    std::vector<Term> terms = p.terms;
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return lex_less(a.monomial, b.monomial); });
    return Polynomial::from_sorted_terms(nvars, std::move(terms));
}

// p - c * x^shift * q, merged in order
inline OrderedPoly subtract_shifted(const OrderedPoly& p, const OrderedPoly& q,
                                    const MultiIndex& shift, const Rational& c,
                                    const MonomialOrder& order) {
    OrderedPoly out;
    out.terms.reserve(p.terms.size() + q.terms.size());
    std::size_t i = 0, j = 0;
    while (i < p.terms.size() && j < q.terms.size()) {
        MultiIndex qm = q.terms[j].monomial + shift;
        if (order.less(p.terms[i].monomial, qm)) {
            out.terms.push_back(p.terms[i++]);
        } else if (order.less(qm, p.terms[i].monomial)) {
            out.terms.push_back(Term{std::move(qm), -(c * q.terms[j].coefficient)});
            ++j;
        } else {
            Rational coeff = p.terms[i].coefficient - c * q.terms[j].coefficient;
            if (coeff != 0) out.terms.push_back(Term{p.terms[i].monomial, std::move(coeff)});
            ++i;
            ++j;
        }
    }
    for (; i < p.terms.size(); ++i) out.terms.push_back(p.terms[i]);
    for (; j < q.terms.size(); ++j)
        out.terms.push_back(Term{q.terms[j].monomial + shift, -(c * q.terms[j].coefficient)});
    return out;
}

inline void make_content_free(OrderedPoly& p) {
    if (p.is_zero()) return;
    Integer g = 0, l = 1;
    for (const Term& t : p.terms) {
        g = gcd(g, t.coefficient.get_num());
        l = lcm(l, t.coefficient.get_den());
    }
    Rational scale = make_rational(l, abs(g));
    if (p.leading().coefficient < 0) scale = -scale;
    if (scale == 1) return;
    for (Term& t : p.terms) t.coefficient *= scale;
}

inline void make_monic(OrderedPoly& p) {
    if (p.is_zero()) return;
    Rational lc = p.leading().coefficient;
    if (lc == 1) return;
    for (Term& t : p.terms) t.coefficient /= lc;
}

// full normal form: every term of the result is reducible by no basis leading term
inline OrderedPoly normal_form_ordered(OrderedPoly f, const std::vector<OrderedPoly>& basis,
                                       const MonomialOrder& order) {
    std::vector<Term> out;
    while (!f.is_zero()) {
        const Term& lead = f.leading();
        const OrderedPoly* reducer = nullptr;
        for (const OrderedPoly& g : basis) {
            if (componentwise_leq(g.leading().monomial, lead.monomial)) {
                reducer = &g;
                break;
            }
        }
        if (!reducer) {
            out.push_back(lead);
            f.terms.pop_back();
            continue;
        }
        MultiIndex shift = lead.monomial - reducer->leading().monomial;
        Rational c = lead.coefficient / reducer->leading().coefficient;
        f = subtract_shifted(f, *reducer, shift, c, order);
    }
    std::reverse(out.begin(), out.end());  // emitted in decreasing order
    return OrderedPoly{std::move(out)};
}

inline MultiIndex lcm_exponent(const MultiIndex& a, const MultiIndex& b) {
    std::vector<int> e(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) e[static_cast<std::size_t>(i)] = std::max(a[i], b[i]);
    return MultiIndex(std::move(e));
}

struct PairKey {
    long degree;
    MultiIndex lcm;
    int i, j;
};

struct PairKeyLess {
    const MonomialOrder* order;
    bool operator()(const PairKey& a, const PairKey& b) const {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.lcm != b.lcm) return order->less(a.lcm, b.lcm);
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

}  // namespace detail

struct GroebnerBasis {
    MonomialOrder order;
    std::vector<Polynomial> elements;  // monic, autoreduced, ascending leading monomials
};

inline GroebnerBasis groebner_basis(const std::vector<Polynomial>& generators,
                                    const MonomialOrder& order) {
    const int s = order.weights.size();
    std::vector<detail::OrderedPoly> input;
    for (const Polynomial& g : generators) {
        if (g.is_zero()) continue;
        if (g.nvars() != s) throw std::invalid_argument("groebner_basis: dimension mismatch");
        input.push_back(detail::to_ordered(g, order));
    }
    // insert low leading terms first so the interreduction pass kills redundancy early
    std::stable_sort(input.begin(), input.end(),
              [&](const detail::OrderedPoly& a, const detail::OrderedPoly& b) {
                  long da = order.weights.degree(a.leading().monomial);
                  long db = order.weights.degree(b.leading().monomial);
                  if (da != db) return da < db;
                  return order.less(a.leading().monomial, b.leading().monomial);
              });

    std::vector<detail::OrderedPoly> basis;
    detail::PairKeyLess pair_less{&order};
    std::set<detail::PairKey, detail::PairKeyLess> queue(pair_less);
    std::set<std::pair<int, int>> done;

    auto mark_done = [&](int i, int j) { done.emplace(std::min(i, j), std::max(i, j)); };
    auto is_done = [&](int i, int j) {
        return done.count({std::min(i, j), std::max(i, j)}) > 0;
    };

    auto add_element = [&](detail::OrderedPoly h) {
        detail::make_content_free(h);
        int t = static_cast<int>(basis.size());
        for (int i = 0; i < t; ++i) {
            MultiIndex l = detail::lcm_exponent(basis[static_cast<std::size_t>(i)].leading().monomial,
                                                h.leading().monomial);
            queue.insert(detail::PairKey{order.weights.degree(l), std::move(l), i, t});
        }
        basis.push_back(std::move(h));
    };

    for (detail::OrderedPoly& g : input) {
        detail::OrderedPoly h = detail::normal_form_ordered(std::move(g), basis, order);
        if (!h.is_zero()) add_element(std::move(h));
    }

    while (!queue.empty()) {
        detail::PairKey key = *queue.begin();
        queue.erase(queue.begin());
        const int i = key.i, j = key.j;
        mark_done(i, j);
        const detail::OrderedPoly& gi = basis[static_cast<std::size_t>(i)];
        const detail::OrderedPoly& gj = basis[static_cast<std::size_t>(j)];
        // coprime criterion: lcm equals the product of the leading monomials
        if (key.lcm == gi.leading().monomial + gj.leading().monomial) continue;
        // chain criterion
        bool skip = false;
        for (int t = 0; t < static_cast<int>(basis.size()); ++t) {
            if (t == i || t == j) continue;
            if (componentwise_leq(basis[static_cast<std::size_t>(t)].leading().monomial, key.lcm) &&
                is_done(i, t) && is_done(j, t)) {
                skip = true;
                break;
            }
        }
        if (skip) continue;
        detail::OrderedPoly spoly = detail::subtract_shifted(
            detail::OrderedPoly{{}}, gi, key.lcm - gi.leading().monomial,
            -(Rational(1) / gi.leading().coefficient), order);
        spoly = detail::subtract_shifted(spoly, gj, key.lcm - gj.leading().monomial,
                                         Rational(1) / gj.leading().coefficient, order);
        detail::OrderedPoly h = detail::normal_form_ordered(std::move(spoly), basis, order);
        if (!h.is_zero()) add_element(std::move(h));
    }

    // minimalize: drop elements whose leading monomial is divisible by another's
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            const MultiIndex& mi = basis[i].leading().monomial;
            const MultiIndex& mj = basis[j].leading().monomial;
            if (componentwise_leq(mj, mi) && (mj != mi || j < i)) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<detail::OrderedPoly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) minimal.push_back(std::move(basis[i]));

    // tail-reduce each element against the others, then make monic
    std::vector<detail::OrderedPoly> reduced(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<detail::OrderedPoly> others;
        others.reserve(minimal.size() - 1);
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        reduced[i] = detail::normal_form_ordered(minimal[i], others, order);
        detail::make_monic(reduced[i]);
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const detail::OrderedPoly& a, const detail::OrderedPoly& b) {
                  return order.less(a.leading().monomial, b.leading().monomial);
              });

    GroebnerBasis out{order, {}};
    out.elements.reserve(reduced.size());
    for (const detail::OrderedPoly& g : reduced) out.elements.push_back(detail::from_ordered(g, s));
    return out;
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis) {
    if (f.is_zero()) return f;
    if (f.nvars() != basis.order.weights.size())
        throw std::invalid_argument("normal_form: dimension mismatch");
    std::vector<detail::OrderedPoly> b;
    b.reserve(basis.elements.size());
    for (const Polynomial& g : basis.elements) b.push_back(detail::to_ordered(g, basis.order));
    return detail::from_ordered(
        detail::normal_form_ordered(detail::to_ordered(f, basis.order), b, basis.order), f.nvars());
}

// cached ordered view for repeated reductions against one basis
class Reducer {
public:
    explicit Reducer(const GroebnerBasis& basis) : order_(basis.order) {
        nvars_ = basis.order.weights.size();
        basis_.reserve(basis.elements.size());
        for (const Polynomial& g : basis.elements) basis_.push_back(detail::to_ordered(g, order_));
    }

    Polynomial reduce(const Polynomial& f) const {
        if (f.is_zero()) return f;
        return detail::from_ordered(
            detail::normal_form_ordered(detail::to_ordered(f, order_), basis_, order_), nvars_);
    }

    bool reduces_to_zero(const Polynomial& f) const {
        return detail::normal_form_ordered(detail::to_ordered(f, order_), basis_, order_).is_zero();
    }

private:
    MonomialOrder order_;
    int nvars_;
    std::vector<detail::OrderedPoly> basis_;
};

// every generator of b lies in <a>
inline bool ideal_contains(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                           const MonomialOrder& order) {
    Reducer reducer(groebner_basis(a, order));
    for (const Polynomial& g : b)
        if (!reducer.reduces_to_zero(g)) return false;
    return true;
}

inline bool ideal_equal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                        const MonomialOrder& order) {
    return ideal_contains(a, b, order) && ideal_contains(b, a, order);
}

struct GradedQuotient {
    GradedQuotient(std::vector<Polynomial> gens, GroebnerBasis groebner)
        : generators(std::move(gens)), basis(std::move(groebner)) {}

    std::vector<Polynomial> generators;
    GroebnerBasis basis;
    bool finite_dimensional = false;
    int infinite_variable = -1;               // witness when not finite-dimensional
    std::vector<MultiIndex> standard_monomials;  // weighted degree ascending, canonical ties
    std::map<long, long> degree_strata;
    long total_dimension = 0;
    std::optional<long> socle_degree;
};

// Standard-monomial basis of Q[x]/<generators> under the given order. Reports
// infinite-dimensionality explicitly (some variable has no pure power among
// the leading terms) instead of looping.
inline GradedQuotient quotient_basis(std::vector<Polynomial> generators,
                                     const MonomialOrder& order) {
    const int s = order.weights.size();
    GroebnerBasis basis = groebner_basis(generators, order);
    GradedQuotient q(std::move(generators), std::move(basis));

    std::vector<MultiIndex> leading;
    leading.reserve(q.basis.elements.size());
    for (const Polynomial& g : q.basis.elements)
        leading.push_back(g.leading_term(order).monomial);

    // unit ideal: the quotient is the zero ring
    for (const MultiIndex& lt : leading) {
        if (lt.is_zero()) {
            q.finite_dimensional = true;
            return q;
        }
    }

    std::vector<int> bound(static_cast<std::size_t>(s), -1);
    for (const MultiIndex& lt : leading) {
        int support = -1;
        bool pure = true;
        for (int i = 0; i < s; ++i) {
            if (lt[i] > 0) {
                if (support >= 0) {
                    pure = false;
                    break;
                }
                support = i;
            }
        }
        if (pure && support >= 0) {
            int& b = bound[static_cast<std::size_t>(support)];
            if (b < 0 || lt[support] < b) b = lt[support];
        }
    }
    for (int i = 0; i < s; ++i) {
        if (bound[static_cast<std::size_t>(i)] < 0) {
            q.finite_dimensional = false;
            q.infinite_variable = i;
            return q;
        }
    }

    q.finite_dimensional = true;
    std::vector<int> cur(static_cast<std::size_t>(s), 0);
    std::vector<MultiIndex> standard;
    // walk the finite box prod [0, bound_i) and keep monomials outside <LT>
    for (;;) {
        MultiIndex m{std::vector<int>(cur)};
        bool divisible = false;
        for (const MultiIndex& lt : leading) {
            if (componentwise_leq(lt, m)) {
                divisible = true;
                break;
            }
        }
        if (!divisible) standard.push_back(std::move(m));
        int pos = 0;
        while (pos < s) {
            if (++cur[static_cast<std::size_t>(pos)] < bound[static_cast<std::size_t>(pos)]) break;
            cur[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == s) break;
    }
    std::sort(standard.begin(), standard.end(), [&](const MultiIndex& a, const MultiIndex& b) {
        long da = order.weights.degree(a), db = order.weights.degree(b);
        if (da != db) return da < db;
        return canonical_less(a, b);
    });
    q.standard_monomials = std::move(standard);
    q.total_dimension = static_cast<long>(q.standard_monomials.size());
    for (const MultiIndex& m : q.standard_monomials) ++q.degree_strata[order.weights.degree(m)];
    if (!q.degree_strata.empty()) q.socle_degree = q.degree_strata.rbegin()->first;
    return q;
}

// Degree strata of a finite-dimensional graded quotient; rejects
// non-homogeneous generators, naming the offender.
inline std::map<long, long> graded_dimensions(const GradedQuotient& q) {
    for (const Polynomial& g : q.generators) {
        if (!is_weighted_homogeneous(g, q.basis.order.weights))
            throw std::invalid_argument("generator " + to_string(g) +
                                        " is not weighted homogeneous");
    }
    if (!q.finite_dimensional)
        throw std::invalid_argument("graded_dimensions: quotient is not finite-dimensional");
    return q.degree_strata;
}

}  // namespace nashjet
