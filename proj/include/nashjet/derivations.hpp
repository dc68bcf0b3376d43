#pragma once

// Graded pieces of Der(A) for A = Q[x]/I with I weighted homogeneous. A
// degree-e derivation is determined by images r_i of the variables with
// deg_w(r_i) = w_i + e, written over standard monomials so representatives
// are unique; the tuple defines a lift of the derivation to the polynomial
// ring, and by the Leibniz rule the lift preserves I exactly when it sends
// every generator back into I. That membership is one linear condition per
// standard monomial, and the degree-e space is the exact rational nullspace.

#include <map>

#include "groebner.hpp"
#include "linalg.hpp"
#include "parallel.hpp"

namespace nashjet {

struct GradedDerivation {
    long degree = 0;
    std::vector<Polynomial> images;  // r_1..r_s over standard monomials
};

struct DerivationSpaceReport {
    long degree = 0;
    long dimension = 0;
    std::vector<GradedDerivation> basis;
};

// NF(sum_i r_i dg/dx_i) == 0 for every generator g of q
inline bool tuple_preserves_ideal(const std::vector<Polynomial>& images, const GradedQuotient& q,
                                  const Reducer& reducer) {
    const int s = q.basis.order.weights.size();
    for (const Polynomial& g : q.generators) {
        PolynomialAccumulator acc(s);
        for (int i = 0; i < s; ++i) {
            if (images[static_cast<std::size_t>(i)].is_zero()) continue;
            acc.add_product(images[static_cast<std::size_t>(i)], partial_derivative(g, i));
        }
        if (!reducer.reduces_to_zero(acc.take())) return false;
    }
    return true;
}

namespace detail {

inline void require_graded_quotient(const GradedQuotient& q) {
    for (const Polynomial& g : q.generators)
        if (!is_weighted_homogeneous(g, q.basis.order.weights))
            throw std::invalid_argument("derivations need weighted homogeneous generators; " +
                                        nashjet::to_string(g) + " is not");
    if (!q.finite_dimensional)
        throw std::invalid_argument("derivations need a finite-dimensional quotient");
}

}  // namespace detail

inline DerivationSpaceReport derivation_space(const GradedQuotient& q, long degree) {
    detail::require_graded_quotient(q);
    const WeightSystem& w = q.basis.order.weights;
    const int s = w.size();

    // unknowns: coefficients of r_i over standard monomials of degree w_i + degree
    std::vector<std::pair<int, MultiIndex>> unknowns;
    for (int i = 0; i < s; ++i) {
        const long target = w[i] + degree;
        if (target < 0) continue;
        for (const MultiIndex& m : q.standard_monomials)
            if (w.degree(m) == target) unknowns.emplace_back(i, m);
    }
    DerivationSpaceReport report;
    report.degree = degree;
    if (unknowns.empty()) return report;

    std::map<std::vector<int>, int> monomial_col;  // standard monomial -> equation slot
    auto slot = [&](const MultiIndex& m) {
        auto [it, fresh] = monomial_col.emplace(m.exponents(), static_cast<int>(monomial_col.size()));
        (void)fresh;
        return it->second;
    };

    Reducer reducer(q.basis);
    // one block of equations per basis element g: NF(sum r_i dg/dx_i) = 0
    std::vector<std::vector<std::pair<int, Rational>>> columns(unknowns.size());
    int eq_count = 0;
    for (const Polynomial& g : q.basis.elements) {
        std::vector<Polynomial> partials;
        partials.reserve(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) partials.push_back(partial_derivative(g, i));
        monomial_col.clear();
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            const auto& [var, mono] = unknowns[u];
            const Polynomial& p = partials[static_cast<std::size_t>(var)];
            if (p.is_zero()) continue;
            Polynomial reduced = reducer.reduce(p.shifted(mono, Rational(1)));
            for (const Term& t : reduced.terms())
                columns[u].emplace_back(eq_count + slot(t.monomial), t.coefficient);
        }
        eq_count += static_cast<int>(monomial_col.size());
    }

    RationalMatrix mat(static_cast<std::size_t>(eq_count),
                       std::vector<Rational>(unknowns.size(), Rational(0)));
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        for (const auto& [row, c] : columns[u]) mat[static_cast<std::size_t>(row)][u] = c;

    std::vector<std::vector<Rational>> kernel = nullspace_basis(mat, static_cast<int>(unknowns.size()));
    report.dimension = static_cast<long>(kernel.size());
    for (const auto& vec : kernel) {
        GradedDerivation d;
        d.degree = degree;
        std::vector<std::vector<Term>> images(static_cast<std::size_t>(s));
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            if (vec[u] == 0) continue;
            images[static_cast<std::size_t>(unknowns[u].first)].push_back(
                Term{unknowns[u].second, vec[u]});
        }
        for (int i = 0; i < s; ++i)
            d.images.push_back(Polynomial::from_terms(s, std::move(images[static_cast<std::size_t>(i)])));
        // independent soundness re-check of the solve, against the original generators
        if (!tuple_preserves_ideal(d.images, q, reducer))
            throw std::logic_error("derivation solve produced a tuple that fails re-verification");
        report.basis.push_back(std::move(d));
    }
    return report;
}

// (w_1 x_1, ..., w_s x_s); preserves every weighted homogeneous ideal
inline std::vector<Polynomial> euler_tuple(const WeightSystem& w) {
    std::vector<Polynomial> images;
    images.reserve(static_cast<std::size_t>(w.size()));
    for (int i = 0; i < w.size(); ++i)
        images.push_back(Polynomial::monomial(MultiIndex::unit(w.size(), i), Rational(w[i])));
    return images;
}

// Complete scan of negative degrees e in [-max_i w_i, -1]. A derivation of
// degree e < -max_i w_i sends every x_i into a negative stratum, which is
// zero, so the scanned window decides existence.
inline std::map<long, DerivationSpaceReport> negative_derivation_scan(const GradedQuotient& q,
                                                                      unsigned threads = 0) {
    detail::require_graded_quotient(q);
    const long lo = -static_cast<long>(q.basis.order.weights.max_weight());
    std::vector<DerivationSpaceReport> slots(static_cast<std::size_t>(-lo));
    parallel_chunks(static_cast<std::uint64_t>(-lo), 1, threads,
                    [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
                        for (std::uint64_t i = begin; i < end; ++i)
                            slots[i] = derivation_space(q, lo + static_cast<long>(i));
                    });
    std::map<long, DerivationSpaceReport> out;
    for (std::size_t i = 0; i < slots.size(); ++i) out.emplace(lo + static_cast<long>(i), std::move(slots[i]));
    return out;
}

// All graded dimensions over [-max_i w_i, socle]; degrees above the socle are
// provably zero because every nonzero image must land in a nonzero stratum.
inline std::map<long, long> full_derivation_dims(const GradedQuotient& q, unsigned threads = 0) {
    detail::require_graded_quotient(q);
    const long lo = -static_cast<long>(q.basis.order.weights.max_weight());
    const long hi = q.socle_degree.value_or(lo - 1);
    std::map<long, long> out;
    if (hi < lo) return out;
    const std::uint64_t count = static_cast<std::uint64_t>(hi - lo + 1);
    std::vector<long> dims(static_cast<std::size_t>(count), 0);
    parallel_chunks(count, 1, threads, [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i)
            dims[i] = derivation_space(q, lo + static_cast<long>(i)).dimension;
    });
    for (std::uint64_t i = 0; i < count; ++i) out.emplace(lo + static_cast<long>(i), dims[i]);
    return out;
}

}  // namespace nashjet
