#pragma once

// Per-singularity verification: hypothesis checks (weighted homogeneity, the
// weight chain d >= 2w_1 >= ... >= 2w_s > 0, isolatedness), minor degree
// bounds and gradedness, the J_n in J_1^3 containment, matrix-variant
// equivalence modulo f, and the absence of negative weighted derivations.
// Hypothesis failures demote dependent checks to "skipped" because those
// statements are conditional; every skip carries a machine-readable reason
// and every failure carries a finite, re-checkable witness.

#include <chrono>
#include <numeric>

#include "derivations.hpp"
#include "minors.hpp"
#include "parse.hpp"

namespace nashjet {

enum class CheckOutcome { pass, fail, skipped };

inline const char* to_string(CheckOutcome o) {
    switch (o) {
        case CheckOutcome::pass: return "pass";
        case CheckOutcome::fail: return "fail";
        default: return "skipped";
    }
}

enum class SkipReason {
    none,
    hypothesis_failed,     // weight-chain or isolatedness hypotheses not satisfied
    order_out_of_scope,    // statement requires n >= 2
    case_split_excluded,   // containment case s = n = 2 handled separately
    resource_cap,          // subset count above the configured cap
    infinite_dimensional,  // quotient is not finite-dimensional
    baseline_unlabeled     // n = 1 scans are informational only
};

inline const char* to_string(SkipReason r) {
    switch (r) {
        case SkipReason::none: return "none";
        case SkipReason::hypothesis_failed: return "hypothesis-failed";
        case SkipReason::order_out_of_scope: return "n-out-of-scope";
        case SkipReason::case_split_excluded: return "case-split-excluded";
        case SkipReason::resource_cap: return "resource-cap";
        case SkipReason::infinite_dimensional: return "infinite-dimensional";
        default: return "n1-baseline-unlabeled";
    }
}

struct Verdict {
    std::string check;
    int n = 0;
    CheckOutcome outcome = CheckOutcome::skipped;
    SkipReason reason = SkipReason::none;
    std::string detail;
    std::vector<std::pair<std::string, std::string>> witness;
};

struct SingularityInstance {
    std::string name;
    Polynomial f;
    WeightSystem weights;
    std::vector<int> n_values;
};

struct VerifyOptions {
    std::uint64_t minor_cap = default_minor_cap;
    unsigned threads = 0;
};

namespace detail {

inline Verdict make_skip(const std::string& check, int n, SkipReason reason,
                         const std::string& detail) {
    Verdict v;
    v.check = check;
    v.n = n;
    v.outcome = CheckOutcome::skipped;
    v.reason = reason;
    v.detail = detail;
    return v;
}

// weights sorted descending with the permutation applied to f's variables
struct SortedInstance {
    Polynomial f;
    WeightSystem weights;
    std::vector<int> permutation;  // new index -> original index
};

inline SortedInstance sort_weights_descending(const Polynomial& f, const WeightSystem& w) {
    const int s = w.size();
    std::vector<int> perm(static_cast<std::size_t>(s));
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return w[a] > w[b]; });
    std::vector<int> sorted;
    sorted.reserve(static_cast<std::size_t>(s));
    for (int i : perm) sorted.push_back(w[i]);
    std::vector<Term> terms;
    for (const Term& t : f.terms()) {
        std::vector<int> e(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) e[static_cast<std::size_t>(i)] = t.monomial[perm[static_cast<std::size_t>(i)]];
        terms.push_back(Term{MultiIndex(std::move(e)), t.coefficient});
    }
    return SortedInstance{Polynomial::from_terms(s, std::move(terms)),
                          WeightSystem(std::move(sorted)), std::move(perm)};
}

struct HypothesisStatus {
    bool homogeneous = false;
    bool chain = false;          // d >= 2w_1 >= ... >= 2w_s > 0 (weights sorted)
    bool no_low_terms = false;   // f(0) = 0 and no linear part
    bool isolated = false;
    long degree = 0;
    long milnor_dimension = -1;  // dim Q[x]/<partials> when isolated
    bool all() const { return homogeneous && chain && no_low_terms && isolated; }
};

// Shared per-(instance, n) artifacts so the checks do not recompute each other.
class Pipeline {
public:
    Pipeline(SortedInstance inst, VerifyOptions options)
        : inst_(std::move(inst)), options_(std::move(options)) {}

    const SortedInstance& instance() const { return inst_; }
    const VerifyOptions& options() const { return options_; }

    const HypothesisStatus& hypotheses() {
        if (!hypo_) {
            HypothesisStatus h;
            const Polynomial& f = inst_.f;
            const WeightSystem& w = inst_.weights;
            auto wd = weighted_degree(f, w);
            h.homogeneous = wd && wd->homogeneous;
            h.degree = wd ? wd->degree : 0;
            if (h.homogeneous) {
                bool chain = h.degree >= 2L * w[0];
                for (int i = 0; i + 1 < w.size(); ++i) chain = chain && w[i] >= w[i + 1];
                h.chain = chain && w[w.size() - 1] > 0;
            }
            h.no_low_terms = !f.is_zero();
            for (const Term& t : f.terms())
                if (t.monomial.norm() <= 1) h.no_low_terms = false;
            std::vector<Polynomial> partials;
            for (int i = 0; i < f.nvars(); ++i) partials.push_back(partial_derivative(f, i));
            GradedQuotient milnor = quotient_basis(partials, MonomialOrder(w));
            h.isolated = milnor.finite_dimensional && milnor.total_dimension > 0;
            if (milnor.finite_dimensional) h.milnor_dimension = milnor.total_dimension;
            milnor_ = std::move(milnor);
            hypo_ = h;
        }
        return *hypo_;
    }

    const GradedQuotient& milnor_quotient() {
        hypotheses();
        return *milnor_;
    }

    // minors of the order-n matrix in the given variant; nullopt => cap exceeded
    const std::optional<MinorComputation>& minors(int n, MatrixVariant variant) {
        auto key = std::make_pair(n, variant);
        auto it = minors_.find(key);
        if (it == minors_.end()) {
            std::optional<MinorComputation> result;
            MinorOptions mo;
            mo.max_subsets = options_.minor_cap;
            mo.threads = options_.threads;
            try {
                result = maximal_minors(jacobian(n, variant), inst_.weights, mo);
            } catch (const resource_limit_error&) {
                result = std::nullopt;
            }
            it = minors_.emplace(key, std::move(result)).first;
        }
        return it->second;
    }

    const JacobianMatrix& jacobian(int n, MatrixVariant variant) {
        auto key = std::make_pair(n, variant);
        auto it = jacobians_.find(key);
        if (it == jacobians_.end())
            it = jacobians_.emplace(key, build_jacobian(inst_.f, n, variant)).first;
        return it->second;
    }

    // T_n = Q[x]/<f, J_n(f)>; nullopt when the minor cap was exceeded
    const std::optional<GradedQuotient>& nash_quotient(int n) {
        auto it = quotients_.find(n);
        if (it == quotients_.end()) {
            std::optional<GradedQuotient> q;
            const auto& mc = minors(n, MatrixVariant::zero_diagonal);
            if (mc) {
                std::vector<Polynomial> gens;
                gens.push_back(inst_.f);
                for (const MinorGenerator& g : mc->generators) gens.push_back(g.poly);
                q = quotient_basis(std::move(gens), MonomialOrder(inst_.weights));
            }
            it = quotients_.emplace(n, std::move(q)).first;
        }
        return it->second;
    }

private:
    SortedInstance inst_;
    VerifyOptions options_;
    std::optional<HypothesisStatus> hypo_;
    std::optional<GradedQuotient> milnor_;
    std::map<std::pair<int, MatrixVariant>, JacobianMatrix> jacobians_;
    std::map<std::pair<int, MatrixVariant>, std::optional<MinorComputation>> minors_;
    std::map<int, std::optional<GradedQuotient>> quotients_;
};

inline std::string subset_label(const JacobianMatrix& jac, const std::vector<int>& subset) {
    std::string out = "[";
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) out += ",";
        out += nashjet::to_string(jac.cols()[static_cast<std::size_t>(subset[i])]);
    }
    out += "]";
    return out;
}

inline Verdict check_hypotheses_impl(Pipeline& p) {
    Verdict v;
    v.check = "hypotheses";
    v.n = 0;
    const HypothesisStatus& h = p.hypotheses();
    const WeightSystem& w = p.instance().weights;
    v.outcome = h.all() ? CheckOutcome::pass : CheckOutcome::fail;
    std::string detail;
    detail += h.homogeneous ? "weighted homogeneous of degree " + std::to_string(h.degree)
                            : "not weighted homogeneous";
    detail += h.chain ? "; weight chain holds" : "; weight chain fails";
    detail += h.no_low_terms ? "; no constant or linear terms" : "; has constant or linear terms";
    detail += h.isolated ? "; isolated singularity" : "; not an isolated singularity";
    v.detail = detail;
    v.witness.emplace_back("degree", std::to_string(h.degree));
    v.witness.emplace_back("weights_sorted", [&] {
        std::string out;
        for (int i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
        return out;
    }());
    if (h.isolated)
        v.witness.emplace_back("milnor_dimension", std::to_string(h.milnor_dimension));
    return v;
}

inline Verdict check_degree_bound_impl(Pipeline& p, int n) {
    Verdict v;
    v.check = "degree-bound";
    v.n = n;
    if (n < 2)
        return make_skip(v.check, n, SkipReason::order_out_of_scope,
                         "the minor degree bound is stated for n >= 2");
    if (!p.hypotheses().all())
        return make_skip(v.check, n, SkipReason::hypothesis_failed,
                         "weight-chain or isolatedness hypotheses do not hold");
    const auto& mc = p.minors(n, MatrixVariant::zero_diagonal);
    if (!mc)
        return make_skip(v.check, n, SkipReason::resource_cap,
                         "column-subset count exceeds the configured cap");
    const long d = p.hypotheses().degree;
    if (!mc->min_degree) {
        v.outcome = CheckOutcome::pass;
        v.detail = "no nonzero minors";
        return v;
    }
    v.outcome = *mc->min_degree >= d ? CheckOutcome::pass : CheckOutcome::fail;
    v.detail = "min nonzero minor degree " + std::to_string(*mc->min_degree) +
               (v.outcome == CheckOutcome::pass ? " >= " : " < ") + std::to_string(d);
    v.witness.emplace_back("min_degree", std::to_string(*mc->min_degree));
    v.witness.emplace_back("f_degree", std::to_string(d));
    if (v.outcome == CheckOutcome::fail) {
        for (const MinorGenerator& g : mc->generators) {
            if (g.degree && *g.degree < d) {
                v.witness.emplace_back("offending_subset",
                                       subset_label(p.jacobian(n, MatrixVariant::zero_diagonal),
                                                    g.source_cols));
                v.witness.emplace_back("offending_minor", nashjet::to_string(g.poly));
                break;
            }
        }
    }
    return v;
}

inline Verdict check_gradedness_impl(Pipeline& p, int n) {
    Verdict v;
    v.check = "gradedness";
    v.n = n;
    if (!is_weighted_homogeneous(p.instance().f, p.instance().weights))
        return make_skip(v.check, n, SkipReason::hypothesis_failed,
                         "gradedness is only defined for weighted homogeneous f");
    const auto& mc = p.minors(n, MatrixVariant::zero_diagonal);
    if (!mc)
        return make_skip(v.check, n, SkipReason::resource_cap,
                         "column-subset count exceeds the configured cap");
    v.outcome = mc->all_graded ? CheckOutcome::pass : CheckOutcome::fail;
    v.detail = mc->all_graded
                   ? "every nonzero minor is weighted homogeneous with the predicted degree"
                   : "a minor violates gradedness or the degree formula";
    if (mc->first_violation) {
        const auto& viol = *mc->first_violation;
        v.witness.emplace_back("subset", subset_label(p.jacobian(n, MatrixVariant::zero_diagonal),
                                                      viol.subset));
        v.witness.emplace_back("homogeneous", viol.homogeneous ? "true" : "false");
        if (viol.expected) v.witness.emplace_back("expected_degree", std::to_string(*viol.expected));
        if (viol.actual) v.witness.emplace_back("actual_degree", std::to_string(*viol.actual));
    }
    return v;
}

inline Verdict check_variant_equivalence_impl(Pipeline& p, int n) {
    Verdict v;
    v.check = "variant-equivalence";
    v.n = n;
    const auto& zero = p.minors(n, MatrixVariant::zero_diagonal);
    if (!zero)
        return make_skip(v.check, n, SkipReason::resource_cap,
                         "column-subset count exceeds the configured cap");
    const auto& fdiag = p.minors(n, MatrixVariant::f_diagonal);
    if (!fdiag)
        return make_skip(v.check, n, SkipReason::resource_cap,
                         "column-subset count exceeds the configured cap");
    std::vector<Polynomial> a{p.instance().f};
    for (const MinorGenerator& g : zero->generators) a.push_back(g.poly);
    std::vector<Polynomial> b{p.instance().f};
    for (const MinorGenerator& g : fdiag->generators) b.push_back(g.poly);
    const bool equal = ideal_equal(a, b, MonomialOrder(p.instance().weights));
    v.outcome = equal ? CheckOutcome::pass : CheckOutcome::fail;
    v.detail = equal ? "<f> + zero-diagonal minors == <f> + f-diagonal minors"
                     : "the two variants generate different ideals modulo f";
    return v;
}

inline Verdict check_inclusion_cubed_impl(Pipeline& p, int n) {
    Verdict v;
    v.check = "inclusion-cubed";
    v.n = n;
    const int s = p.instance().f.nvars();
    const bool in_scope = (s >= 3 && n >= 2) || (s == 2 && n >= 3);
    if (!in_scope)
        return make_skip(v.check, n, SkipReason::case_split_excluded,
                         "containment in the cubed Jacobian ideal is invoked for s >= 3, n >= 2 "
                         "or s = 2, n >= 3 only");
    const auto& mc = p.minors(n, MatrixVariant::zero_diagonal);
    if (!mc)
        return make_skip(v.check, n, SkipReason::resource_cap,
                         "column-subset count exceeds the configured cap");
    // all degree-three products of the partial derivatives generate J_1^3
    std::vector<Polynomial> partials;
    for (int i = 0; i < s; ++i) partials.push_back(partial_derivative(p.instance().f, i));
    std::vector<Polynomial> cubed;
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j)
            for (int k = j; k < s; ++k)
                cubed.push_back(partials[static_cast<std::size_t>(i)] *
                                partials[static_cast<std::size_t>(j)] *
                                partials[static_cast<std::size_t>(k)]);
    Reducer reducer(groebner_basis(cubed, MonomialOrder(p.instance().weights)));
    for (const MinorGenerator& g : mc->generators) {
        if (!reducer.reduces_to_zero(g.poly)) {
            v.outcome = CheckOutcome::fail;
            v.detail = "a minor lies outside the cubed Jacobian ideal";
            v.witness.emplace_back("minor", nashjet::to_string(g.poly));
            v.witness.emplace_back(
                "subset",
                subset_label(p.jacobian(n, MatrixVariant::zero_diagonal), g.source_cols));
            return v;
        }
    }
    v.outcome = CheckOutcome::pass;
    v.detail = "every minor reduces to zero modulo the cubed Jacobian ideal";
    return v;
}

inline Verdict check_negative_derivations_impl(Pipeline& p, int n) {
    Verdict v;
    v.check = "negative-derivations";
    v.n = n;
    if (!p.hypotheses().all())
        return make_skip(v.check, n, SkipReason::hypothesis_failed,
                         "weight-chain or isolatedness hypotheses do not hold");
    const auto& q = p.nash_quotient(n);
    if (!q)
        return make_skip(v.check, n, SkipReason::resource_cap,
                         "column-subset count exceeds the configured cap");
    if (!q->finite_dimensional)
        return make_skip(v.check, n, SkipReason::infinite_dimensional,
                         "the local algebra is not finite-dimensional; no pure power of "
                         "variable " +
                             std::to_string(q->infinite_variable + 1) +
                             " in the leading-term ideal");
    auto scan = negative_derivation_scan(*q, p.options().threads);
    std::string dims;
    bool all_zero = true;
    for (const auto& [e, report] : scan) {
        dims += (dims.empty() ? "" : ", ") + std::to_string(e) + ":" +
                std::to_string(report.dimension);
        if (report.dimension != 0) {
            all_zero = false;
            if (v.witness.empty()) {
                const GradedDerivation& d = report.basis.front();
                std::string images;
                for (std::size_t i = 0; i < d.images.size(); ++i)
                    images += (i ? "; " : "") + nashjet::to_string(d.images[i]);
                v.witness.emplace_back("nonzero_derivation_degree", std::to_string(e));
                v.witness.emplace_back("images", images);
            }
        }
    }
    if (n == 1) {
        // informational only: the n = 1 analogue is a separate open question
        Verdict skip = make_skip(v.check, n, SkipReason::baseline_unlabeled,
                                 "n = 1 scans are reported without a verdict");
        skip.witness.emplace_back("scan", dims);
        return skip;
    }
    v.outcome = all_zero ? CheckOutcome::pass : CheckOutcome::fail;
    v.detail = "negative degree dimensions {" + dims + "}";
    v.witness.emplace_back("dim_Tn", std::to_string(q->total_dimension));
    return v;
}

}  // namespace detail

// Standalone check entry points (each builds its own pipeline).
inline Verdict check_hypotheses(const SingularityInstance& inst, const VerifyOptions& opts = {}) {
    detail::Pipeline p(detail::sort_weights_descending(inst.f, inst.weights), opts);
    return detail::check_hypotheses_impl(p);
}

inline Verdict check_degree_bound(const SingularityInstance& inst, int n,
                                  const VerifyOptions& opts = {}) {
    detail::Pipeline p(detail::sort_weights_descending(inst.f, inst.weights), opts);
    return detail::check_degree_bound_impl(p, n);
}

inline Verdict check_gradedness(const SingularityInstance& inst, int n,
                                const VerifyOptions& opts = {}) {
    detail::Pipeline p(detail::sort_weights_descending(inst.f, inst.weights), opts);
    return detail::check_gradedness_impl(p, n);
}

inline Verdict check_variant_equivalence(const SingularityInstance& inst, int n,
                                         const VerifyOptions& opts = {}) {
    detail::Pipeline p(detail::sort_weights_descending(inst.f, inst.weights), opts);
    return detail::check_variant_equivalence_impl(p, n);
}

inline Verdict check_inclusion_cubed(const SingularityInstance& inst, int n,
                                     const VerifyOptions& opts = {}) {
    detail::Pipeline p(detail::sort_weights_descending(inst.f, inst.weights), opts);
    return detail::check_inclusion_cubed_impl(p, n);
}

inline Verdict check_negative_derivations(const SingularityInstance& inst, int n,
                                  const VerifyOptions& opts = {}) {
    detail::Pipeline p(detail::sort_weights_descending(inst.f, inst.weights), opts);
    return detail::check_negative_derivations_impl(p, n);
}

struct InstanceReport {
    std::string name;
    std::string poly_input;
    std::vector<int> weights_input;
    std::vector<int> weights_sorted;
    std::vector<int> permutation;
    std::string poly_sorted;
    std::vector<int> n_values;
    std::vector<Verdict> verdicts;
    bool all_pass = true;  // no fail outcomes (skips allowed)
    double seconds = 0.0;
};

inline InstanceReport run_instance(const SingularityInstance& inst, const VerifyOptions& opts = {}) {
    const auto started = std::chrono::steady_clock::now();
    InstanceReport report;
    report.name = inst.name;
    report.poly_input = to_string(inst.f, &inst.weights);
    report.weights_input = inst.weights.weights();
    report.n_values = inst.n_values;

    detail::SortedInstance sorted = detail::sort_weights_descending(inst.f, inst.weights);
    report.weights_sorted = sorted.weights.weights();
    report.permutation = sorted.permutation;
    report.poly_sorted = to_string(sorted.f, &sorted.weights);
    detail::Pipeline pipeline(std::move(sorted), opts);

    report.verdicts.push_back(detail::check_hypotheses_impl(pipeline));
    for (int n : inst.n_values) {
        report.verdicts.push_back(detail::check_gradedness_impl(pipeline, n));
        report.verdicts.push_back(detail::check_degree_bound_impl(pipeline, n));
        report.verdicts.push_back(detail::check_inclusion_cubed_impl(pipeline, n));
        report.verdicts.push_back(detail::check_variant_equivalence_impl(pipeline, n));
        report.verdicts.push_back(detail::check_negative_derivations_impl(pipeline, n));
    }
    for (const Verdict& v : report.verdicts)
        if (v.outcome == CheckOutcome::fail) report.all_pass = false;
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

struct CatalogReport {
    std::vector<InstanceReport> instances;
    long pass = 0, fail = 0, skipped = 0;
    bool all_pass = true;
};

inline CatalogReport run_catalog(const std::vector<SingularityInstance>& instances,
                                 const VerifyOptions& opts = {}) {
    CatalogReport report;
    report.instances.resize(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i)
        report.instances[i] = run_instance(instances[i], opts);
    for (const InstanceReport& inst : report.instances) {
        for (const Verdict& v : inst.verdicts) {
            switch (v.outcome) {
                case CheckOutcome::pass: ++report.pass; break;
                case CheckOutcome::fail: ++report.fail; break;
                case CheckOutcome::skipped: ++report.skipped; break;
            }
        }
        if (!inst.all_pass) report.all_pass = false;
    }
    return report;
}

}  // namespace nashjet
