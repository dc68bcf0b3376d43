#pragma once

// Maximal minors of a Jacobian matrix. Column subsets are enumerated in rank
// (lexicographic) order; each determinant is computed by cofactor expansion
// along a fixed sparsest-first row order with results memoized per column
// bitmask, so overlapping subproblems are shared across subsets. A
// fraction-free Bareiss determinant is kept as an independent cross-check
// path. Generators are content-normalized and deduplicated; a configurable
// cap rejects instances whose subset count is too large instead of silently
// truncating.

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>

#include "jacobian.hpp"
#include "parallel.hpp"

namespace nashjet {

inline constexpr std::uint64_t default_minor_cap = 100000;

class resource_limit_error : public std::runtime_error {
public:
    resource_limit_error(std::uint64_t required, std::uint64_t cap)
        : std::runtime_error("column-subset count " +
                             (required == UINT64_MAX ? std::string(">= 2^64")
                                                     : std::to_string(required)) +
                             " exceeds the configured cap " + std::to_string(cap)),
          required_(required),
          cap_(cap) {}

    std::uint64_t required() const { return required_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t required_, cap_;
};

// C(n, k) with UINT64_MAX as saturation marker
inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(r);
}

// rank -> k-combination of {0..n-1} in lexicographic order
inline std::vector<int> unrank_combination(std::uint64_t rank, int n, int k) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    int c = 0;
    for (int slot = k; slot >= 1; --slot) {
        while (true) {
            std::uint64_t block = binomial_u64(static_cast<std::uint64_t>(n - c - 1),
                                               static_cast<std::uint64_t>(slot - 1));
            if (rank < block) break;
            rank -= block;
            ++c;
        }
        out.push_back(c++);
    }
    return out;
}

inline bool next_combination(std::vector<int>& c, int n) {
    int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[static_cast<std::size_t>(i)] < n - k + i) {
            ++c[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

// Fraction-free Bareiss determinant over the polynomial ring; every division
// is exact by the Bareiss minor identity.
inline Polynomial determinant_bareiss(std::vector<std::vector<Polynomial>> a) {
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
    const int nvars = a[0][0].nvars();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("determinant requires a square matrix");
    Polynomial prev = Polynomial::constant(nvars, Rational(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t pivot = k + 1;
            while (pivot < n && a[pivot][k].is_zero()) ++pivot;
            if (pivot == n) return Polynomial::zero(nvars);
            std::swap(a[k], a[pivot]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                PolynomialAccumulator acc(nvars);
                acc.add_product(a[i][j], a[k][k]);
                acc.add_product(a[i][k], a[k][j], true);
                a[i][j] = exact_divide(acc.take(), prev);
            }
            a[i][k] = Polynomial::zero(nvars);
        }
        prev = a[k][k];
    }
    return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

namespace detail {

// Cofactor expansion with memoization keyed by the remaining-column bitmask.
// Rows are consumed in a fixed order, so the mask's popcount determines the
// row level and the mask alone is a complete key.
class DeterminantEvaluator {
public:
    DeterminantEvaluator(const JacobianMatrix& jac, std::vector<int> row_order,
                         std::size_t memo_limit)
        : nvars_(jac.nvars()),
          m_(jac.row_count()),
          row_order_(std::move(row_order)),
          memo_limit_(memo_limit) {
        entry_.assign(m_, std::vector<const Polynomial*>(jac.col_count(), nullptr));
        for (std::size_t lvl = 0; lvl < m_; ++lvl) {
            std::size_t r = static_cast<std::size_t>(row_order_[lvl]);
            for (std::size_t c = 0; c < jac.col_count(); ++c)
                if (!jac.entry(r, c).is_zero()) entry_[lvl][c] = &jac.entry(r, c);
        }
        memo_.emplace(0u, Polynomial::constant(nvars_, Rational(1)));
    }

    const Polynomial& determinant(std::uint64_t colmask) {
        auto it = memo_.find(colmask);
        if (it != memo_.end()) return it->second;
        const std::size_t level = m_ - static_cast<std::size_t>(__builtin_popcountll(colmask));
        PolynomialAccumulator acc(nvars_);
        bool any = false;
        int parity = 0;
        std::uint64_t rest = colmask;
        while (rest) {
            const int c = __builtin_ctzll(rest);
            rest &= rest - 1;
            const Polynomial* e = entry_[level][static_cast<std::size_t>(c)];
            if (e) {
                const Polynomial& sub = determinant(colmask & ~(std::uint64_t(1) << c));
                if (!sub.is_zero()) {
                    acc.add_product(*e, sub, parity % 2 != 0);
                    any = true;
                }
            }
            ++parity;
        }
        Polynomial det = any ? acc.take() : Polynomial::zero(nvars_);
        return memo_.emplace(colmask, std::move(det)).first->second;
    }

    // Bounds memory between top-level determinants; must not be called while
    // a determinant is in flight because callers hold references into the memo.
    void maybe_reset() {
        if (memo_.size() < memo_limit_) return;
        memo_.clear();
        memo_.emplace(0u, Polynomial::constant(nvars_, Rational(1)));
    }

    std::size_t memo_size() const { return memo_.size(); }

private:
    int nvars_;
    std::size_t m_;
    std::vector<int> row_order_;
    std::size_t memo_limit_;
    std::vector<std::vector<const Polynomial*>> entry_;
    std::unordered_map<std::uint64_t, Polynomial> memo_;
};

// rows sorted by nonzero count so expansion branches as little as possible
inline std::vector<int> sparsest_first_row_order(const JacobianMatrix& jac) {
    std::vector<int> order(jac.row_count());
    std::vector<std::size_t> nonzeros(jac.row_count(), 0);
    for (std::size_t i = 0; i < jac.row_count(); ++i) {
        order[i] = static_cast<int>(i);
        for (std::size_t j = 0; j < jac.col_count(); ++j)
            if (!jac.entry(i, j).is_zero()) ++nonzeros[i];
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return nonzeros[static_cast<std::size_t>(a)] < nonzeros[static_cast<std::size_t>(b)];
    });
    return order;
}

}  // namespace detail

struct MinorOptions {
    std::uint64_t max_subsets = default_minor_cap;
    unsigned threads = 0;             // 0 = hardware concurrency
    std::uint64_t chunk_size = 8192;  // subsets per work unit
    std::size_t memo_limit = 2000000; // entries before a worker cache reset
};

struct MinorGenerator {
    Polynomial poly;                 // content-free, positive leading coefficient
    std::vector<int> source_cols;    // first column subset producing it (indices)
    std::optional<long> degree;      // weighted degree when weights were supplied
};

struct GradednessViolation {
    std::vector<int> subset;
    bool homogeneous = false;
    std::optional<long> expected;
    std::optional<long> actual;
};

struct MinorComputation {
    std::vector<MinorGenerator> generators;  // deduplicated, deterministic order
    std::uint64_t subsets_total = 0;
    std::uint64_t nonzero_minors = 0;
    bool weights_checked = false;
    std::optional<long> min_degree;          // over nonzero minors
    bool all_graded = true;                  // homogeneous + degree formula satisfied
    std::optional<GradednessViolation> first_violation;
};

// Predicted weighted degree of the minor on the given column subset when f is
// weighted homogeneous of degree d: M*d - w.(sum of subset columns) + w.(sum of rows).
inline long predicted_minor_degree(const JacobianMatrix& jac, const WeightSystem& w, long d,
                                   const std::vector<int>& subset) {
    long degree = static_cast<long>(jac.row_count()) * d;
    for (const MultiIndex& beta : jac.rows()) degree += w.degree(beta);
    for (int c : subset) degree -= w.degree(jac.cols()[static_cast<std::size_t>(c)]);
    return degree;
}

namespace detail {

struct ChunkResult {
    std::map<Polynomial, std::pair<std::uint64_t, std::vector<int>>, PolynomialLess> found;
    std::uint64_t nonzero = 0;
    std::optional<long> min_degree;
    std::optional<std::pair<std::uint64_t, GradednessViolation>> violation;
};

// Merge per-chunk results in chunk order and produce the deterministic
// generator list: ascending total degree, then the canonical polynomial order.
inline MinorComputation finalize_minors(const std::optional<WeightSystem>& weights,
                                        std::vector<ChunkResult> chunks,
                                        MinorComputation result) {
    std::map<Polynomial, std::pair<std::uint64_t, std::vector<int>>, PolynomialLess> merged;
    std::optional<std::pair<std::uint64_t, GradednessViolation>> violation;
    for (ChunkResult& chunk : chunks) {
        result.nonzero_minors += chunk.nonzero;
        if (chunk.min_degree && (!result.min_degree || *chunk.min_degree < *result.min_degree))
            result.min_degree = chunk.min_degree;
        if (chunk.violation && (!violation || chunk.violation->first < violation->first))
            violation = chunk.violation;
        while (!chunk.found.empty()) {
            auto node = chunk.found.extract(chunk.found.begin());
            auto it = merged.find(node.key());
            if (it == merged.end())
                merged.insert(std::move(node));
            else if (node.mapped().first < it->second.first)
                it->second = std::move(node.mapped());
        }
    }
    if (violation) {
        result.all_graded = false;
        result.first_violation = violation->second;
    }
    std::vector<MinorGenerator> gens;
    gens.reserve(merged.size());
    for (auto& [poly, src] : merged) {
        MinorGenerator g;
        g.poly = poly;
        g.source_cols = std::move(src.second);
        if (weights) g.degree = weighted_degree(g.poly, *weights)->degree;
        gens.push_back(std::move(g));
    }
    std::sort(gens.begin(), gens.end(), [](const MinorGenerator& a, const MinorGenerator& b) {
        long da = a.poly.total_degree(), db = b.poly.total_degree();
        if (da != db) return da < db;
        return compare(a.poly, b.poly) < 0;
    });
    result.generators = std::move(gens);
    return result;
}

}  // namespace detail

inline MinorComputation maximal_minors(const JacobianMatrix& jac,
                                       const std::optional<WeightSystem>& weights = {},
                                       const MinorOptions& options = {}) {
    const std::size_t m = jac.row_count();
    const std::size_t k = jac.col_count();
    if (m > k) throw std::logic_error("maximal_minors: more rows than columns");
    const std::uint64_t total = binomial_u64(k, m);
    if (total > options.max_subsets) throw resource_limit_error(total, options.max_subsets);
    if (k > 63 && m != k)
        throw resource_limit_error(UINT64_MAX, options.max_subsets);

    MinorComputation result;
    result.subsets_total = total;
    result.weights_checked = weights.has_value();

    std::optional<long> fdeg;
    if (weights) {
        auto wd = weighted_degree(jac.f(), *weights);
        if (wd && wd->homogeneous) fdeg = wd->degree;
    }

    auto classify = [&](const Polynomial& minor, const std::vector<int>& subset,
                        std::uint64_t rank, detail::ChunkResult& out) {
        ++out.nonzero;
        std::optional<long> deg;
        if (weights) {
            auto wd = weighted_degree(minor, *weights);
            deg = wd->degree;
            bool ok = wd->homogeneous;
            std::optional<long> expected;
            if (fdeg) {
                expected = predicted_minor_degree(jac, *weights, *fdeg, subset);
                ok = ok && wd->degree == *expected;
            }
            if (!ok && (!out.violation || rank < out.violation->first)) {
                out.violation = {rank, GradednessViolation{subset, wd->homogeneous, expected,
                                                           wd->degree}};
            }
            if (!out.min_degree || *deg < *out.min_degree) out.min_degree = deg;
        }
        Polynomial norm = normalize_content(minor);
        auto it = out.found.find(norm);
        if (it == out.found.end()) {
            out.found.emplace(std::move(norm), std::make_pair(rank, subset));
        } else if (rank < it->second.first) {
            it->second = std::make_pair(rank, subset);
        }
    };

    // square case: a single determinant, Bareiss (no bitmask size limit)
    if (m == k) {
        std::vector<std::vector<Polynomial>> a(m, std::vector<Polynomial>());
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < k; ++j) a[i].push_back(jac.entry(i, j));
        Polynomial det = determinant_bareiss(std::move(a));
        detail::ChunkResult chunk;
        std::vector<int> subset(m);
        for (std::size_t i = 0; i < m; ++i) subset[i] = static_cast<int>(i);
        if (!det.is_zero()) classify(det, subset, 0, chunk);
        std::vector<detail::ChunkResult> chunks;
        chunks.push_back(std::move(chunk));
        return detail::finalize_minors(weights, std::move(chunks), std::move(result));
    }

    const std::uint64_t nchunks = (total + options.chunk_size - 1) / options.chunk_size;
    std::vector<detail::ChunkResult> chunks(static_cast<std::size_t>(nchunks));
    const std::vector<int> row_order = detail::sparsest_first_row_order(jac);

    parallel_chunks(total, options.chunk_size, options.threads,
                    [&](std::size_t chunk_id, std::uint64_t begin, std::uint64_t end) {
                        detail::DeterminantEvaluator eval(jac, row_order, options.memo_limit);
                        detail::ChunkResult& out = chunks[chunk_id];
                        std::vector<int> subset =
                            unrank_combination(begin, static_cast<int>(k), static_cast<int>(m));
                        for (std::uint64_t rank = begin; rank < end; ++rank) {
                            eval.maybe_reset();
                            std::uint64_t mask = 0;
                            for (int c : subset) mask |= std::uint64_t(1) << c;
                            const Polynomial& det = eval.determinant(mask);
                            if (!det.is_zero()) classify(det, subset, rank, out);
                            if (rank + 1 < end) next_combination(subset, static_cast<int>(k));
                        }
                    });
    return detail::finalize_minors(weights, std::move(chunks), std::move(result));
}

// Closed-form degree predictions per column subset; requires f weighted
// homogeneous. Guarded by the same subset cap as the minor computation.
inline std::vector<std::pair<std::vector<int>, long>> minor_degree_table(
    const JacobianMatrix& jac, const WeightSystem& w, const MinorOptions& options = {}) {
    auto wd = weighted_degree(jac.f(), w);
    if (!wd || !wd->homogeneous)
        throw std::invalid_argument("minor_degree_table: f must be weighted homogeneous");
    const std::size_t m = jac.row_count();
    const std::size_t k = jac.col_count();
    const std::uint64_t total = binomial_u64(k, m);
    if (total > options.max_subsets) throw resource_limit_error(total, options.max_subsets);
    std::vector<std::pair<std::vector<int>, long>> table;
    table.reserve(static_cast<std::size_t>(total));
    std::vector<int> subset(m);
    for (std::size_t i = 0; i < m; ++i) subset[i] = static_cast<int>(i);
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        table.emplace_back(subset, predicted_minor_degree(jac, w, wd->degree, subset));
        if (rank + 1 < total) next_combination(subset, static_cast<int>(k));
    }
    return table;
}

}  // namespace nashjet
