#include <catch2/catch.hpp>

#include <nashjet/format.hpp>
#include <nashjet/groebner.hpp>
#include <nashjet/minors.hpp>
#include <nashjet/parse.hpp>

using namespace nashjet;

namespace {

Polynomial P(const std::string& text, int nvars) { return parse_polynomial(text, nvars); }

MultiIndex MI(std::vector<int> e) { return MultiIndex(std::move(e)); }

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// a quartic with no coincidences among f1, f2, f11, f12, f22
Polynomial generic_f() {
    return P("x^4 + 2*x^3*y + 3*x^2*y^2 + 5*x*y^3 + 7*y^4 + 11*x^3 + 13*y^3", 2);
}

std::vector<Polynomial> expected_order2_generators(const Polynomial& f) {
    Polynomial f1 = partial_derivative(f, 0);
    Polynomial f2 = partial_derivative(f, 1);
    Polynomial f11 = partial_derivative(f1, 0);
    Polynomial f12 = partial_derivative(f1, 1);
    Polynomial f22 = partial_derivative(f2, 1);
    Rational half = make_rational(1, 2);
    return {f1 * f1 * f1, f1 * f1 * f2, f1 * f2 * f2, f2 * f2 * f2,
            f1 * f1 * f22 * half - f1 * f2 * f12 + f2 * f2 * f11 * half};
}

}  // namespace

TEST_CASE("index set sizes match the closed forms") {
    auto idx = index_sets(2, 2);
    CHECK(idx.rows.size() == 3);
    CHECK(idx.cols.size() == 5);
    idx = index_sets(1, 3);
    CHECK(idx.rows.size() == 1);
    CHECK(idx.cols.size() == 3);
    idx = index_sets(3, 2);
    CHECK(idx.rows.size() == 6);
    CHECK(idx.cols.size() == 9);
    for (int n = 1; n <= 4; ++n) {
        for (int s = 1; s <= 3; ++s) {
            idx = index_sets(n, s);
            CHECK(static_cast<long>(idx.rows.size()) == binom(n + s - 1, s));
            CHECK(static_cast<long>(idx.cols.size()) == binom(n + s, s) - 1);
        }
    }
    CHECK_THROWS_AS(index_sets(0, 2), std::invalid_argument);
}

TEST_CASE("order-2 matrix in two variables has the displayed template") {
    Polynomial f = generic_f();
    auto jac = build_jacobian(f, 2);
    REQUIRE(jac.row_count() == 3);
    REQUIRE(jac.col_count() == 5);

    Polynomial f1 = partial_derivative(f, 0);
    Polynomial f2 = partial_derivative(f, 1);
    Polynomial f11 = partial_derivative(f1, 0);
    Polynomial f12 = partial_derivative(f1, 1);
    Polynomial f22 = partial_derivative(f2, 1);
    Rational half = make_rational(1, 2);

    CHECK(jac.rows()[0] == MI({0, 0}));
    CHECK(jac.rows()[1] == MI({1, 0}));
    CHECK(jac.rows()[2] == MI({0, 1}));
    CHECK(jac.cols()[0] == MI({1, 0}));
    CHECK(jac.cols()[4] == MI({0, 2}));

    // first row: f1, f2, (1/2) f11, f12, (1/2) f22
    CHECK(jac.entry(0, 0) == f1);
    CHECK(jac.entry(0, 1) == f2);
    CHECK(jac.entry(0, 2) == f11 * half);
    CHECK(jac.entry(0, 3) == f12);
    CHECK(jac.entry(0, 4) == f22 * half);
    // second row: 0, 0, f1, f2, 0
    CHECK(jac.entry(1, 0).is_zero());
    CHECK(jac.entry(1, 1).is_zero());
    CHECK(jac.entry(1, 2) == f1);
    CHECK(jac.entry(1, 3) == f2);
    CHECK(jac.entry(1, 4).is_zero());
    // third row: 0, 0, 0, f1, f2
    CHECK(jac.entry(2, 0).is_zero());
    CHECK(jac.entry(2, 1).is_zero());
    CHECK(jac.entry(2, 2).is_zero());
    CHECK(jac.entry(2, 3) == f1);
    CHECK(jac.entry(2, 4) == f2);
}

TEST_CASE("order-1 matrix is the usual Jacobian row") {
    Polynomial f = P("x^3 + y^3 + z^3", 3);
    auto jac = build_jacobian(f, 1);
    REQUIRE(jac.row_count() == 1);
    REQUIRE(jac.col_count() == 3);
    for (int i = 0; i < 3; ++i) CHECK(jac.entry(0, static_cast<std::size_t>(i)) == partial_derivative(f, i));
}

TEST_CASE("substituted entries for x^3 + y^3") {
    auto jac = build_jacobian(P("x^3 + y^3", 2), 2);
    CHECK(jac.entry(0, 0) == P("3*x^2", 2));
    CHECK(jac.entry(0, 1) == P("3*y^2", 2));
    CHECK(jac.entry(0, 2) == P("3*x", 2));  // (1/2) * 6x
    CHECK(jac.entry(0, 3).is_zero());       // f12 = 0
    CHECK(jac.entry(0, 4) == P("3*y", 2));
}

TEST_CASE("f-diagonal variant places f on the beta = alpha cells") {
    Polynomial f = P("x^3 + y^3", 2);
    auto jac = build_jacobian(f, 2, MatrixVariant::f_diagonal);
    CHECK(jac.entry(1, 0) == f);  // beta = (1,0), alpha = (1,0)
    CHECK(jac.entry(2, 1) == f);  // beta = (0,1), alpha = (0,1)
    CHECK(jac.entry(1, 1).is_zero());
    // order 1 has no beta = alpha cells, so the variants agree
    auto j1z = build_jacobian(f, 1, MatrixVariant::zero_diagonal);
    auto j1f = build_jacobian(f, 1, MatrixVariant::f_diagonal);
    for (std::size_t j = 0; j < j1z.col_count(); ++j) CHECK(j1z.entry(0, j) == j1f.entry(0, j));
}

TEST_CASE("the ten order-2 minors collapse to the five generator patterns") {
    Polynomial f = generic_f();
    auto mc = maximal_minors(build_jacobian(f, 2));
    CHECK(mc.subsets_total == 10);
    CHECK(mc.nonzero_minors == 7);  // the three subsets {c1,c2,*} vanish identically
    REQUIRE(mc.generators.size() == 5);

    std::vector<Polynomial> expected;
    for (const Polynomial& g : expected_order2_generators(f))
        expected.push_back(normalize_content(g));
    std::sort(expected.begin(), expected.end(), PolynomialLess{});
    std::vector<Polynomial> actual;
    for (const MinorGenerator& g : mc.generators) actual.push_back(g.poly);
    std::sort(actual.begin(), actual.end(), PolynomialLess{});
    CHECK(actual == expected);
}

TEST_CASE("minor ideal for x^3 + y^3 at order 2") {
    WeightSystem w({1, 1});
    auto mc = maximal_minors(build_jacobian(P("x^3 + y^3", 2), 2), w);
    REQUIRE(mc.generators.size() == 5);
    std::vector<std::string> got;
    for (const MinorGenerator& g : mc.generators) got.push_back(to_string(g.poly, &w));
    // ordered by total degree, then the canonical polynomial order
    CHECK(got == std::vector<std::string>{"x^4*y + x*y^4", "y^6", "x^2*y^4", "x^4*y^2", "x^6"});
    REQUIRE(mc.min_degree);
    CHECK(*mc.min_degree == 5);
    CHECK(mc.all_graded);
    // first column subset that produces x^6 is {(1,0),(2,0),(1,1)}
    const MinorGenerator* x6 = nullptr;
    for (const MinorGenerator& g : mc.generators)
        if (to_string(g.poly) == "x^6") x6 = &g;
    REQUIRE(x6);
    CHECK(x6->source_cols == std::vector<int>{0, 2, 3});
}

TEST_CASE("order-1 minors are the partial derivatives") {
    auto mc = maximal_minors(build_jacobian(P("x^3 + y^3", 2), 1));
    REQUIRE(mc.generators.size() == 2);
    CHECK(mc.generators[0].poly == P("y^2", 2));
    CHECK(mc.generators[1].poly == P("x^2", 2));
}

TEST_CASE("degree table predictions match computed degrees") {
    WeightSystem w({1, 1});
    Polynomial f = P("x^3 + y^3", 2);
    auto jac = build_jacobian(f, 2);
    auto table = minor_degree_table(jac, w);
    REQUIRE(table.size() == 10);
    // the subset {(1,0),(2,0),(1,1)} carries f1^3 of degree 3(d - w1) = 6
    for (const auto& [subset, degree] : table) {
        if (subset == std::vector<int>{0, 2, 3}) CHECK(degree == 6);
        if (subset == std::vector<int>{2, 3, 4}) CHECK(degree == 5);
    }
    auto mc = maximal_minors(jac, w);
    CHECK(mc.all_graded);  // computed == predicted for every nonzero minor

    // n = 1: the minor on column {alpha = e_i} has degree d - w_i
    WeightSystem w32({3, 2});
    auto t1 = minor_degree_table(build_jacobian(P("x^2 + y^3", 2), 1), w32);
    REQUIRE(t1.size() == 2);
    CHECK(t1[0].second == 3);  // d - w1 = 6 - 3
    CHECK(t1[1].second == 4);  // d - w2 = 6 - 2
}

TEST_CASE("gradedness check notices a violation for non-homogeneous input") {
    WeightSystem w({1, 1});
    auto mc = maximal_minors(build_jacobian(P("x^3 + y^4", 2), 2), w);  // not homogeneous for w
    CHECK_FALSE(mc.all_graded);
    REQUIRE(mc.first_violation);
}

TEST_CASE("bareiss determinant agrees with memoized expansion on every subset") {
    for (const char* poly : {"x^3 + y^3", "x^2 + y^3"}) {
        Polynomial f = P(poly, 2);
        for (int n : {2, 3}) {
            auto jac = build_jacobian(f, n);
            const std::size_t m = jac.row_count();
            auto mc = maximal_minors(jac);
            std::map<Polynomial, int, PolynomialLess> dp_minors;
            for (const MinorGenerator& g : mc.generators) dp_minors.emplace(g.poly, 0);
            // recompute each subset with Bareiss and compare the normalized set
            std::vector<int> subset(m);
            for (std::size_t i = 0; i < m; ++i) subset[i] = static_cast<int>(i);
            std::map<Polynomial, int, PolynomialLess> bareiss_minors;
            do {
                std::vector<std::vector<Polynomial>> a(m);
                for (std::size_t i = 0; i < m; ++i)
                    for (int c : subset) a[i].push_back(jac.entry(i, static_cast<std::size_t>(c)));
                Polynomial det = determinant_bareiss(std::move(a));
                if (!det.is_zero()) bareiss_minors.emplace(normalize_content(det), 0);
            } while (next_combination(subset, static_cast<int>(jac.col_count())));
            CHECK(dp_minors == bareiss_minors);
        }
    }
}

TEST_CASE("square matrix falls back to a single Bareiss determinant") {
    // s = 1, n = 2: rows {0, 1}, cols {1, 2}; det = (f')^2
    Polynomial f = P("x^3", 1);
    auto mc = maximal_minors(build_jacobian(f, 2));
    CHECK(mc.subsets_total == 1);
    REQUIRE(mc.generators.size() == 1);
    CHECK(mc.generators[0].poly == P("x^4", 1));
}

TEST_CASE("resource cap fails loudly") {
    auto jac = build_jacobian(P("x^3 + y^3", 2), 2);
    MinorOptions opts;
    opts.max_subsets = 5;
    try {
        maximal_minors(jac, {}, opts);
        FAIL("expected resource_limit_error");
    } catch (const resource_limit_error& e) {
        CHECK(e.required() == 10);
        CHECK(e.cap() == 5);
    }
    CHECK_THROWS_AS(minor_degree_table(jac, WeightSystem({1, 1}), opts), resource_limit_error);
}

TEST_CASE("minor computation is deterministic across thread counts and chunking") {
    Polynomial f = P("x^3 + y^3 + z^3", 3);
    WeightSystem w({1, 1, 1});
    auto jac = build_jacobian(f, 2);
    MinorOptions serial;
    serial.threads = 1;
    MinorOptions threaded;
    threaded.threads = 3;
    threaded.chunk_size = 7;
    MinorOptions tiny_memo;
    tiny_memo.threads = 2;
    tiny_memo.memo_limit = 4;

    auto a = maximal_minors(jac, w, serial);
    auto b = maximal_minors(jac, w, threaded);
    auto c = maximal_minors(jac, w, tiny_memo);
    REQUIRE(a.generators.size() == b.generators.size());
    REQUIRE(a.generators.size() == c.generators.size());
    for (std::size_t i = 0; i < a.generators.size(); ++i) {
        CHECK(a.generators[i].poly == b.generators[i].poly);
        CHECK(a.generators[i].poly == c.generators[i].poly);
        CHECK(a.generators[i].source_cols == b.generators[i].source_cols);
        CHECK(a.generators[i].source_cols == c.generators[i].source_cols);
    }
    CHECK(a.min_degree == b.min_degree);
    CHECK(a.nonzero_minors == c.nonzero_minors);
}

TEST_CASE("combination unranking matches sequential enumeration") {
    std::vector<int> subset{0, 1, 2};
    std::uint64_t rank = 0;
    do {
        CHECK(unrank_combination(rank, 6, 3) == subset);
        ++rank;
    } while (next_combination(subset, 6));
    CHECK(rank == 20);
}
