#include <catch2/catch.hpp>

#include <random>

#include <nashjet/format.hpp>
#include <nashjet/parse.hpp>

#include "oracles.hpp"

using namespace nashjet;

namespace {

Polynomial P(const std::string& text, int nvars) { return parse_polynomial(text, nvars); }

MultiIndex MI(std::vector<int> e) { return MultiIndex(std::move(e)); }

// deterministic sparse polynomial: degree <= max_deg, small integer coefficients
Polynomial random_poly(std::mt19937& rng, int nvars, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coeff(-6, 6);
    std::vector<Term> terms;
    int count = nterms(rng);
    for (int t = 0; t < count; ++t) {
        std::vector<int> e(static_cast<std::size_t>(nvars), 0);
        int budget = deg(rng);
        for (int i = 0; i < nvars; ++i) {
            std::uniform_int_distribution<int> part(0, budget);
            e[static_cast<std::size_t>(i)] = part(rng);
            budget -= e[static_cast<std::size_t>(i)];
        }
        int c = coeff(rng);
        if (c != 0) terms.push_back(Term{MultiIndex(std::move(e)), Rational(c)});
    }
    return Polynomial::from_terms(nvars, std::move(terms));
}

}  // namespace

TEST_CASE("multi-index basics") {
    MultiIndex a = MI({2, 0, 1});
    CHECK(a.norm() == 3);
    CHECK(a.factorial() == 2);
    CHECK(MI({3, 2}).factorial() == 12);
    CHECK(MultiIndex::zero(2).factorial() == 1);
    CHECK(componentwise_leq(MI({1, 0}), MI({2, 0})));
    CHECK_FALSE(componentwise_leq(MI({1, 1}), MI({2, 0})));
    CHECK(MI({2, 1}) - MI({1, 0}) == MI({1, 1}));
    CHECK_THROWS_AS(MI({1, 1}) - MI({2, 0}), std::invalid_argument);
    CHECK(binomial_product(MI({3, 2}), MI({2, 1})) == 6);
    CHECK(binomial_product(MI({1, 0}), MI({0, 2})) == 0);
}

TEST_CASE("canonical multi-index enumeration matches the displayed 3x5 layout") {
    auto deg1 = multi_indices_of_degree(2, 1);
    REQUIRE(deg1.size() == 2);
    CHECK(deg1[0] == MI({1, 0}));
    CHECK(deg1[1] == MI({0, 1}));
    auto deg2 = multi_indices_of_degree(2, 2);
    REQUIRE(deg2.size() == 3);
    CHECK(deg2[0] == MI({2, 0}));
    CHECK(deg2[1] == MI({1, 1}));
    CHECK(deg2[2] == MI({0, 2}));
    CHECK(multi_indices_up_to(3, 0, 2).size() == 10);
}

TEST_CASE("hasse derivative on monomials") {
    Polynomial f = P("x^3", 2);
    CHECK(hasse_derivative(f, MI({2, 0})) == P("3*x", 2));
    CHECK(hasse_derivative(f, MI({0, 0})) == f);
    CHECK(hasse_derivative(P("x^2*y", 2), MI({1, 1})) == P("2*x", 2));
    CHECK(hasse_derivative(P("x^2", 2), MI({0, 1})).is_zero());
    CHECK_THROWS_AS(hasse_derivative(f, MI({1, 0, 0})), std::invalid_argument);
}

TEST_CASE("hasse derivative of a general polynomial is the identity at gamma = 0") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial f = random_poly(rng, 3, 5, 8);
        CHECK(hasse_derivative(f, MultiIndex::zero(3)) == f);
    }
}

TEST_CASE("hasse composition identity") {
    // hasse(hasse(f, gamma), delta) = C(gamma+delta, delta) * hasse(f, gamma+delta)
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> small(0, 2);
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial f = random_poly(rng, 2, 6, 8);
        MultiIndex gamma = MI({small(rng), small(rng)});
        MultiIndex delta = MI({small(rng), small(rng)});
        Polynomial lhs = hasse_derivative(hasse_derivative(f, gamma), delta);
        Polynomial rhs = hasse_derivative(f, gamma + delta) *
                         Rational(binomial_product(gamma + delta, delta));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("hasse derivative preserves weighted homogeneity") {
    WeightSystem w({3, 2});
    Polynomial f = P("x^2 + y^3", 2);  // degree 6
    for (const MultiIndex& gamma : multi_indices_up_to(2, 0, 3)) {
        Polynomial h = hasse_derivative(f, gamma);
        if (h.is_zero()) continue;
        auto d = weighted_degree(h, w);
        REQUIRE(d);
        CHECK(d->homogeneous);
        CHECK(d->degree == 6 - w.degree(gamma));
    }
}

TEST_CASE("partial derivatives") {
    CHECK(partial_derivative(P("x^3 + y^3", 2), 0) == P("3*x^2", 2));
    CHECK(partial_derivative(P("5", 2), 0).is_zero());
    CHECK(partial_derivative(P("x^2*y", 2), 1) == P("x^2", 2));
    CHECK_THROWS_AS(partial_derivative(P("x", 2), 2), std::out_of_range);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial f = random_poly(rng, 2, 5, 6);
        CHECK(partial_derivative(f, 0) == hasse_derivative(f, MI({1, 0})));
    }
}

TEST_CASE("weighted degree and homogeneity") {
    WeightSystem w11({1, 1});
    auto d = weighted_degree(P("x^3 + y^3", 2), w11);
    REQUIRE(d);
    CHECK(d->degree == 3);
    CHECK(d->homogeneous);

    WeightSystem w32({3, 2});
    d = weighted_degree(P("x^2 + y^3", 2), w32);
    REQUIRE(d);
    CHECK(d->degree == 6);
    CHECK(d->homogeneous);

    d = weighted_degree(P("x + y^2", 2), w11);
    REQUIRE(d);
    CHECK(d->degree == 2);
    CHECK_FALSE(d->homogeneous);
    CHECK_FALSE(is_weighted_homogeneous(P("x + y^2", 2), w11));

    CHECK_FALSE(weighted_degree(Polynomial::zero(2), w11));
    CHECK(is_weighted_homogeneous(Polynomial::zero(2), w11));
}

TEST_CASE("euler relation") {
    CHECK(euler_apply(P("x^3 + y^3", 2), WeightSystem({1, 1})) == P("3*x^3 + 3*y^3", 2));
    CHECK(euler_apply(P("x^2 + y^3", 2), WeightSystem({3, 2})) == P("6*x^2 + 6*y^3", 2));
    std::mt19937 rng(23);
    // every weighted homogeneous stratum of a random polynomial satisfies Euler
    for (int trial = 0; trial < 15; ++trial) {
        Polynomial f = random_poly(rng, 2, 5, 6);
        WeightSystem w({1 + trial % 3, 1 + trial % 2});
        std::map<long, std::vector<Term>> strata;
        for (const Term& t : f.terms()) strata[w.degree(t.monomial)].push_back(t);
        for (auto& [deg, terms] : strata) {
            Polynomial part = Polynomial::from_terms(2, std::move(terms));
            CHECK(euler_apply(part, w) == part * Rational(deg));
        }
    }
}

TEST_CASE("ring axioms against the dense oracle") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        int nvars = 1 + trial % 3;
        Polynomial f = random_poly(rng, nvars, 3, 5);
        Polynomial g = random_poly(rng, nvars, 3, 5);
        Polynomial h = random_poly(rng, nvars, 3, 5);
        CHECK((f + g) * h == f * h + g * h);
        CHECK(f * g == g * f);

        auto df = oracle::DensePoly::from_sparse(f, 12);
        auto dg = oracle::DensePoly::from_sparse(g, 12);
        CHECK(df.mul(dg, 12).to_sparse() == f * g);
        CHECK(df.add(dg).to_sparse() == f + g);
    }
}

TEST_CASE("exact division round-trips") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial p = random_poly(rng, 2, 4, 5);
        Polynomial q = random_poly(rng, 2, 3, 4);
        if (q.is_zero()) continue;
        CHECK(exact_divide(p * q, q) == p);
    }
    CHECK_THROWS_AS(exact_divide(P("x + 1", 2), P("y", 2)), std::domain_error);
}

TEST_CASE("parser accepts the documented grammar") {
    CHECK(P("x^3 + y^3", 2) == P("y^3 + x^3", 2));
    CHECK(P("1/2*x^2*y", 2) == Polynomial::monomial(MI({2, 1}), make_rational(1, 2)));
    CHECK(P("-x", 1) == -Polynomial::variable(1, 0));
    CHECK(P("x1^2 + x2", 2) == P("x^2 + y", 2));
    CHECK(P("2 - 3", 1) == -Polynomial::constant(1, Rational(1)));
    CHECK(P("x*x", 1) == P("x^2", 1));
    CHECK(P("x^0", 1) == Polynomial::constant(1, Rational(1)));
    CHECK(P("x7^2", 8) == Polynomial::monomial(MultiIndex::unit(8, 6) + MultiIndex::unit(8, 6),
                                               Rational(1)));
}

TEST_CASE("parser rejects malformed input with positions") {
    auto check_error = [](const std::string& text, int nvars, std::size_t pos) {
        try {
            parse_polynomial(text, nvars);
            FAIL("expected parse_error for: " << text);
        } catch (const parse_error& e) {
            CHECK(e.position() == pos);
        }
    };
    check_error("x^^2", 2, 2);
    check_error("2x", 2, 1);
    check_error("x y", 2, 2);
    check_error("", 2, 0);
    check_error("x +", 2, 3);
    check_error("1/0", 2, 2);
    check_error("z", 2, 0);     // z out of range for s = 2
    check_error("x3", 2, 0);    // index out of range
    check_error("w", 2, 0);     // unknown letter
    CHECK_THROWS_AS(parse_polynomial("x", 6), parse_error);  // aliases need s <= 5
    CHECK(parse_polynomial("x1 + x6", 6) ==
          Polynomial::variable(6, 0) + Polynomial::variable(6, 5));
}

TEST_CASE("caret diagnostics point at the offending character") {
    try {
        parse_polynomial("x^^2", 2);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        std::string diag = caret_diagnostic("x^^2", e.position(), e.what());
        CHECK(diag.find("x^^2") != std::string::npos);
        CHECK(diag.find("^") != std::string::npos);
    }
}

TEST_CASE("printing round-trips through the parser") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        int nvars = 1 + trial % 4;
        Polynomial f = random_poly(rng, nvars, 5, 7);
        CHECK(parse_polynomial(to_string(f), nvars) == f);
        WeightSystem w(std::vector<int>(static_cast<std::size_t>(nvars), 1 + trial % 3));
        CHECK(parse_polynomial(to_string(f, &w), nvars) == f);
    }
    CHECK(to_string(Polynomial::zero(2)) == "0");
    CHECK(to_string(P("x^3 + y^3", 2)) == "x^3 + y^3");
    CHECK(to_string(P("-x - 1", 1)) == "-x - 1");
    CHECK(to_string(P("1/2*x^2*y", 2)) == "1/2*x^2*y");
}

TEST_CASE("weight list parsing") {
    CHECK(parse_weight_list("3,2") == std::vector<int>{3, 2});
    CHECK(parse_weight_list("15, 10, 6") == std::vector<int>{15, 10, 6});
    CHECK_THROWS_AS(parse_weight_list("3,"), parse_error);
    CHECK_THROWS_AS(parse_weight_list("a,b"), parse_error);
    CHECK_THROWS_AS(parse_weight_list("0,1"), parse_error);
}
