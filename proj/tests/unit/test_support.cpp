#include "doctest.h"

#include "hshadow/errors.hpp"
#include "hshadow/factor.hpp"
#include "hshadow/int_matrix.hpp"
#include "hshadow/linprog.hpp"
#include "hshadow/polynomial.hpp"
#include "hshadow/rational.hpp"

#include <random>

using namespace hshadow;

namespace {

ZPoly z(std::initializer_list<long> c) {
    ZPoly p;
    for (long x : c) p.emplace_back(x);
    return p;
}

ZPoly product(const std::vector<IrreducibleFactor>& fs) {
    ZPoly p = z({1});
    for (const auto& f : fs)
        for (unsigned i = 0; i < f.multiplicity; ++i) p = multiply(p, f.poly);
    return p;
}

}  // namespace

TEST_CASE("rationals") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
    CHECK_THROWS_AS(parse_rational("x"), ValidationError);
    CHECK(to_string(Rational(-3, 9)) == "-1/3");
    CHECK(squared_distance({0, 0}, {3, 4}) == 25);
}

TEST_CASE("polynomials") {
    Polynomial a{-1, 0, 1};  // x^2 - 1
    Polynomial b{1, 1};      // x + 1
    auto [q, r] = divmod(a, b);
    CHECK(q == Polynomial{-1, 1});
    CHECK(r.is_zero());
    CHECK(gcd(a, Polynomial{-1, 1}) == Polynomial{-1, 1});
    ExtendedGcd e = extended_gcd(Polynomial{-2, 0, 1}, Polynomial{-1, 1});
    CHECK(e.s * Polynomial{-2, 0, 1} + e.t * Polynomial{-1, 1} == e.g);

    Polynomial golden{-1, -1, 1};
    SturmSequence st(golden);
    CHECK(st.count_roots(-10, 10) == 2);
    CHECK(st.count_roots(0, 10) == 1);
    Interval iv = isolate_largest_root(golden, Rational(1, 1 << 20));
    CHECK(to_double(iv.lo) <= 1.6180339887);
    CHECK(to_double(iv.hi) >= 1.6180339887);
    CHECK(iv.hi - iv.lo <= Rational(1, 1 << 20));
}

TEST_CASE("integer factorization of polynomials") {
    // (x^2 - x - 1)(x - 2)^2 (x^3 - 2)
    ZPoly f = multiply(multiply(z({-1, -1, 1}), multiply(z({-2, 1}), z({-2, 1}))), z({-2, 0, 0, 1}));
    auto fs = factor_over_integers(f);
    CHECK(fs.size() == 3);
    CHECK(product(fs) == primitive_part(f));
    for (const auto& x : fs)
        if (degree(x.poly) == 1) CHECK(x.multiplicity == 2);

    // x^4 + 1 is irreducible over Q but reducible modulo every prime
    auto x4 = factor_over_integers(z({1, 0, 0, 0, 1}));
    CHECK(x4.size() == 1);
    CHECK(x4[0].poly == z({1, 0, 0, 0, 1}));

    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> c(-5, 5);
    for (int t = 0; t < 20; ++t) {
        ZPoly p = z({c(rng), c(rng), 1});
        ZPoly q = z({c(rng), c(rng), c(rng), 1});
        if (p[0] == 0 || q[0] == 0) continue;
        ZPoly pq = multiply(p, q);
        CHECK(product(factor_over_integers(pq)) == primitive_part(pq));
    }
    auto sq = squarefree_decomposition(multiply(z({-1, 1}), multiply(z({1, 1}), z({1, 1}))));
    CHECK(sq.size() == 2);
}

TEST_CASE("integer matrices") {
    IntMatrix a{{1, 1}, {1, 0}};
    CHECK(power(a, 5) == IntMatrix{{8, 5}, {5, 3}});
    CHECK_FALSE(finite_order(a, 50).has_value());
    IntMatrix rot{{0, -1}, {1, 0}};
    CHECK(finite_order(rot, 10) == 4u);
    CHECK_THROWS_AS(power(IntMatrix{{1LL << 40}}, 2), std::overflow_error);
    CHECK(operator_norm(IntMatrix{{3, 0}, {0, 4}}) == doctest::Approx(4.0));
    CHECK(default_finite_order_bound(3) == 40);
}

TEST_CASE("exact linear algebra and feasibility") {
    RationalMatrix m{{2, 1}, {1, 3}};
    auto x = solve_square(m, {3, 5});
    REQUIRE(x);
    CHECK(*x == std::vector<Rational>{Rational(4, 5), Rational(7, 5)});
    CHECK_FALSE(solve_square(RationalMatrix{{1, 2}, {2, 4}}, {1, 2}).has_value());
    CHECK(rank(RationalMatrix{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}) == 2);

    // x + y + z = 1, x - y = 0
    auto f = feasible_point(RationalMatrix{{1, 1, 1}, {1, -1, 0}}, {1, 0});
    REQUIRE(f);
    CHECK((*f)[0] + (*f)[1] + (*f)[2] == 1);
    CHECK((*f)[0] == (*f)[1]);
    for (const auto& v : *f) CHECK(v >= 0);
    CHECK_FALSE(feasible_point(RationalMatrix{{1, 1}}, {-1}).has_value());
}
