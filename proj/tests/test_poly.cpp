#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heightlab/errors.hpp"
#include "heightlab/multipoly.hpp"
#include "heightlab/trunc_laurent.hpp"
#include "heightlab/unipoly.hpp"

using namespace heightlab;

namespace {

using Series = TruncLaurent<Rational>;

UniPoly random_uni(std::mt19937_64& rng, int maxdeg) {
    const int deg = static_cast<int>(rng() % static_cast<unsigned>(maxdeg + 1));
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(make_rational(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 4) + 1));
    return UniPoly(Var::t, c);
}

MultiPoly random_multi(std::mt19937_64& rng, unsigned arity) {
    MultiPoly m(arity);
    for (int k = 0; k < 4; ++k) {
        std::vector<unsigned> e(arity);
        for (auto& x : e) x = static_cast<unsigned>(rng() % 3);
        m += MultiPoly::monomial(arity, e, Rational(static_cast<long>(rng() % 11) - 5));
    }
    return m;
}

Series random_tail(std::mt19937_64& rng, unsigned J) {
    Series u(J, Rational(0));
    for (unsigned k = 1; k <= J; ++k) u.set(static_cast<int>(k), make_rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1));
    return u;
}

// generalized binomial coefficient C(alpha, k)
Rational binom(const Rational& alpha, unsigned k) {
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (alpha - Rational(i)) / Rational(i + 1);
    return r;
}

}  // namespace

TEST_CASE("UniPoly basics") {
    const UniPoly p(Var::t, {1, 2, 3});
    CHECK(p.degree() == 2);
    CHECK(p.str() == "3*t^2 + 2*t + 1");
    CHECK(UniPoly(Var::t, {1, 0, 0}).degree() == 0);
    CHECK(UniPoly(Var::t).is_zero());
    CHECK(p.eval(Rational(2)) == 17);
    CHECK(p.derivative() == UniPoly(Var::t, {2, 6}));
}

TEST_CASE("exact division checks the remainder") {
    const UniPoly a(Var::t, {-1, 0, 1});  // t^2 - 1
    const UniPoly b(Var::t, {-1, 1});
    CHECK(a.exact_div(b) == UniPoly(Var::t, {1, 1}));
    CHECK_THROWS_AS(a.exact_div(UniPoly(Var::t, {1, 2})), PropertyViolation);
    const auto [q, r] = UniPoly(Var::t, {1, 0, 0, 1}).divmod(UniPoly(Var::t, {1, 1}));
    CHECK(r.is_zero());
    CHECK(q == UniPoly(Var::t, {1, -1, 1}));
}

TEST_CASE("gcd and composition") {
    const UniPoly a = UniPoly(Var::t, {-1, 1}) * UniPoly(Var::t, {2, 1});
    const UniPoly b = UniPoly(Var::t, {-1, 1}) * UniPoly(Var::t, {5, 0, 1});
    CHECK(gcd(a, b).monic() == UniPoly(Var::t, {-1, 1}));
    const UniPoly sq(Var::t, {0, 0, 1});
    CHECK(sq.compose(UniPoly(Var::t, {1, 1})) == UniPoly(Var::t, {1, 2, 1}));
}

TEST_CASE("UniPoly ring axioms and degree additivity") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const UniPoly a = random_uni(rng, 5), b = random_uni(rng, 5), c = random_uni(rng, 5);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        if (!a.is_zero() && !b.is_zero()) CHECK((a * b).degree() == a.degree() + b.degree());
    }
}

TEST_CASE("MultiPoly arithmetic") {
    const MultiPoly a1 = MultiPoly::variable(2, 1), a2 = MultiPoly::variable(2, 2);
    const MultiPoly p = (a1 + a2).pow(2);
    CHECK(p.size() == 3);
    CHECK(p.total_degree() == 2);
    CHECK(p.str() == "a1^2 + 2*a1*a2 + a2^2");
    const std::vector<Rational> pt{2, 3};
    CHECK(p.eval(pt) == 25);
    CHECK((p - p).is_zero());
    CHECK(MultiPoly(2).total_degree() == -1);
    CHECK((a1 * Rational(1, 4)).min_valuation(2) == Valuation(-2));
    CHECK((a1 * Rational(-3) + a2).l1_norm() == 4);
}

TEST_CASE("MultiPoly ring axioms") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const MultiPoly a = random_multi(rng, 3), b = random_multi(rng, 3), c = random_multi(rng, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("MultiPoly substitution matches evaluation") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        const MultiPoly m = random_multi(rng, 2);
        const std::vector<UniPoly> vals{UniPoly(Var::t, {1, 1}), UniPoly(Var::t, {0, 2})};
        const UniPoly u = m.substitute(vals);
        const Rational t0 = make_rational(static_cast<long>(rng() % 7) - 3, 2);
        const std::vector<Rational> pt{vals[0].eval(t0), vals[1].eval(t0)};
        CHECK(u.eval(t0) == m.eval(pt));
    }
}

TEST_CASE("MultiPoly exponent overflow is a resource cap") {
    const MultiPoly a = MultiPoly::variable(9, 1);
    CHECK_THROWS_AS(a.pow(a.max_exponent() + 1), ResourceCapError);
}

TEST_CASE("nu of truncated series") {
    Series f(6, Rational(0));
    f.set(-1, 1);
    f.set(5, 1);
    CHECK(f.nu() == Valuation(-1));
    CHECK(Series(4, Rational(0)).nu().is_infinite());
    Series g(8, Rational(0));
    g.set(2, 3);
    g.set(7, 1);
    CHECK(g.nu() == Valuation(2));
}

TEST_CASE("trunc_root examples") {
    CHECK(trunc_root(Series(5, Rational(0)), 3) == Series::one(5, Rational(0)));
    const Rational c(7, 3);
    Series u(2, Rational(0));
    u.set(1, c);
    const Series r = trunc_root(u, 2);
    CHECK(r.at(0) == 1);
    CHECK(r.at(1) == c / 2);
    CHECK(r.at(2) == -c * c / 8);
    CHECK_THROWS_AS(trunc_root(Series::one(3, Rational(0)), 2), std::domain_error);
}

TEST_CASE("trunc_root agrees with the binomial series") {
    // (1 + c/z)^{1/m} = sum_k C(1/m, k) c^k / z^k
    for (unsigned m : {2U, 3U, 5U}) {
        const Rational c(-2, 5);
        Series u(10, Rational(0));
        u.set(1, c);
        const Series r = trunc_root(u, m);
        Rational ck = 1;
        for (unsigned k = 0; k <= 10; ++k) {
            CHECK(r.at(static_cast<int>(k)) == binom(Rational(1, m), k) * ck);
            ck *= c;
        }
    }
}

TEST_CASE("trunc_root round-trips through pow") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const unsigned m = 2 + static_cast<unsigned>(rng() % 4);
        const Series u = random_tail(rng, 8);
        CHECK(trunc_root(u, m).pow(m) == Series::one(8, Rational(0)) + u);
    }
}

TEST_CASE("truncation coherence") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
        const Series u = random_tail(rng, 12);
        CHECK(trunc_root(u, 3).truncated(7) == trunc_root(u.truncated(7), 3));
        const UniPoly Q(Var::z, {Rational(static_cast<long>(rng() % 5) - 2), 1, 1});
        CHECK(compose_poly(u, Q).truncated(7) == compose_poly(u.truncated(7), Q));
    }
}

TEST_CASE("compose_poly examples") {
    const Rational c(3);
    Series f(4, Rational(0));
    f.set(1, 1);  // 1/z
    const Series g = compose_poly(f, UniPoly(Var::z, {c, 0, 1}));
    Series want(4, Rational(0));
    want.set(2, 1);
    want.set(4, -c);
    CHECK(g == want);

    Series z(4, Rational(0));
    z.set(-1, 1);
    CHECK_THROWS_AS(compose_poly(z, UniPoly(Var::z, {0, 0, 1})), std::domain_error);
    // F = z under a linear shift z + 2
    const Series zs = compose_poly(z, UniPoly(Var::z, {2, 1}));
    CHECK(zs.at(-1) == 1);
    CHECK(zs.at(0) == 2);
    CHECK_THROWS_AS(compose_poly(f, UniPoly(Var::z, {0, 2})), std::invalid_argument);
}

TEST_CASE("nu of a composition scales by deg Q") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
        Series f(16, Rational(0));
        const int nu = 1 + static_cast<int>(rng() % 3);
        f.set(nu, Rational(static_cast<long>(rng() % 5) + 1));
        for (int k = nu + 1; k <= 16; ++k) f.set(k, Rational(static_cast<long>(rng() % 5) - 2));
        const unsigned e = 1 + static_cast<unsigned>(rng() % 3);
        std::vector<Rational> q(e + 1, Rational(0));
        for (unsigned k = 0; k < e; ++k) q[k] = static_cast<long>(rng() % 5) - 2;
        q[e] = 1;
        const Series g = compose_poly(f, UniPoly(Var::z, q));
        if (static_cast<int>(e) * nu <= 16) CHECK(g.nu() == Valuation(static_cast<std::int64_t>(e) * nu));
    }
}

TEST_CASE("series ring axioms") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const Series a = random_tail(rng, 6), b = random_tail(rng, 6), c = random_tail(rng, 6);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("series over MultiPoly coefficients") {
    const MultiPoly zero(1);
    TruncLaurent<MultiPoly> u(3, zero);
    u.set(1, MultiPoly::variable(1, 1));
    const auto r = trunc_root(u, 2);
    CHECK(r.at(1) == MultiPoly::variable(1, 1) * Rational(1, 2));
    CHECK(r.at(2) == MultiPoly::variable(1, 1).pow(2) * Rational(-1, 8));
}
