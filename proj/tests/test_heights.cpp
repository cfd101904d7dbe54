#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heightlab/errors.hpp"
#include "heightlab/factor_roots.hpp"
#include "heightlab/heights.hpp"

using namespace heightlab;

namespace {

const double log2d = std::log(2.0);

// H(P) = prod over places of max_i |c_i|_v, computed exactly: the archimedean
// factor times p^{-min vp(c_i)} for every prime in the coefficients
Rational places_product(const UniPoly& P) {
    Rational arch = 0;
    std::vector<std::uint64_t> primes;
    for (const auto& c : P.coeffs()) {
        if (abs(c) > arch) arch = abs(c);
        for (const Integer* part : {&c.get_num(), &c.get_den()}) {
            if (*part == 0) continue;
            for (const auto& [p, e] : factor_small(Integer(abs(*part)).get_ui())) {
                (void)e;
                if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
            }
        }
    }
    Rational H = arch;
    for (auto p : primes) {
        std::int64_t v = std::numeric_limits<std::int64_t>::max();
        for (const auto& c : P.coeffs())
            if (c != 0) v = std::min(v, vp(c, p).value());
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), p, static_cast<unsigned long>(std::llabs(v)));
        H *= v >= 0 ? Rational(1) / Rational(pw) : Rational(pw);
    }
    return H;
}

UniPoly random_int_poly(std::mt19937_64& rng, int maxdeg, long bound) {
    const int deg = static_cast<int>(rng() % static_cast<unsigned>(maxdeg + 1));
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back(static_cast<long>(rng() % static_cast<unsigned long>(2 * bound + 1)) - bound);
    if (c.back() == 0) c.back() = 1;
    return UniPoly(Var::t, c);
}

}  // namespace

TEST_CASE("Weil height of rationals") {
    CHECK(weil_height_rational(0).approx() == 0);
    const HeightValue h2 = weil_height_rational(2);
    REQUIRE(h2.exact());
    CHECK(h2.exact()->arg == 2);
    CHECK(weil_height_rational(Rational(2, 3)).exact()->arg == 3);
    CHECK(weil_height_rational(Rational(-7, 3)).approx() == doctest::Approx(std::log(7.0)));
    CHECK(h2.enclosure().contains(Rational(693147, 1000000)) == false);
    CHECK(h2.error_bound() < 1e-30);
}

TEST_CASE("hpol examples") {
    CHECK(hpol(UniPoly::x(Var::t)).approx() == 0);
    CHECK(hpol_ratio(UniPoly(Var::t, {4, 2})) == 2);
    CHECK(hpol_ratio(UniPoly(Var::t, {5, Rational(3, 2)})) == 10);
    CHECK(hpol(UniPoly(Var::t, {5, Rational(3, 2)})).approx() == doctest::Approx(std::log(10.0)));
    CHECK_THROWS_AS(hpol(UniPoly(Var::t)), std::invalid_argument);
}

TEST_CASE("hpol agrees with the product over places") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const int deg = static_cast<int>(rng() % 6);
        std::vector<Rational> c;
        for (int k = 0; k <= deg; ++k) c.push_back(make_rational(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 60) + 1));
        if (c.back() == 0) c.back() = Rational(1, 7);
        const UniPoly P(Var::t, c);
        CHECK(Rational(hpol_ratio(P)) == places_product(P));
    }
}

TEST_CASE("Gauss norm is multiplicative") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 200; ++i) {
        const UniPoly P = random_int_poly(rng, 6, 50), Q = random_int_poly(rng, 6, 50);
        for (std::uint64_t p : {2, 3, 5, 7}) CHECK(gauss_valuation(P * Q, p) == gauss_valuation(P, p) + gauss_valuation(Q, p));
    }
}

TEST_CASE("product height gap") {
    const UniPoly t = UniPoly::x(Var::t);
    const GelfondReport same = gelfond_gap(t, t);
    CHECK(same.ok);
    CHECK(same.ratio == 1);
    CHECK(same.gap.hi().to_double() <= 1e-30);
    const GelfondReport r = gelfond_gap(UniPoly(Var::t, {1, 1}), UniPoly(Var::t, {-1, 1}));
    CHECK(r.ok);
    CHECK(r.degree == 2);
    CHECK(r.hPQ.approx() == 0);
}

TEST_CASE("product height gap fuzz") {
    std::mt19937_64 rng(33);
    const Interval log2 = Interval::log_of(Integer(2), default_height_prec);
    for (int i = 0; i < 500; ++i) {
        const UniPoly P = random_int_poly(rng, 10, 1000), Q = random_int_poly(rng, 10, 1000);
        const GelfondReport g = gelfond_gap(P, Q);
        CHECK(g.ok);
        CHECK(g.gap.certainly_le(log2 * Rational(g.degree)));
    }
}

TEST_CASE("root height bound examples") {
    CHECK(root_height_bound(UniPoly::x(Var::t), 1).approx() == doctest::Approx(log2d));
    CHECK(root_height_bound(UniPoly(Var::t, {-2, 0, 1}), 2).approx() == doctest::Approx(1.5 * log2d));
    CHECK(root_height_bound(UniPoly(Var::t, {-1, 2}), 1).approx() == doctest::Approx(2 * log2d));
    CHECK_THROWS(root_height_bound(UniPoly(Var::t, {-1, 2}), 2));
}

TEST_CASE("height from a minimal polynomial") {
    CHECK(height_from_minpoly(UniPoly(Var::t, {-3, 1})).approx() == doctest::Approx(std::log(3.0)));
    CHECK(height_from_minpoly(UniPoly(Var::t, {-2, 0, 1})).approx() == doctest::Approx(0.5 * log2d));
    CHECK(height_from_minpoly(UniPoly(Var::t, {-1, 2})).approx() == doctest::Approx(log2d));
    CHECK_THROWS_AS(height_from_minpoly(UniPoly(Var::t, {-1, 0, 1})), std::invalid_argument);
}

TEST_CASE("root height sits below the coefficient bound") {
    const std::vector<UniPoly> corpus{
        UniPoly(Var::t, {-2, 0, 1}),         UniPoly(Var::t, {1, 0, 0, 0, 1}),    UniPoly(Var::t, {-1, -1, 1}),
        UniPoly(Var::t, {5, 0, 2}),          UniPoly(Var::t, {-3, 1}),            UniPoly(Var::t, {1, 1, 1, 1, 1}),
        UniPoly(Var::t, {7, 0, 0, 3}),       UniPoly(Var::t, {2, -6, 0, 0, 0, 5}), UniPoly(Var::t, {1, -10, 0, 1}),
    };
    for (const auto& P : corpus) {
        const HeightValue h = height_from_minpoly(P);
        const HeightValue b = root_height_bound(P, static_cast<unsigned>(P.degree()));
        CHECK(h.enclosure().certainly_le(b.enclosure()));
    }
}

TEST_CASE("canonical height estimates") {
    const UniPoly sq(Var::z, {0, 0, 1});
    const auto e = canonical_height_numeric(sq, 2, 10);
    CHECK(e.value.approx() == doctest::Approx(log2d).epsilon(1e-12));
    CHECK(e.C == doctest::Approx(0).epsilon(1e-12));

    const auto pre = canonical_height_numeric(UniPoly(Var::z, {-1, 0, 1}), 0, 10);
    CHECK(pre.preperiodic);
    CHECK(pre.value.approx() == 0);

    const UniPoly f(Var::z, {1, 0, 1});
    const auto a = canonical_height_numeric(f, 0, 20);
    const auto b = canonical_height_numeric(f, 0, 24);
    CHECK(std::fabs(a.value.approx() - b.value.approx()) < 1e-4);

    CHECK_THROWS_AS(canonical_height_numeric(f, 3, 40, default_height_prec, 1 << 16), ResourceCapError);
}

TEST_CASE("canonical height scales under the map") {
    const UniPoly f(Var::z, {1, 0, 1});
    for (const Rational x : {Rational(1, 2), Rational(3), Rational(-2, 5)}) {
        const unsigned n = 12;
        const auto lhs = canonical_height_numeric(f, f.eval(x), n);
        const auto rhs = canonical_height_numeric(f, x, n + 1);
        CHECK(std::fabs(lhs.value.approx() - 2 * rhs.value.approx()) <= 2 * (lhs.tail + 2 * rhs.tail) + 1e-12);
    }
}

TEST_CASE("specialization fit runs") {
    const Family f = Family::power_plus_t(2);
    const std::vector<Rational> samples{1, 2, 3, Rational(1, 2), 5};
    const auto fit = specialization_fit(f, 0, samples, 8);
    CHECK(fit.h_t.size() == samples.size());
    CHECK(std::isfinite(fit.slope));
}
