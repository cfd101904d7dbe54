#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "heightlab/errors.hpp"
#include "heightlab/factor_roots.hpp"
#include "heightlab/heights.hpp"

using namespace heightlab;

namespace {

const double log2d = std::log(2.0);

UniPoly T(std::vector<Rational> c) { return UniPoly(Var::t, std::move(c)); }

std::complex<double> horner(const UniPoly& P, std::complex<double> z) {
    std::complex<double> acc = 0;
    for (std::size_t i = P.coeffs().size(); i-- > 0;) acc = acc * z + P.coeffs()[i].get_d();
    return acc;
}

double newton_real(const UniPoly& P, double x) {
    const UniPoly D = P.derivative();
    for (int i = 0; i < 60; ++i) x -= horner(P, x).real() / horner(D, x).real();
    return x;
}

UniPoly random_poly(std::mt19937_64& rng, int deg, long bound) {
    std::vector<Rational> c;
    for (int i = 0; i < deg; ++i) c.emplace_back(static_cast<long>(rng() % static_cast<unsigned long>(2 * bound + 1)) - bound);
    c.emplace_back(static_cast<long>(rng() % static_cast<unsigned long>(bound)) + 1);
    return T(c);
}

std::vector<int> degree_multiset(const FactorList& fl) {
    std::vector<int> out;
    for (const auto& e : fl.factors)
        for (unsigned m = 0; m < e.multiplicity; ++m) out.push_back(e.factor.degree());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("squarefree decomposition") {
    const auto a = squarefree_decompose(T({1, -2, 1}));
    REQUIRE(a.parts.size() == 1);
    CHECK(a.parts[0] == std::pair{T({-1, 1}), 2U});

    const auto b = squarefree_decompose(T({-1, 0, 1}));
    REQUIRE(b.parts.size() == 1);
    CHECK(b.parts[0] == std::pair{T({-1, 0, 1}), 1U});

    const auto c = squarefree_decompose(T({0, 0, 1, 1}));
    REQUIRE(c.parts.size() == 2);
    CHECK(std::find(c.parts.begin(), c.parts.end(), std::pair{T({0, 1}), 2U}) != c.parts.end());
    CHECK(std::find(c.parts.begin(), c.parts.end(), std::pair{T({1, 1}), 1U}) != c.parts.end());
}

TEST_CASE("factorization examples") {
    const FactorList a = factor_over_Q(T({-1, 0, 1}));
    REQUIRE(a.count() == 2);
    CHECK(a.factors[0].factor.degree() == 1);
    CHECK(a.product(Var::t) == T({-1, 0, 1}));

    const FactorList q = factor_over_Q(T({1, 0, 0, 0, 1}));
    REQUIRE(q.count() == 1);
    CHECK(q.factors[0].factor == T({1, 0, 0, 0, 1}));

    // f = z^2 + t, a = 0, b = 1: f^2(a) - f^2(b) = -2t - 1
    const FactorList l = factor_over_Q(T({-1, -2}));
    CHECK(l.unit == -1);
    REQUIRE(l.count() == 1);
    CHECK(l.factors[0].factor == T({1, 2}));

    CHECK(factor_over_Q(T({-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1})).count() == 6);
    CHECK_THROWS_AS(factor_over_Q(T({1, 0, 0, 0, 1}), 3), ResourceCapError);
}

TEST_CASE("Swinnerton-Dyer polynomial is irreducible") {
    // minimal polynomial of sqrt2 + sqrt3 + sqrt5
    const UniPoly sd = T({576, 0, -960, 0, 352, 0, -40, 0, 1});
    const FactorList f = factor_over_Q(sd);
    CHECK(f.count() == 1);
    CHECK(f.factors[0].factor.degree() == 8);
}

TEST_CASE("factorization round-trips on random products") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 60; ++i) {
        UniPoly prod = T({make_rational(static_cast<long>(rng() % 5) + 1, 3)});
        const int k = 1 + static_cast<int>(rng() % 3);
        for (int j = 0; j < k; ++j) {
            const UniPoly q = random_poly(rng, 1 + static_cast<int>(rng() % 4), 9);
            prod *= q;
        }
        const FactorList fl = factor_over_Q(prod);
        CHECK(fl.product(Var::t) == prod);
        for (const auto& e : fl.factors) CHECK(factor_over_Q(e.factor).count() == 1);
    }
}

TEST_CASE("repeated factors carry multiplicity") {
    const UniPoly a = T({1, 1, 1}), b = T({-2, 3});
    const UniPoly P = a.pow(3) * b.pow(2) * T({0, 1});
    const FactorList fl = factor_over_Q(P);
    CHECK(fl.product(Var::t) == P);
    CHECK(degree_multiset(fl) == std::vector<int>{1, 1, 1, 2, 2, 2});
}

TEST_CASE("factorization modulo p") {
    // t^2 + 1 = (t + 2)(t + 3) mod 5
    const std::vector<Integer> c{1, 0, 1};
    const auto f = factor_mod_p(c, 5);
    CHECK(f.size() == 2);
    CHECK(factor_mod_p(c, 3).size() == 1);
}

TEST_CASE("Eisenstein criterion") {
    CHECK(eisenstein(T({5, 0, 2}), 5));
    CHECK_FALSE(eisenstein(T({1, 0, 1}), 2));
    CHECK_FALSE(eisenstein(T({-4, 0, 1}), 2));
    CHECK_THROWS_AS(eisenstein(T({Rational(1, 2), 1}), 2), std::invalid_argument);
    for (const auto& P : {T({5, 0, 2}), T({6, 3, 9, 1}), T({10, 5, 5, 5, 3}), T({-14, 7, 0, 0, 0, 4})}) {
        bool any = false;
        for (long p : {2, 3, 5, 7}) any = any || eisenstein(P, p);
        REQUIRE(any);
        CHECK(factor_over_Q(P).count() == 1);
    }
}

TEST_CASE("Eisenstein at lambda on reversed polynomials") {
    const std::uint64_t p = 3;
    const CyclotomicInt one(p, Integer(1)), zeta = CyclotomicInt::zeta(p);
    const CyclotomicInt lambda = one - zeta;
    const CyclotomicInt lead = one - zeta * CyclotomicInt(p, Integer(27));
    const std::vector<CyclotomicInt> shape{lead, lambda};
    CHECK(cyclo_eisenstein_reversed(shape, 3));

    const std::vector<CyclotomicInt> units{one, one, one};
    CHECK_FALSE(cyclo_eisenstein_reversed(units, 3));
    const std::vector<CyclotomicInt> deep{one, lambda * lambda};
    CHECK_FALSE(cyclo_eisenstein_reversed(deep, 3));

    CHECK_THROWS_AS(cyclo_eisenstein_reversed(shape, 9), std::domain_error);
    CHECK_THROWS_AS(cyclo_eisenstein_reversed(shape, 6), std::invalid_argument);
}

TEST_CASE("complex roots examples") {
    const auto i_roots = complex_roots(T({1, 0, 1}));
    REQUIRE(i_roots.size() == 2);
    for (const auto& r : i_roots) {
        CHECK(std::fabs(r.re.to_double()) < 1e-9);
        CHECK(std::fabs(std::fabs(r.im.to_double()) - 1) < 1e-9);
    }
    const UniPoly s2 = T({-2, 0, 1});
    const auto r2 = complex_roots(s2);
    REQUIRE(r2.size() == 2);
    for (const auto& r : r2) {
        const double x = r.re.to_double();
        CHECK(std::fabs(x - newton_real(s2, x > 0 ? 1.0 : -1.0)) < 1e-8);
        CHECK(r.radius.to_double() <= 1e-9);
    }
}

TEST_CASE("root boxes count the distinct roots") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
        UniPoly P = random_poly(rng, 1 + static_cast<int>(rng() % 7), 20);
        if (rng() % 3 == 0) P *= T({Rational(static_cast<long>(rng() % 5) - 2), 1}).pow(2);
        const UniPoly sf = P.exact_div(gcd(P, P.derivative()));
        const auto boxes = complex_roots(P);
        CHECK(static_cast<int>(boxes.size()) == sf.degree());
        // |P(center)| should be tiny compared with |P'| times the radius envelope
        for (const auto& b : boxes) {
            const std::complex<double> c(b.re.to_double(), b.im.to_double());
            const double scale = std::abs(horner(sf.derivative(), c)) + 1;
            CHECK(std::abs(horner(sf, c)) <= scale * (b.radius.to_double() + 1e-12));
        }
    }
}

TEST_CASE("Mahler root heights") {
    CHECK(mahler_root_height(T({1, 2})).approx() == doctest::Approx(log2d));
    CHECK(mahler_root_height(T({-2, 0, 1})).approx() == doctest::Approx(0.5 * log2d));
    const HeightValue golden = mahler_root_height(T({-1, -1, 1}));
    CHECK(golden.approx() == doctest::Approx(0.5 * std::log((1 + std::sqrt(5.0)) / 2)));
    CHECK(golden.error_bound() < 1e-20);
}

TEST_CASE("root height tables") {
    const auto one = roots_height_table(T({1, 2}));
    REQUIRE(one.size() == 1);
    CHECK(one[0].degree == 1);
    CHECK(one[0].height.approx() == doctest::Approx(log2d));

    const auto two = roots_height_table(T({-2, 1}) * T({-2, 0, 1}));
    REQUIRE(two.size() == 2);
    std::vector<double> hs{two[0].height.approx(), two[1].height.approx()};
    std::sort(hs.begin(), hs.end());
    CHECK(hs[0] == doctest::Approx(0.5 * log2d));
    CHECK(hs[1] == doctest::Approx(log2d));
}

TEST_CASE("root heights respect the coefficient bound") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 30; ++i) {
        const UniPoly P = random_poly(rng, 1 + static_cast<int>(rng() % 6), 30);
        for (const auto& row : roots_height_table(P)) {
            const HeightValue b = root_height_bound(row.factor, static_cast<unsigned>(row.degree));
            CHECK(row.height.enclosure().certainly_le(b.enclosure()));
        }
    }
}
