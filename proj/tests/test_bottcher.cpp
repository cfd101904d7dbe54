#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heightlab/bottcher.hpp"
#include "heightlab/errors.hpp"

using namespace heightlab;

namespace {

Rational pow5(long k) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 5, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? Rational(1) / Rational(p) : Rational(p);
}

// B(z) for z^2 + c at a large real z: log B = log z + sum_n 2^{-(n+1)} log(1 + c / P^n(z)^2)
double bottcher_limit(double z, double c) {
    double lb = std::log(z), w = z, scale = 0.5;
    for (int n = 0; n < 40 && std::fabs(w) < 1e150; ++n) {
        lb += scale * std::log1p(c / (w * w));
        w = w * w + c;
        scale /= 2;
    }
    return std::exp(lb);
}

}  // namespace

TEST_CASE("low coefficients in closed form") {
    const BottcherSeries S = compute_coeffs(2, 4);
    const MultiPoly a1 = MultiPoly::variable(2, 1), a2 = MultiPoly::variable(2, 2);
    CHECK(S.B[0] == a1 * Rational(1, 2));
    CHECK(S.B[1] == a1.pow(2) * Rational(-1, 8) + a1 * Rational(1, 4) + a2 * Rational(1, 2));
    CHECK(bottcher_level(2, 16) == 5);
    CHECK(bottcher_level(3, 10) == 3);
}

TEST_CASE("power map has trivial coefficients") {
    for (unsigned d : {2U, 3U}) {
        const BottcherSeries S = compute_coeffs(d, 8);
        const std::vector<Rational> zero(d, Rational(0));
        for (const auto& b : S.B) CHECK(b.eval(zero) == 0);
    }
}

TEST_CASE("coefficients stabilize across levels") {
    CHECK(stabilization_check(2, 16).ok);
    CHECK(stabilization_check(3, 10).ok);
}

TEST_CASE("functional equation") {
    const FunctionalEquationReport a = functional_equation_check(compute_coeffs(2, 16));
    CHECK(a.ok());
    CHECK(a.certified_order == 15);
    const FunctionalEquationReport b = functional_equation_check(compute_coeffs(3, 10));
    CHECK(b.ok());
    CHECK(b.certified_order == 8);

    BottcherSeries bad = compute_coeffs(2, 8);
    bad.B[0] += MultiPoly::constant(2, 1);
    CHECK_FALSE(functional_equation_check(bad).ok());
}

TEST_CASE("coefficient valuations") {
    const BottcherSeries S = compute_coeffs(2, 12);
    const CoeffValuationReport two = coeff_valuation_check(S, 2);
    CHECK(two.p_divides_d);
    CHECK(two.ok);
    CHECK(two.min_valuation[0] == Valuation(-1));
    for (std::uint64_t p : {3, 5, 7}) {
        const CoeffValuationReport r = coeff_valuation_check(S, p);
        CHECK_FALSE(r.p_divides_d);
        CHECK(r.ok);
        for (const auto& v : r.min_valuation) CHECK(v >= Valuation(0));
    }
    CHECK(coeff_valuation_check(compute_coeffs(3, 8), 3).ok);
}

TEST_CASE("consecutive levels agree to the expected order") {
    for (unsigned n = 1; n <= 3; ++n) CHECK(level_difference_check(2, n).ok);
    CHECK(level_difference_check(3, 2).ok);
}

TEST_CASE("p-adic evaluation examples") {
    const BottcherSeries S = compute_coeffs(2, 16);
    const std::vector<Rational> power{0, 0};
    const PadicEvalResult id = eval_padic(S, Rational(1, 5), power, 5);
    CHECK(id.partial_sum == Rational(1, 5));

    const std::vector<Rational> avec{0, 1};
    const PadicEvalResult r = eval_padic(S, Rational(1, 5), avec, 5);
    CHECK(vp(r.partial_sum, 5) == Valuation(-1));
    CHECK(r.tail_bound == Valuation(17));

    // doubling J stays within the certified tail
    const BottcherSeries S2 = compute_coeffs(2, 32);
    for (const Rational z : {Rational(1, 5), Rational(3, 25), Rational(-7, 125)}) {
        const PadicEvalResult a = eval_padic(S, z, avec, 5), b = eval_padic(S2, z, avec, 5);
        CHECK(vp(Rational(a.partial_sum - b.partial_sum), 5) >= a.tail_bound);
    }
}

TEST_CASE("p-adic functional equation residuals") {
    const BottcherSeries S = compute_coeffs(2, 16);
    const std::vector<Rational> avec{0, 1};
    for (long u : {1, 2, 3, 4, 7, 13, 101})
        for (long k : {1, 2, 3}) CHECK(padic_functional_residual(S, Rational(u) * pow5(-k), avec, 5).ok());
}

TEST_CASE("p-adic isometry probe") {
    const BottcherSeries S = compute_coeffs(2, 16);
    const std::vector<Rational> avec{0, 1};
    const Rational z(2, 25);
    const std::vector<std::pair<Rational, Rational>> pairs{
        {z, z + pow5(0)}, {z, z + 3 * pow5(4)}, {z, z + pow5(40)}};
    const auto rows = injectivity_probe(S, pairs, avec, 5);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].status == IsometryStatus::holds);
    CHECK(rows[0].v_images == rows[0].v_points);
    CHECK(rows[1].status == IsometryStatus::holds);
    CHECK(rows[1].v_points == Valuation(4));
    CHECK(rows[2].status == IsometryStatus::inconclusive);
    CHECK(to_string(IsometryStatus::holds) == "holds");
}

TEST_CASE("p-adic domain") {
    const BottcherSeries S = compute_coeffs(2, 8);
    const std::vector<Rational> avec{0, 1};
    CHECK(padic_domain_violation(2, Rational(1, 5), avec, 5).empty());
    CHECK_FALSE(padic_domain_violation(2, Rational(1), avec, 5).empty());
    CHECK_THROWS_AS(eval_padic(S, Rational(5), avec, 5), std::domain_error);
    CHECK_THROWS_AS(eval_padic(S, Rational(0), avec, 5), std::domain_error);
    const std::vector<Rational> wild{Rational(1, 125), 1};
    CHECK_THROWS_AS(eval_padic(S, Rational(1, 5), wild, 5), std::domain_error);
}

TEST_CASE("series matches the real Bottcher limit") {
    const BottcherSeries S = compute_coeffs(2, 16);
    for (const double c : {1.0, -2.0, 0.5}) {
        const std::vector<Rational> avec{0, Rational(c)};
        for (const double z : {8.0, 20.0}) {
            double series = z, zp = 1;
            for (const auto& b : S.B) {
                series += b.eval(avec).get_d() / zp;
                zp *= z;
            }
            CHECK(series == doctest::Approx(bottcher_limit(z, c)).epsilon(1e-12));
        }
    }
}

TEST_CASE("generic cap applies") {
    CHECK_THROWS_AS(compute_coeffs(3, 60, 50), ResourceCapError);
}
