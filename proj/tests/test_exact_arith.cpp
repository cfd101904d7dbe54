#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heightlab/exact_arith.hpp"

using namespace heightlab;

namespace {

// vp by repeated division, independent of the library routine
long naive_vp_int(Integer x, long p) {
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

Rational falling_oracle(unsigned k, unsigned m) {
    Integer num = 1, fact = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= 1 - static_cast<long>(i) * static_cast<long>(m);
        fact *= i + 1;
    }
    Rational r(num, fact);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("valuations of rationals") {
    CHECK(vp(Rational(12), 2) == Valuation(2));
    CHECK(vp(Rational(1, 9), 3) == Valuation(-2));
    CHECK(vp(Rational(0), 5).is_infinite());
    CHECK(vp(Integer(0), 5) == Valuation::infinity());
    CHECK_THROWS_AS(vp(Rational(3), 4), std::invalid_argument);
}

TEST_CASE("valuation ordering treats infinity as largest") {
    CHECK(Valuation(100) < Valuation::infinity());
    CHECK((Valuation(3) + Valuation::infinity()).is_infinite());
    CHECK(Valuation(-2) + Valuation(5) == Valuation(3));
}

TEST_CASE("make_rational reduces and rejects zero denominators") {
    const Rational r = make_rational(6, -4);
    CHECK(r.get_num() == -3);
    CHECK(r.get_den() == 2);
    CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
    CHECK(parse_rational("-10/4") == Rational(-5, 2));
}

TEST_CASE("vp is a valuation on random rationals") {
    std::mt19937_64 rng(11);
    auto draw = [&]() -> Rational {
        const long n = static_cast<long>(rng() % 20001) - 10000;
        const long d = static_cast<long>(rng() % 5000) + 1;
        return make_rational(n, d);
    };
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
        for (int i = 0; i < 1000; ++i) {
            const Rational x = draw(), y = draw();
            CHECK(vp(Rational(x * y), p) == vp(x, p) + vp(y, p));
            const Valuation vx = vp(x, p), vy = vp(y, p);
            const Valuation vs = vp(Rational(x + y), p);
            CHECK(vs >= std::min(vx, vy));
            if (vx != vy) CHECK(vs == std::min(vx, vy));
        }
    }
}

TEST_CASE("vp agrees with repeated division") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const Integer x = static_cast<long>(rng() % 1000000) + 1;
        for (long p : {2, 3, 5, 7}) CHECK(vp(x, p).value() == naive_vp_int(x, p));
    }
}

TEST_CASE("lemma61_value examples") {
    CHECK(lemma61_value(1, 7) == 1);
    CHECK(lemma61_value(3, 2) == Rational(1, 2));
    CHECK(vp(lemma61_value(3, 2), 5) == Valuation(0));
    CHECK(lemma61_value(4, 3) == Rational(-10, 3));
    CHECK(vp(lemma61_value(4, 3), 2) == Valuation(1));
    CHECK_THROWS_AS(lemma61_value(0, 3), std::invalid_argument);
}

TEST_CASE("lemma61_value matches the product formula and is p-integral") {
    for (unsigned k = 1; k <= 40; ++k)
        for (unsigned m = 1; m <= 12; ++m) {
            const Rational v = lemma61_value(k, m);
            CHECK(v == falling_oracle(k, m));
            for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19})
                if (m % p != 0) CHECK(vp(v, p) >= Valuation(0));
        }
}

TEST_CASE("primes and prime powers") {
    CHECK(is_prime(std::uint64_t{97}));
    CHECK_FALSE(is_prime(std::uint64_t{91}));
    CHECK(prime_power(8) == std::pair<std::uint64_t, unsigned>{2, 3});
    CHECK(prime_power(12) == std::pair<std::uint64_t, unsigned>{0, 0});
    const auto f = factor_small(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::uint64_t, unsigned>{2, 3});
    CHECK(f[2] == std::pair<std::uint64_t, unsigned>{5, 1});
}

TEST_CASE("lambda valuation in Z[zeta_p]") {
    for (std::uint64_t p : {3, 5, 7}) {
        const CyclotomicInt one(p, Integer(1));
        const CyclotomicInt lambda = one - CyclotomicInt::zeta(p);
        CHECK(cyclo_lambda_valuation(one) == Valuation(0));
        CHECK(cyclo_lambda_valuation(lambda) == Valuation(1));
        CHECK(cyclo_lambda_valuation(CyclotomicInt(p, Integer(static_cast<long>(p)))) ==
              Valuation(static_cast<std::int64_t>(p - 1)));
        CHECK(cyclo_lambda_valuation(CyclotomicInt(p)).is_infinite());
        // norm of 1 - zeta is Phi_p(1) = p
        CHECK(lambda.norm() == static_cast<long>(p));
    }
}

TEST_CASE("lambda valuation is additive on random products") {
    std::mt19937_64 rng(17);
    for (std::uint64_t p : {3, 5, 7}) {
        for (int i = 0; i < 200; ++i) {
            std::vector<Integer> a(p - 1), b(p - 1);
            for (auto& x : a) x = static_cast<long>(rng() % 41) - 20;
            for (auto& x : b) x = static_cast<long>(rng() % 41) - 20;
            const CyclotomicInt x(p, a), y(p, b);
            CHECK(cyclo_lambda_valuation(x * y) == cyclo_lambda_valuation(x) + cyclo_lambda_valuation(y));
        }
    }
}

TEST_CASE("zeta has order p") {
    const CyclotomicInt z = CyclotomicInt::zeta(5);
    CyclotomicInt acc(5, Integer(1));
    for (int i = 0; i < 5; ++i) acc = acc * z;
    CHECK(acc == CyclotomicInt(5, Integer(1)));
}

TEST_CASE("resultant and determinant") {
    // Res(t - 2, t^2 + 1) = 2^2 + 1
    const std::vector<Integer> a{-2, 1}, b{1, 0, 1};
    CHECK(integer_resultant(a, b) == 5);
    CHECK(bareiss_determinant({2, 1, 1, 3}, 2) == 5);
}
