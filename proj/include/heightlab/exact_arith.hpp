#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace heightlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws std::invalid_argument on den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "a" or "a/b" (decimal integers, optional sign on a).
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& x);

/// Valuation with a distinguished +infinity, which is the valuation of zero.
class Valuation {
public:
    constexpr Valuation() = default;  // +infinity
    constexpr explicit Valuation(std::int64_t v) : value_(v), finite_(true) {}

    static constexpr Valuation infinity() { return Valuation{}; }

    constexpr bool is_infinite() const { return !finite_; }
    constexpr bool is_finite() const { return finite_; }
    /// Precondition: is_finite().
    std::int64_t value() const;

    friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (!a.finite_ || !b.finite_) {
            if (!a.finite_ && !b.finite_) return std::strong_ordering::equal;
            return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return a.value_ <=> b.value_;
    }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return Valuation(a.value_ + b.value_);
    }

    std::string str() const;

private:
    std::int64_t value_ = 0;
    bool finite_ = false;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

bool is_prime(const Integer& n);
bool is_prime(std::uint64_t n);

/// If n = p^k with p prime and k >= 1, returns {p, k}; otherwise {0, 0}.
std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t n);

/// Prime factorisation of a small positive integer by trial division,
/// ascending primes.
std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t n);

/// p-adic valuation. Throws std::invalid_argument if p is not prime.
Valuation vp(const Integer& x, std::uint64_t p);
Valuation vp(const Rational& x, std::uint64_t p);

/// prod_{i=0}^{k-1} (1 - i m) / k!, which is p-integral for every prime p not dividing m.
Rational lemma61_value(unsigned k, unsigned m);

/// Element of Z[zeta_p] stored as coefficients of 1, zeta, ..., zeta^{p-2}
/// (the power basis modulo the p-th cyclotomic polynomial).
class CyclotomicInt {
public:
    /// Zero element of Z[zeta_p]. Throws std::invalid_argument if p is not an odd-or-two prime.
    explicit CyclotomicInt(std::uint64_t p);
    CyclotomicInt(std::uint64_t p, const Integer& constant);
    /// Arbitrary coefficient vector in powers of zeta (any length); reduced
    /// using zeta^p = 1 and 1 + zeta + ... + zeta^{p-1} = 0.
    CyclotomicInt(std::uint64_t p, std::span<const Integer> powers_of_zeta);

    static CyclotomicInt zeta(std::uint64_t p);

    std::uint64_t prime() const { return p_; }
    const std::vector<Integer>& coeffs() const { return c_; }
    bool is_zero() const;

    CyclotomicInt operator+(const CyclotomicInt& o) const;
    CyclotomicInt operator-(const CyclotomicInt& o) const;
    CyclotomicInt operator-() const;
    CyclotomicInt operator*(const CyclotomicInt& o) const;
    bool operator==(const CyclotomicInt& o) const = default;

    /// Field norm N_{Q(zeta_p)/Q}, computed as Res(Phi_p, x).
    Integer norm() const;

    std::string str() const;

private:
    void check_same_ring(const CyclotomicInt& o) const;

    std::uint64_t p_;
    std::vector<Integer> c_;
};

/// Valuation at lambda = 1 - zeta_p. Equals vp(norm(x)) because lambda is the
/// unique prime above p, totally ramified with residue degree one.
Valuation cyclo_lambda_valuation(const CyclotomicInt& x);

/// Determinant of a square integer matrix (row-major, n*n) by fraction-free
/// Bareiss elimination.
Integer bareiss_determinant(std::vector<Integer> m, std::size_t n);

/// Resultant of two integer polynomials given by ascending coefficient
/// vectors (leading coefficients nonzero), via the Sylvester determinant.
Integer integer_resultant(std::span<const Integer> a, std::span<const Integer> b);

}  // namespace heightlab
