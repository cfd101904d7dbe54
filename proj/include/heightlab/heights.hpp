#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "heightlab/dynamics.hpp"
#include "heightlab/exact_arith.hpp"
#include "heightlab/height_value.hpp"
#include "heightlab/unipoly.hpp"

namespace heightlab {

inline const mpfr_prec_t default_height_prec = bits_for_digits(HeightValue::default_digits);

/// log max(|p|, q) for x = p/q in lowest terms.
HeightValue weil_height_rational(const Rational& x, mpfr_prec_t prec = default_height_prec);

/// max |n_i| / gcd(n_i) for the coefficients n_i after clearing denominators.
Integer hpol_ratio(const UniPoly& P);
/// Height of the projective point of the coefficients: log hpol_ratio(P).
HeightValue hpol(const UniPoly& P, mpfr_prec_t prec = default_height_prec);

/// min_i vp(coeff_i); the p-adic Gauss norm is p^(-value).
Valuation gauss_valuation(const UniPoly& P, std::uint64_t p);

struct GelfondReport {
    HeightValue hP, hQ, hPQ;
    int degree = 0;        // deg(PQ)
    Rational ratio;        // H(PQ) / (H(P) H(Q))
    Interval gap;          // |h(PQ) - h(P) - h(Q)|
    bool ok = false;       // 2^-deg <= ratio <= 2^deg, decided exactly
};
GelfondReport gelfond_gap(const UniPoly& P, const UniPoly& Q, mpfr_prec_t prec = default_height_prec);

/// (deg(P) log 2 + hpol(P)) / dprime, 1 <= dprime <= deg P.
HeightValue root_height_bound(const UniPoly& P, unsigned dprime, mpfr_prec_t prec = default_height_prec);

/// h(alpha) for a root of P. P must be irreducible over Q; this is certified
/// by Eisenstein when possible and by factor_over_Q otherwise, and reducible
/// input throws std::invalid_argument.
HeightValue height_from_minpoly(const UniPoly& P, mpfr_prec_t prec = default_height_prec);

struct CanonicalHeightEstimate {
    HeightValue value;                 // h(f^n(x)) / d^n at the last n computed
    unsigned n = 0;
    double tail = 0;                   // estimated |h^ - value|, C / ((d-1) d^n)
    double C = 0;                      // max |h(f(y)) - d h(y)| seen along the orbit
    bool preperiodic = false;          // orbit repeated; the height is exactly 0
    std::vector<double> normalized;    // h(f^k(x)) / d^k for k = 0..n
};

inline constexpr std::uint64_t default_orbit_bit_cap = 1ull << 28;

/// Reported, not asserted: the limit is approached from h(f^n(x))/d^n.
/// Throws ResourceCapError when an orbit value would exceed bit_cap bits.
CanonicalHeightEstimate canonical_height_numeric(const UniPoly& f, const Rational& x, unsigned nmax,
                                                 mpfr_prec_t prec = default_height_prec,
                                                 std::uint64_t bit_cap = default_orbit_bit_cap);

/// Least-squares fit of |h^_{f_t}(x) - h(x)| against h(t) over sampled t.
struct SpecializationFit {
    std::vector<double> h_t, deviation;
    double slope = 0, intercept = 0;
};
SpecializationFit specialization_fit(const Family& f, const Rational& x, std::span<const Rational> samples,
                                     unsigned nmax);

}  // namespace heightlab
