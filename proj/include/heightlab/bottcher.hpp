#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heightlab/dynamics.hpp"
#include "heightlab/exact_arith.hpp"
#include "heightlab/multipoly.hpp"

namespace heightlab {

/// B(z) = z + sum_{j=0}^{J} B_j / z^j for P = z^d + a1 z^{d-1} + ... + a_d,
/// read off F_n = z (P^n(z) / z^{d^n})^{1/d^n}.
struct BottcherSeries {
    unsigned d = 0;
    unsigned J = 0;
    unsigned level = 0;
    std::vector<MultiPoly> B;
};

/// Smallest n with d^n - 1 > J.
unsigned bottcher_level(unsigned d, unsigned J);

BottcherSeries compute_coeffs(unsigned d, unsigned J, std::uint64_t cap = default_generic_cap);
/// Same, read from F_level; only B_j with j < d^level - 1 are the true coefficients.
BottcherSeries compute_coeffs_at_level(unsigned d, unsigned J, unsigned level, std::uint64_t cap = default_generic_cap);

/// Coefficients g_0..g_order of F_level = z * sum_k g_k z^{-k}.
std::vector<MultiPoly> bottcher_F(unsigned d, unsigned level, unsigned order, std::uint64_t cap = default_generic_cap);

struct StabilizationReport {
    unsigned d = 0, J = 0, level = 0;
    bool ok = true;
    std::vector<unsigned> mismatches;  // j with B_{level,j} != B_{level+1,j}
};
StabilizationReport stabilization_check(unsigned d, unsigned J, std::uint64_t cap = default_generic_cap);

/// F_{n+1} - F_n in z^{-(d^n - 1)} R0: every coefficient of z^1 .. z^{-(d^n - 2)} cancels.
struct LevelDifferenceReport {
    unsigned d = 0, n = 0;
    bool ok = true;
    int first_nonzero = -1;  // exponent e of the first z^{-e} that survives, -1 if none within the window
};
LevelDifferenceReport level_difference_check(unsigned d, unsigned n, std::uint64_t cap = default_generic_cap);

/// B(P(z)) = B(z)^d, checked as p^(z) U(P(z)) = U(z)^d in R0 with U = B/z and
/// p^ = P/z^d. U is known through 1/z^{J+1}, so J + 2 coefficients are
/// compared; in B's own expansion this certifies z^d down to z^{-(J-(d-1))}.
struct FunctionalEquationReport {
    unsigned d = 0, J = 0;
    int certified_order = 0;  // J - (d - 1)
    unsigned checked = 0;     // number of R0 coefficients compared
    std::vector<unsigned> nonzero;
    bool ok() const { return nonzero.empty(); }
};
FunctionalEquationReport functional_equation_check(const BottcherSeries& B);

struct CoeffValuationReport {
    unsigned d = 0;
    std::uint64_t p = 0;
    bool p_divides_d = false;
    std::vector<Valuation> min_valuation;  // index j
    std::vector<std::int64_t> bound;       // index j
    bool ok = true;
};
/// p does not divide d: every coefficient of B_j is p-integral. p | d: every
/// coefficient valuation is >= ceil(-(j+1)(vp(d) + 1/(p-1))).
CoeffValuationReport coeff_valuation_check(const BottcherSeries& B, std::uint64_t p);

struct PadicEvalResult {
    std::uint64_t p = 0;
    Rational z;
    std::vector<Rational> avec;
    unsigned J = 0;
    Rational partial_sum;
    Valuation tail_bound;  // every omitted term has at least this valuation
};

/// Domain check for the p-adic evaluation; returns an empty string when z is
/// in the domain and the failing inequality otherwise.
std::string padic_domain_violation(unsigned d, const Rational& z, std::span<const Rational> avec, std::uint64_t p);

/// z + sum_{j <= J} B_j(avec) / z^j with a certified tail valuation. Throws
/// std::domain_error naming the failed inequality outside the domain.
PadicEvalResult eval_padic(const BottcherSeries& B, const Rational& z, std::span<const Rational> avec, std::uint64_t p);

struct PadicResidual {
    Valuation residual;  // vp(S(P(z)) - S(z)^d)
    Valuation bound;     // min(tail(P(z)), tail(z) + (d-1) vp(z))
    bool ok() const { return residual >= bound; }
};
PadicResidual padic_functional_residual(const BottcherSeries& B, const Rational& z, std::span<const Rational> avec,
                                        std::uint64_t p);

enum class IsometryStatus { holds, violated, inconclusive };

struct InjectivityRow {
    Rational z, z2;
    Valuation v_points;  // vp(z - z')
    Valuation v_images;  // vp(S(z) - S(z'))
    Valuation tail;      // min of both tail bounds
    IsometryStatus status = IsometryStatus::inconclusive;
};
std::vector<InjectivityRow> injectivity_probe(const BottcherSeries& B,
                                              std::span<const std::pair<Rational, Rational>> pairs,
                                              std::span<const Rational> avec, std::uint64_t p);

std::string to_string(IsometryStatus s);

}  // namespace heightlab
