#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "heightlab/bigfloat.hpp"
#include "heightlab/exact_arith.hpp"
#include "heightlab/height_value.hpp"
#include "heightlab/unipoly.hpp"

namespace heightlab {

inline constexpr int default_factor_degree_cap = 128;

struct FactorList {
    struct Entry {
        UniPoly factor;  // primitive integer coefficients, positive leading coefficient
        unsigned multiplicity = 1;
    };
    Rational unit;
    std::vector<Entry> factors;

    /// unit * prod factor^multiplicity.
    UniPoly product(Var v) const;
    std::size_t count() const { return factors.size(); }
};

/// Yun decomposition: unit * prod part^multiplicity, parts squarefree,
/// pairwise coprime, primitive with positive leading coefficient.
struct SquarefreeDecomposition {
    Rational unit;
    std::vector<std::pair<UniPoly, unsigned>> parts;
};
SquarefreeDecomposition squarefree_decompose(const UniPoly& P);

/// Irreducible factorization over Q (Zassenhaus: good prime, Cantor-Zassenhaus
/// mod p, quadratic Hensel lifting, subset recombination). Throws
/// ResourceCapError when deg P exceeds degree_cap.
FactorList factor_over_Q(const UniPoly& P, int degree_cap = default_factor_degree_cap);

/// Factorization of a polynomial modulo a prime, as monic factors; exposed for tests.
std::vector<std::vector<std::uint64_t>> factor_mod_p(std::span<const Integer> coeffs, std::uint64_t p);

/// Eisenstein's criterion at p. Rejects non-integer coefficients.
bool eisenstein(const UniPoly& P, const Integer& p);

/// Eisenstein at lambda = 1 - zeta_p applied to t^n P(1/t), where coeffs[k] is
/// the coefficient of t^k. d must equal the prime p of the coefficients;
/// prime powers p^k with k >= 2 throw std::domain_error, other d throw
/// std::invalid_argument.
bool cyclo_eisenstein_reversed(std::span<const CyclotomicInt> coeffs, std::uint64_t d);

struct RootBox {
    BigFloat re, im;
    BigFloat radius;  // the closed disk of this radius around (re, im) holds exactly one root
    std::string str(int digits = 20) const;
};

/// One certified disk per distinct root of the squarefree part of P. The
/// working precision doubles until every radius is at most target_radius
/// and the disks are pairwise disjoint.
std::vector<RootBox> complex_roots(const UniPoly& P, const Rational& target_radius = Rational(1, 1000000000));

/// Weil height of a root of an irreducible P, h = log M(P) / deg P, from
/// certified roots. Exact when every root is certifiably inside the closed
/// unit disk (M = |lead|) or outside the open one (M = |constant|).
HeightValue mahler_root_height(const UniPoly& irreducible, mpfr_prec_t prec = bits_for_digits(30));

struct RootHeightRow {
    UniPoly factor;
    int degree = 0;
    unsigned multiplicity = 1;
    HeightValue height;
};
std::vector<RootHeightRow> roots_height_table(const UniPoly& P, mpfr_prec_t prec = bits_for_digits(30),
                                              int degree_cap = default_factor_degree_cap);

}  // namespace heightlab
