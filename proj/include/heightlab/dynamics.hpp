#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heightlab/exact_arith.hpp"
#include "heightlab/height_value.hpp"
#include "heightlab/multipoly.hpp"
#include "heightlab/unipoly.hpp"

namespace heightlab {

inline constexpr std::uint64_t default_generic_cap = 4096;
inline constexpr std::uint64_t default_orbit_degree_cap = 1'000'000;

/// f_t(z) = sum_k c_k(t) z^k with c_k in Q[t]; degree in z at least 2.
class Family {
public:
    /// coeffs[k] is the coefficient of z^k.
    explicit Family(std::vector<UniPoly> coeffs);
    /// A map with constant coefficients, from a polynomial in z.
    static Family constant_map(const UniPoly& f_of_z);
    /// z^d + t.
    static Family power_plus_t(unsigned d);

    unsigned degree() const { return static_cast<unsigned>(c_.size() - 1); }
    const UniPoly& coeff(unsigned k) const { return c_.at(k); }
    const std::vector<UniPoly>& coeffs() const { return c_; }
    const UniPoly& lead() const { return c_.back(); }
    bool is_monic() const;
    bool is_constant_in_t() const;

    /// f_t(x(t)) by Horner's rule.
    UniPoly apply(const UniPoly& x) const;
    Rational apply(const Rational& t0, const Rational& x) const;
    /// f_{t0} as a polynomial in z.
    UniPoly specialize(const Rational& t0) const;

    std::string str() const;

private:
    std::vector<UniPoly> c_;
};

/// n-fold iterate f^n(a) in Q[t]. Throws ResourceCapError if the t-degree
/// would exceed degree_cap.
UniPoly iterate_orbit(const Family& f, const UniPoly& a, unsigned n,
                      std::uint64_t degree_cap = default_orbit_degree_cap);

/// Coefficients A_{n,0..d^n} of the n-th iterate of z^d + a1 z^{d-1} + ... + a_d.
struct GenericIterate {
    unsigned d = 0;
    unsigned n = 0;
    std::vector<MultiPoly> A;
};

/// Throws ResourceCapError if d^n exceeds cap.
GenericIterate generic_iterate(unsigned d, unsigned n, std::uint64_t cap = default_generic_cap);

/// A_{n,0..count} only, computed in R0 = Q[a][[1/z]] truncated after 1/z^count.
/// The cap applies to d^n as for the full iterate.
std::vector<MultiPoly> generic_iterate_leading(unsigned d, unsigned n, unsigned count,
                                               std::uint64_t cap = default_generic_cap);

/// A_{n,0..count} with a_j replaced by a_values[j-1] (any common arity);
/// the substitution is a ring map, so this is the image of the generic iterate.
std::vector<MultiPoly> iterate_coefficients(unsigned d, unsigned n, unsigned count,
                                            std::span<const MultiPoly> a_values,
                                            std::uint64_t cap = default_generic_cap);

std::uint64_t checked_power(std::uint64_t base, unsigned exp, std::uint64_t cap);

/// Number of monomials of weight <= d^n in a_1..a_d (a_j of weight j),
/// saturating at UINT64_MAX. Bounds the size of the full generic iterate.
std::uint64_t generic_monomial_count(unsigned d, unsigned n);

struct DegBoundReport {
    unsigned d = 0, n = 0;
    /// i - deg(A_{n,i}); negative means the bound failed. Zero polynomials
    /// report i + 1.
    std::vector<int> margin;
    bool ok = true;
};
DegBoundReport check_deg_bound(const GenericIterate& G);

struct PadicBoundReport {
    unsigned d = 0, n = 0;
    std::uint64_t p = 0;
    std::vector<Valuation> min_valuation;  // index i
    std::vector<std::int64_t> required;    // max(0, (n - i) vp(d)), index i
    /// Indices past this were not expanded; their requirement is 0 and they
    /// lie in Z[a] by construction.
    std::size_t expanded_through = 0;
    bool ok = true;
};
/// Checks |A_{n,i}|_p <= min{1, |d|_p^{n-i}} for i >= 1.
PadicBoundReport check_padic_bound(const GenericIterate& G, std::uint64_t p);

struct ArchBoundReport {
    unsigned d = 0, n = 0;
    std::vector<Rational> l1;     // l1 norm of A_{n,i}
    std::vector<Integer> bound;   // 2^i C(d^n, i)
    std::vector<Integer> tilde;   // A_{n,i} at the coefficients of (z+2)^d - 2
    bool bound_ok = true;
    bool witness_ok = true;
    bool ok() const { return bound_ok && witness_ok; }
};
ArchBoundReport check_arch_bound(const GenericIterate& G);

/// Degree, p-adic and archimedean bounds for A_{n,i}. Small cases expand
/// the generic iterate. Large cases use that every A_{n,i} has nonnegative
/// integer coefficients: the image under a_j -> s then has s-degree equal to
/// the total degree and value at s = 1 equal to the l1 norm. The p-adic
/// requirement is nonzero only for i < n, so those indices are expanded.
struct GenericBoundsReport {
    unsigned d = 0, n = 0;
    bool expanded = false;
    std::vector<int> degree;
    std::vector<Integer> l1;
    std::vector<Integer> bound;
    std::vector<Integer> tilde;
    bool deg_ok = true, l1_ok = true, witness_ok = true, nonnegative = true;
    std::vector<PadicBoundReport> padic;
    bool padic_ok() const;
    bool ok() const { return deg_ok && l1_ok && witness_ok && nonnegative && padic_ok(); }
};

inline constexpr std::uint64_t default_expand_limit = 100'000;

GenericBoundsReport certify_generic_bounds(unsigned d, unsigned n, std::span<const std::uint64_t> primes,
                                           std::uint64_t expand_limit = default_expand_limit,
                                           std::uint64_t cap = default_generic_cap);

enum class FFHeightStatus { exact, preperiodic_zero, undetermined };

struct FFHeight {
    FFHeightStatus status = FFHeightStatus::undetermined;
    Rational value;           // meaningful for exact and preperiodic_zero
    unsigned m0 = 0;          // first n with f^n(a) non-constant in t
    unsigned certified_at = 0;
    std::vector<int> degrees; // deg_t f^n(a) for the computed n
    std::string note;
};

/// Canonical height of a(t) under f over Q(t) (a t-adic / degree height).
/// Iterates until the top z-term of f provably dominates every other term
/// at the current t-degree D (deg c_k + k D < deg c_d + d D for all k < d),
/// after which deg f^{n+1}(a) = d deg f^n(a) + deg c_d forever and the limit
/// is (D + deg c_d / (d-1)) / d^n. Constant orbits that repeat are reported
/// as preperiodic with height zero; anything else within max_iter is
/// undetermined.
FFHeight ff_canonical_height(const Family& f, const UniPoly& a, unsigned max_iter = 64,
                             std::uint64_t degree_cap = default_orbit_degree_cap);

/// Solutions (m, n) in N_0^2 of d1^m h1 = d2^n h2.
struct MSetDescription {
    enum class Kind { empty, finite, arithmetic };
    Kind kind = Kind::empty;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> solutions;  // for finite
    std::pair<std::uint64_t, std::uint64_t> base{0, 0};              // for arithmetic
    std::pair<std::uint64_t, std::uint64_t> step{0, 0};              // for arithmetic

    bool contains(std::uint64_t m, std::uint64_t n) const;
    std::string str() const;
};

MSetDescription mset(std::uint64_t d1, const Rational& h1, std::uint64_t d2, const Rational& h2);

struct CounterexamplePoint {
    unsigned m = 0, n = 0;
    Rational exponent;          // d2^n / (d1^m - d2^n)
    std::optional<Rational> t;  // 2^exponent when integral and small
    HeightValue height;         // |exponent| log 2
};

/// Points t = 2^{d2^n/(d1^m - d2^n)} of the power-map counterexample for
/// 1 <= m <= maxM, 1 <= n <= maxN, skipping d1^m = d2^n; sorted by height,
/// largest first.
std::vector<CounterexamplePoint> counterexample_points(unsigned d1, unsigned d2, unsigned maxM, unsigned maxN,
                                                       mpfr_prec_t prec = bits_for_digits(30));

}  // namespace heightlab
