#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heightlab/exact_arith.hpp"
#include "heightlab/unipoly.hpp"

namespace heightlab {

/// Sparse polynomial over Q in the variables a1..a_arity.
///
/// Monomials are packed into a 64-bit key with 64/arity bits per exponent,
/// a1 in the most significant field, so integer order on keys is
/// lexicographic order on exponent vectors and key addition is monomial
/// multiplication. Terms are kept sorted by key with no zero coefficients.
/// Products whose total degree would not fit the field width raise
/// ResourceCapError.
class MultiPoly {
public:
    using Key = std::uint64_t;
    struct Term {
        Key key;
        Rational coeff;
        bool operator==(const Term&) const = default;
    };

    static constexpr unsigned max_arity = 9;

    explicit MultiPoly(unsigned arity = 1);
    static MultiPoly constant(unsigned arity, const Rational& c);
    /// The variable a_index, 1-based.
    static MultiPoly variable(unsigned arity, unsigned index);
    static MultiPoly monomial(unsigned arity, std::span<const unsigned> exponents, const Rational& c);

    unsigned arity() const { return arity_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    /// -1 for the zero polynomial.
    int total_degree() const;
    Rational constant_term() const;
    /// Largest exponent representable in one field.
    unsigned max_exponent() const { return static_cast<unsigned>((Key{1} << width_) - 1); }

    std::vector<unsigned> exponents(Key key) const;
    unsigned degree_of(Key key) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Rational& s) const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    bool operator==(const MultiPoly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }

    MultiPoly pow(unsigned e) const;

    Rational eval(std::span<const Rational> point) const;
    Integer eval(std::span<const Integer> point) const;
    /// Substitutes a_i := values[i-1], returning a univariate polynomial.
    UniPoly substitute(std::span<const UniPoly> values) const;

    /// Minimum p-adic valuation over the coefficients: the exponent of the
    /// p-adic Gauss norm. +infinity for zero.
    Valuation min_valuation(std::uint64_t p) const;
    /// Sum of absolute values of the coefficients.
    Rational l1_norm() const;

    /// Graded-lexicographic order, highest degree first.
    std::string str() const;

private:
    Key pack(std::span<const unsigned> exps) const;

    unsigned arity_;
    unsigned width_;
    std::vector<Term> terms_;
};

// Ring-interface hooks shared with Rational (see trunc_laurent.hpp).
inline bool is_zero(const MultiPoly& x) { return x.is_zero(); }
inline MultiPoly zero_like(const MultiPoly& x) { return MultiPoly(x.arity()); }
inline MultiPoly one_like(const MultiPoly& x) { return MultiPoly::constant(x.arity(), 1); }

}  // namespace heightlab
