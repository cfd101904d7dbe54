#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heightlab/exact_arith.hpp"

namespace heightlab {

enum class Var { t, z };

char var_name(Var v);

/// Dense univariate polynomial over Q; coeffs()[k] is the coefficient of
/// x^k. No trailing zeros are stored, so the zero polynomial is empty and
/// has degree -1.
class UniPoly {
public:
    explicit UniPoly(Var v = Var::t) : var_(v) {}
    UniPoly(Var v, std::vector<Rational> coeffs);

    static UniPoly constant(const Rational& c, Var v = Var::t);
    static UniPoly monomial(const Rational& c, unsigned k, Var v = Var::t);
    static UniPoly x(Var v = Var::t) { return monomial(1, 1, v); }
    static UniPoly from_integers(Var v, const std::vector<Integer>& coeffs);

    Var var() const { return var_; }
    /// Retags the variable; the coefficients are unchanged.
    UniPoly with_var(Var v) const;

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    /// Coefficient of x^k (zero beyond the degree).
    Rational coeff(std::size_t k) const;
    /// Leading coefficient. Throws std::domain_error for the zero polynomial.
    const Rational& lead() const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator-() const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const Rational& s) const;
    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
    bool operator==(const UniPoly& o) const { return c_ == o.c_ && (c_.size() <= 1 || var_ == o.var_); }

    UniPoly pow(unsigned e) const;

    /// Euclidean division over Q. Throws std::domain_error on division by zero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;
    /// Quotient of an exact division; throws PropertyViolation if the
    /// remainder is nonzero.
    UniPoly exact_div(const UniPoly& divisor) const;
    bool divides(const UniPoly& dividend) const;

    Rational eval(const Rational& x) const;
    /// this(inner(x)) by Horner's rule; the result carries inner's variable.
    UniPoly compose(const UniPoly& inner) const;
    UniPoly derivative() const;
    UniPoly monic() const;

    /// Writes this = scale * prim with prim a primitive integer polynomial
    /// of positive leading coefficient. Precondition: nonzero.
    std::pair<Rational, std::vector<Integer>> primitive_integer() const;
    /// True if every coefficient is an integer.
    bool has_integer_coeffs() const;
    std::vector<Integer> integer_coeffs() const;

    std::string str() const;

private:
    void normalize();
    Var common_var(const UniPoly& o) const;

    Var var_;
    std::vector<Rational> c_;
};

/// Monic gcd over Q (zero if both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

}  // namespace heightlab
