#pragma once

#include <mpfr.h>

#include <string>

#include "heightlab/exact_arith.hpp"

namespace heightlab {

/// Precision in bits for a requested number of decimal digits, with guard bits.
mpfr_prec_t bits_for_digits(int digits);

/// Owning wrapper around an mpfr_t. All arithmetic is done through the MPFR
/// C API at call sites so rounding modes stay explicit.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 128);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat from(const Integer& x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static BigFloat from(const Rational& x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static BigFloat from(double x, mpfr_prec_t prec);

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
    /// Decimal rendering with `digits` significant digits.
    std::string str(int digits) const;

    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    int sign() const { return mpfr_sgn(v_); }

private:
    mpfr_t v_;
};

/// Closed interval [lo, hi] with outward-rounded endpoints.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128);
    Interval(BigFloat lo, BigFloat hi);

    static Interval point(const Rational& x, mpfr_prec_t prec);
    /// Enclosure of log(x) for a positive rational x.
    static Interval log_of(const Rational& x, mpfr_prec_t prec);
    static Interval log_of(const Integer& x, mpfr_prec_t prec);

    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }
    mpfr_prec_t prec() const { return lo_.prec(); }

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    Interval operator*(const Rational& s) const;
    /// Union hull.
    Interval hull(const Interval& o) const;
    /// max(a, b) taken endpoint-wise.
    Interval max(const Interval& o) const;
    Interval abs() const;

    BigFloat mid() const;
    /// Upper bound on the half width.
    BigFloat radius() const;

    bool certainly_le(const Interval& o) const { return hi_.cmp(o.lo_) <= 0; }
    bool certainly_lt(const Interval& o) const { return hi_.cmp(o.lo_) < 0; }
    bool contains(const Rational& x) const;

    std::string str(int digits) const;

private:
    BigFloat lo_, hi_;
};

}  // namespace heightlab
