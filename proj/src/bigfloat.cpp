#include "heightlab/bigfloat.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace heightlab {

mpfr_prec_t bits_for_digits(int digits) {
    if (digits < 1) digits = 1;
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 32;
}

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from(const Integer& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), rnd);
    return r;
}

BigFloat BigFloat::from(const Rational& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, x.get_mpq_t(), rnd);
    return r;
}

BigFloat BigFloat::from(double x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
}

std::string BigFloat::str(int digits) const {
    if (digits < 1) digits = 1;
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    for (;;) {
        int n = mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
        if (n >= 0 && static_cast<std::size_t>(n) < buf.size()) break;
        buf.resize(buf.size() * 2);
    }
    return buf.data();
}

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval::Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.cmp(hi_) > 0) throw std::invalid_argument("interval with lo > hi");
}

Interval Interval::point(const Rational& x, mpfr_prec_t prec) {
    return Interval(BigFloat::from(x, prec, MPFR_RNDD), BigFloat::from(x, prec, MPFR_RNDU));
}

Interval Interval::log_of(const Rational& x, mpfr_prec_t prec) {
    if (x <= 0) throw std::domain_error("log of a non-positive number");
    // log(num) - log(den), each enclosed separately; exact conversion is not
    // needed because mpfr_log on a directed-rounded input stays one-sided.
    return log_of(Integer(x.get_num()), prec) - log_of(Integer(x.get_den()), prec);
}

Interval Interval::log_of(const Integer& x, mpfr_prec_t prec) {
    if (x <= 0) throw std::domain_error("log of a non-positive number");
    BigFloat xl = BigFloat::from(x, prec, MPFR_RNDD);
    BigFloat xh = BigFloat::from(x, prec, MPFR_RNDU);
    BigFloat lo(prec), hi(prec);
    mpfr_log(lo.get(), xl.get(), MPFR_RNDD);
    mpfr_log(hi.get(), xh.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::operator+(const Interval& o) const {
    const mpfr_prec_t p = std::max(prec(), o.prec());
    BigFloat lo(p), hi(p);
    mpfr_add(lo.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::operator-(const Interval& o) const {
    const mpfr_prec_t p = std::max(prec(), o.prec());
    BigFloat lo(p), hi(p);
    mpfr_sub(lo.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::operator*(const Interval& o) const {
    const mpfr_prec_t p = std::max(prec(), o.prec());
    BigFloat lo(p), hi(p), t(p);
    bool first = true;
    for (const BigFloat* a : {&lo_, &hi_}) {
        for (const BigFloat* b : {&o.lo_, &o.hi_}) {
            mpfr_mul(t.get(), a->get(), b->get(), MPFR_RNDD);
            if (first || t.cmp(lo) < 0) lo = t;
            mpfr_mul(t.get(), a->get(), b->get(), MPFR_RNDU);
            if (first || t.cmp(hi) > 0) hi = t;
            first = false;
        }
    }
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::operator*(const Rational& s) const { return *this * point(s, prec()); }

Interval Interval::hull(const Interval& o) const {
    return Interval(lo_.cmp(o.lo_) <= 0 ? lo_ : o.lo_, hi_.cmp(o.hi_) >= 0 ? hi_ : o.hi_);
}

Interval Interval::max(const Interval& o) const {
    return Interval(lo_.cmp(o.lo_) >= 0 ? lo_ : o.lo_, hi_.cmp(o.hi_) >= 0 ? hi_ : o.hi_);
}

Interval Interval::abs() const {
    if (lo_.sign() >= 0) return *this;
    BigFloat nlo(prec()), nhi(prec());
    mpfr_neg(nlo.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(nhi.get(), lo_.get(), MPFR_RNDU);
    if (hi_.sign() <= 0) return Interval(nlo, nhi);
    BigFloat zero(prec());
    return Interval(zero, nhi.cmp(hi_) >= 0 ? nhi : hi_);
}

BigFloat Interval::mid() const {
    BigFloat m(prec());
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
}

BigFloat Interval::radius() const {
    BigFloat r(prec());
    mpfr_sub(r.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDU);
    // the midpoint itself is rounded to nearest; cover that half-ulp too
    BigFloat m = mid();
    if (m.sign() != 0) {
        BigFloat ulp(prec());
        mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(m.get()) - prec(), MPFR_RNDU);
        mpfr_add(r.get(), r.get(), ulp.get(), MPFR_RNDU);
    }
    return r;
}

bool Interval::contains(const Rational& x) const {
    return mpfr_cmp_q(lo_.get(), x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), x.get_mpq_t()) >= 0;
}

std::string Interval::str(int digits) const { return "[" + lo_.str(digits) + ", " + hi_.str(digits) + "]"; }

}  // namespace heightlab
