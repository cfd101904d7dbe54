#include "heightlab/height_value.hpp"

#include <stdexcept>

namespace heightlab {

HeightValue HeightValue::zero(mpfr_prec_t prec) { return exact_log(0, 1, prec); }

HeightValue HeightValue::exact_log(const Rational& coeff, const Rational& arg, mpfr_prec_t prec) {
    if (coeff < 0 || arg < 1) throw std::domain_error("exact height needs coeff >= 0 and arg >= 1");
    ExactLog e{coeff, arg};
    if (coeff == 0 || arg == 1) e = ExactLog{0, 1};
    Interval enc = Interval::log_of(e.arg, prec) * e.coeff;
    return HeightValue(e, std::move(enc));
}

HeightValue HeightValue::approximate(Interval enclosure) { return HeightValue(std::nullopt, std::move(enclosure)); }

double HeightValue::error_bound() const {
    BigFloat r = enclosure_.radius();
    return r.to_double(MPFR_RNDU);
}

std::string HeightValue::str(int digits) const {
    if (!exact_) return decimal(digits);
    if (exact_->coeff == 0) return "0";
    std::string s = exact_->coeff == 1 ? std::string() : "(" + exact_->coeff.get_str() + ")*";
    return s + "log(" + exact_->arg.get_str() + ")";
}

std::optional<int> compare_exact(const ExactLog& x, const ExactLog& y) {
    // x.coeff log x.arg  vs  y.coeff log y.arg  <=>  x.arg^{p1 q2} vs y.arg^{p2 q1}
    const Integer e1 = x.coeff.get_num() * y.coeff.get_den();
    const Integer e2 = y.coeff.get_num() * x.coeff.get_den();
    constexpr unsigned long limit = 1UL << 16;
    if (e1 > limit || e2 > limit) return std::nullopt;
    Rational a, b;
    mpz_pow_ui(a.get_num_mpz_t(), x.arg.get_num_mpz_t(), e1.get_ui());
    mpz_pow_ui(a.get_den_mpz_t(), x.arg.get_den_mpz_t(), e1.get_ui());
    mpz_pow_ui(b.get_num_mpz_t(), y.arg.get_num_mpz_t(), e2.get_ui());
    mpz_pow_ui(b.get_den_mpz_t(), y.arg.get_den_mpz_t(), e2.get_ui());
    return a < b ? -1 : (a > b ? 1 : 0);
}

}  // namespace heightlab
