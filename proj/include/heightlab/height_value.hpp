#pragma once

#include <optional>
#include <string>

#include "heightlab/bigfloat.hpp"
#include "heightlab/exact_arith.hpp"

namespace heightlab {

/// coeff * log(arg) with coeff >= 0 and arg >= 1 rational.
struct ExactLog {
    Rational coeff;
    Rational arg;

    bool operator==(const ExactLog&) const = default;
};

/// A logarithmic height: an exact form when one is known, always a
/// certified enclosure.
class HeightValue {
public:
    static constexpr int default_digits = 30;

    static HeightValue zero(mpfr_prec_t prec = bits_for_digits(default_digits));
    static HeightValue exact_log(const Rational& coeff, const Rational& arg,
                                 mpfr_prec_t prec = bits_for_digits(default_digits));
    static HeightValue approximate(Interval enclosure);

    const std::optional<ExactLog>& exact() const { return exact_; }
    const Interval& enclosure() const { return enclosure_; }

    double approx() const { return enclosure_.mid().to_double(); }
    /// Upper bound on |true value - approx()|, as a double rounded up.
    double error_bound() const;
    std::string decimal(int digits = default_digits) const { return enclosure_.mid().str(digits); }
    /// "coeff*log(arg)" for exact values, the decimal otherwise.
    std::string str(int digits = default_digits) const;

private:
    HeightValue(std::optional<ExactLog> exact, Interval enclosure)
        : exact_(std::move(exact)), enclosure_(std::move(enclosure)) {}

    std::optional<ExactLog> exact_;
    Interval enclosure_;
};

/// Exact three-way comparison of a log A vs b log B when the powers involved
/// stay small; nullopt when that would be too large to decide by powering.
std::optional<int> compare_exact(const ExactLog& x, const ExactLog& y);

}  // namespace heightlab
