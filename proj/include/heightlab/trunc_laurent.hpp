#pragma once

#include <concepts>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heightlab/exact_arith.hpp"
#include "heightlab/multipoly.hpp"
#include "heightlab/unipoly.hpp"

namespace heightlab {

inline bool is_zero(const Rational& x) { return x == 0; }
inline Rational zero_like(const Rational&) { return 0; }
inline Rational one_like(const Rational&) { return 1; }

/// Coefficient ring contract for truncated series: Rational and MultiPoly.
template <class C>
concept CoefficientRing = requires(const C& a, const C& b, const Rational& s) {
    { a + b } -> std::convertible_to<C>;
    { a - b } -> std::convertible_to<C>;
    { a * b } -> std::convertible_to<C>;
    { a * s } -> std::convertible_to<C>;
    { -a } -> std::convertible_to<C>;
    { a == b } -> std::convertible_to<bool>;
    { is_zero(a) } -> std::convertible_to<bool>;
    { zero_like(a) } -> std::convertible_to<C>;
    { one_like(a) } -> std::convertible_to<C>;
};

/// Truncated Laurent series c_{-1} z + c_0 + c_1/z + ... + c_J/z^J.
///
/// Index i in at(i) is the power of 1/z, so i ranges over -1..J. Products
/// are truncated back to order J; a product that would need a z^2 term
/// throws std::domain_error since no series in this library leaves
/// z + O(1).
template <CoefficientRing C>
class TruncLaurent {
public:
    TruncLaurent(unsigned order, const C& proto) : J_(order), c_(order + 2, zero_like(proto)) {}

    static TruncLaurent one(unsigned order, const C& proto) {
        TruncLaurent r(order, proto);
        r.c_[1] = one_like(proto);
        return r;
    }

    /// 1 + sum_{k>=1} tail[k-1] / z^k, truncated at `order`.
    static TruncLaurent one_plus(unsigned order, const C& proto, std::span<const C> tail) {
        TruncLaurent r = one(order, proto);
        for (std::size_t k = 1; k <= tail.size() && k <= order; ++k) r.c_[k + 1] = tail[k - 1];
        return r;
    }

    unsigned order() const { return J_; }
    const C& at(int i) const {
        check_index(i);
        return c_[static_cast<std::size_t>(i + 1)];
    }
    void set(int i, C value) {
        check_index(i);
        c_[static_cast<std::size_t>(i + 1)] = std::move(value);
    }
    const C& proto() const { return c_.front(); }

    /// Lowest power of 1/z with a nonzero coefficient; +infinity for zero.
    Valuation nu() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!is_zero(c_[k])) return Valuation(static_cast<std::int64_t>(k) - 1);
        return Valuation::infinity();
    }
    bool is_zero_series() const { return nu().is_infinite(); }

    TruncLaurent truncated(unsigned order) const {
        if (order > J_) throw std::invalid_argument("cannot extend a truncated series");
        TruncLaurent r(*this);
        r.J_ = order;
        r.c_.resize(order + 2);
        return r;
    }

    /// Multiplies by z. Requires the z coefficient to be zero.
    TruncLaurent times_z() const {
        if (!is_zero(c_[0])) throw std::domain_error("times_z would create a z^2 term");
        TruncLaurent r(J_ > 0 ? J_ - 1 : 0, c_.front());
        for (int i = 0; i <= static_cast<int>(J_); ++i)
            if (i - 1 <= static_cast<int>(r.J_)) r.set(i - 1, at(i));
        return r;
    }

    /// Multiplies by 1/z^k, keeping the order.
    TruncLaurent shifted_down(unsigned k) const {
        TruncLaurent r(J_, c_.front());
        for (int i = -1; i <= static_cast<int>(J_); ++i) {
            int j = i + static_cast<int>(k);
            if (j <= static_cast<int>(J_)) r.set(j, at(i));
        }
        return r;
    }

    TruncLaurent operator+(const TruncLaurent& o) const {
        TruncLaurent r = common(o);
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
        return r;
    }
    TruncLaurent operator-(const TruncLaurent& o) const {
        TruncLaurent r = common(o);
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = c_[k] - o.c_[k];
        return r;
    }
    TruncLaurent operator-() const {
        TruncLaurent r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }
    TruncLaurent operator*(const Rational& s) const {
        TruncLaurent r(*this);
        for (auto& x : r.c_) x = x * s;
        return r;
    }
    /// Multiplies every coefficient by a ring element.
    TruncLaurent scaled(const C& s) const {
        TruncLaurent r(*this);
        for (auto& x : r.c_) x = x * s;
        return r;
    }

    TruncLaurent operator*(const TruncLaurent& o) const {
        const unsigned J = std::min(J_, o.J_);
        TruncLaurent r(J, c_.front());
        if (!is_zero(c_[0]) && !is_zero(o.c_[0])) throw std::domain_error("series product has a z^2 term");
        for (std::size_t a = 0; a < c_.size(); ++a) {
            if (is_zero(c_[a])) continue;
            for (std::size_t b = 0; b < o.c_.size(); ++b) {
                // index (a-1)+(b-1) in powers of 1/z, storage slot +1
                if (a + b == 0) continue;
                const std::size_t slot = a + b - 1;
                if (slot >= r.c_.size()) break;
                if (is_zero(o.c_[b])) continue;
                r.c_[slot] = r.c_[slot] + c_[a] * o.c_[b];
            }
        }
        return r;
    }

    TruncLaurent pow(unsigned e) const {
        TruncLaurent result = one(J_, c_.front());
        TruncLaurent base = *this;
        while (e) {
            if (e & 1U) result = result * base;
            e >>= 1U;
            if (e) base = base * base;
        }
        return result;
    }

    bool operator==(const TruncLaurent& o) const { return J_ == o.J_ && c_ == o.c_; }

private:
    void check_index(int i) const {
        if (i < -1 || i > static_cast<int>(J_)) {
            throw std::out_of_range("series index " + std::to_string(i) + " outside [-1, " + std::to_string(J_) + "]");
        }
    }
    TruncLaurent common(const TruncLaurent& o) const {
        return TruncLaurent(std::min(J_, o.J_), c_.front());
    }

    unsigned J_;
    std::vector<C> c_;
};

/// (1 + u)^alpha for nu(u) >= 1, by the J.C.P. Miller recurrence
/// g_k = (1/k) sum_{j=1}^k ((alpha+1) j - k) u_j g_{k-j}.
template <CoefficientRing C>
TruncLaurent<C> one_plus_pow(const TruncLaurent<C>& u, const Rational& alpha) {
    if (u.nu() < Valuation(1)) throw std::domain_error("one_plus_pow requires nu(u) >= 1");
    const int J = static_cast<int>(u.order());
    TruncLaurent<C> g = TruncLaurent<C>::one(u.order(), u.proto());
    const Rational a1 = alpha + 1;
    for (int k = 1; k <= J; ++k) {
        C acc = zero_like(u.proto());
        for (int j = 1; j <= k; ++j) {
            if (is_zero(u.at(j)) || is_zero(g.at(k - j))) continue;
            const Rational w = a1 * j - k;
            if (w == 0) continue;
            acc = acc + (u.at(j) * g.at(k - j)) * w;
        }
        g.set(k, acc * Rational(1, k));
    }
    return g;
}

/// The m-th root (1 + u)^{1/m} of 1 + u in R0, for nu(u) >= 1.
template <CoefficientRing C>
TruncLaurent<C> trunc_root(const TruncLaurent<C>& u, unsigned m) {
    if (m == 0) throw std::invalid_argument("trunc_root requires m >= 1");
    if (u.nu() < Valuation(1)) throw std::domain_error("trunc_root requires nu(u) >= 1");
    return one_plus_pow(u, Rational(1, m));
}

/// F(Q(z)) for monic Q of degree e >= 1 given by ascending coefficients,
/// expanding 1/Q^i = z^{-e i} (1 + q~)^{-i} with q~ = sum_k q_{e-k} / z^k.
/// A nonzero z-coefficient in F is only representable when e == 1;
/// otherwise std::domain_error.
template <CoefficientRing C>
TruncLaurent<C> compose_poly(const TruncLaurent<C>& F, std::span<const C> q) {
    if (q.size() < 2) throw std::invalid_argument("compose_poly requires deg Q >= 1");
    const C one = one_like(F.proto());
    if (!(q.back() == one)) throw std::invalid_argument("compose_poly requires monic Q");
    const unsigned e = static_cast<unsigned>(q.size() - 1);
    const unsigned J = F.order();

    TruncLaurent<C> result(J, F.proto());
    if (!is_zero(F.at(-1))) {
        if (e != 1) throw std::domain_error("F(Q) has terms above z^1: not representable");
        result.set(-1, F.at(-1));
        result.set(0, F.at(-1) * q[0]);
    }
    result.set(0, result.at(0) + F.at(0));

    std::vector<C> tail;
    for (unsigned k = 1; k <= e; ++k) tail.push_back(q[e - k]);
    TruncLaurent<C> qt = TruncLaurent<C>::one_plus(J, F.proto(), tail) - TruncLaurent<C>::one(J, F.proto());
    // 1/Q = z^{-e} (1+qt)^{-1}
    const TruncLaurent<C> inv_q = one_plus_pow(qt, Rational(-1)).shifted_down(e);
    TruncLaurent<C> power = TruncLaurent<C>::one(J, F.proto());
    for (unsigned i = 1; i <= J && static_cast<unsigned long>(e) * i <= J; ++i) {
        power = power * inv_q;
        if (is_zero(F.at(static_cast<int>(i)))) continue;
        result = result + power.scaled(F.at(static_cast<int>(i)));
    }
    return result;
}

inline TruncLaurent<Rational> compose_poly(const TruncLaurent<Rational>& F, const UniPoly& Q) {
    return compose_poly<Rational>(F, std::span<const Rational>(Q.coeffs()));
}

}  // namespace heightlab
