#include "heightlab/unipoly.hpp"

#include <sstream>
#include <stdexcept>

#include "heightlab/errors.hpp"

namespace heightlab {

char var_name(Var v) { return v == Var::t ? 't' : 'z'; }

UniPoly::UniPoly(Var v, std::vector<Rational> coeffs) : var_(v), c_(std::move(coeffs)) { normalize(); }

UniPoly UniPoly::constant(const Rational& c, Var v) { return UniPoly(v, {c}); }

UniPoly UniPoly::monomial(const Rational& c, unsigned k, Var v) {
    std::vector<Rational> cs(k + 1, Rational(0));
    cs[k] = c;
    return UniPoly(v, std::move(cs));
}

UniPoly UniPoly::from_integers(Var v, const std::vector<Integer>& coeffs) {
    std::vector<Rational> cs(coeffs.begin(), coeffs.end());
    return UniPoly(v, std::move(cs));
}

UniPoly UniPoly::with_var(Var v) const {
    UniPoly r(*this);
    r.var_ = v;
    return r;
}

void UniPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Var UniPoly::common_var(const UniPoly& o) const {
    if (is_constant()) return o.var_;
    if (o.is_constant() || o.var_ == var_) return var_;
    throw std::invalid_argument("polynomials in different variables");
}

Rational UniPoly::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

const Rational& UniPoly::lead() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    UniPoly r(common_var(o));
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
    r.normalize();
    return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator-() const {
    UniPoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    UniPoly r(common_var(o));
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    Rational tmp;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            mpq_mul(tmp.get_mpq_t(), c_[i].get_mpq_t(), o.c_[j].get_mpq_t());
            r.c_[i + j] += tmp;
        }
    }
    r.normalize();
    return r;
}

UniPoly UniPoly::operator*(const Rational& s) const {
    if (s == 0) return UniPoly(var_);
    UniPoly r(*this);
    for (auto& x : r.c_) x *= s;
    return r;
}

UniPoly UniPoly::pow(unsigned e) const {
    UniPoly result = constant(1, var_);
    UniPoly base = *this;
    while (e) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e) base *= base;
    }
    return result;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    Var v = common_var(divisor);
    UniPoly rem(*this);
    rem.var_ = v;
    UniPoly quot(v);
    if (degree() < divisor.degree()) return {quot, rem};
    const int dd = divisor.degree();
    quot.c_.assign(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
    const Rational inv_lead = 1 / divisor.lead();
    Rational tmp;
    for (int k = rem.degree(); k >= dd; --k) {
        const Rational q = rem.c_[static_cast<std::size_t>(k)] * inv_lead;
        if (q == 0) continue;
        quot.c_[static_cast<std::size_t>(k - dd)] = q;
        for (int j = 0; j <= dd; ++j) {
            mpq_mul(tmp.get_mpq_t(), q.get_mpq_t(), divisor.c_[static_cast<std::size_t>(j)].get_mpq_t());
            rem.c_[static_cast<std::size_t>(k - dd + j)] -= tmp;
        }
    }
    rem.normalize();
    quot.normalize();
    return {quot, rem};
}

UniPoly UniPoly::exact_div(const UniPoly& divisor) const {
    auto [q, r] = divmod(divisor);
    if (!r.is_zero()) {
        throw PropertyViolation("exact division failed: (" + str() + ") / (" + divisor.str() + ") leaves remainder " +
                                r.str());
    }
    return q;
}

bool UniPoly::divides(const UniPoly& dividend) const { return dividend.divmod(*this).second.is_zero(); }

Rational UniPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::compose(const UniPoly& inner) const {
    UniPoly acc(inner.var_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it, inner.var_);
    acc.var_ = inner.var_;
    return acc;
}

UniPoly UniPoly::derivative() const {
    UniPoly r(var_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = c_[k] * static_cast<unsigned long>(k);
    r.normalize();
    return r;
}

UniPoly UniPoly::monic() const { return is_zero() ? *this : *this * (1 / lead()); }

std::pair<Rational, std::vector<Integer>> UniPoly::primitive_integer() const {
    if (is_zero()) throw std::domain_error("primitive part of the zero polynomial");
    Integer den_lcm = 1;
    for (const auto& c : c_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> ints(c_.size());
    Integer g = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        ints[i] = c_[i].get_num() * (den_lcm / c_[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (ints.back() < 0) g = -g;
    for (auto& x : ints) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return {make_rational(g, den_lcm), std::move(ints)};
}

bool UniPoly::has_integer_coeffs() const {
    for (const auto& c : c_)
        if (c.get_den() != 1) return false;
    return true;
}

std::vector<Integer> UniPoly::integer_coeffs() const {
    if (!has_integer_coeffs()) throw std::invalid_argument("polynomial has non-integer coefficients: " + str());
    std::vector<Integer> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c.get_num());
    return out;
}

std::string UniPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    const char x = var_name(var_);
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Rational& c = c_[k];
        if (c == 0) continue;
        Rational a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << a;
            continue;
        }
        if (a != 1) os << a << "*";
        os << x;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    // Primitive remainder sequence keeps coefficient growth in check.
    if (!x.is_zero()) x = UniPoly::from_integers(x.var(), x.primitive_integer().second);
    if (!y.is_zero()) y = UniPoly::from_integers(y.var(), y.primitive_integer().second);
    while (!y.is_zero()) {
        UniPoly r = x.divmod(y).second;
        if (!r.is_zero()) r = UniPoly::from_integers(r.var(), r.primitive_integer().second);
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

}  // namespace heightlab
