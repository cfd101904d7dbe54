#include "heightlab/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "heightlab/errors.hpp"

namespace heightlab {

MultiPoly::MultiPoly(unsigned arity) : arity_(arity), width_(arity > 1 ? 64 / arity : 63) {
    if (arity == 0 || arity > max_arity) {
        throw std::invalid_argument("MultiPoly arity must be in 1..9, got " + std::to_string(arity));
    }
}

MultiPoly MultiPoly::constant(unsigned arity, const Rational& c) {
    MultiPoly r(arity);
    if (c != 0) r.terms_.push_back({0, c});
    return r;
}

MultiPoly MultiPoly::variable(unsigned arity, unsigned index) {
    if (index == 0 || index > arity) throw std::invalid_argument("variable index out of range");
    std::vector<unsigned> e(arity, 0);
    e[index - 1] = 1;
    return monomial(arity, e, 1);
}

MultiPoly MultiPoly::monomial(unsigned arity, std::span<const unsigned> exponents, const Rational& c) {
    MultiPoly r(arity);
    if (exponents.size() != arity) throw std::invalid_argument("exponent vector length != arity");
    if (c != 0) r.terms_.push_back({r.pack(exponents), c});
    return r;
}

MultiPoly::Key MultiPoly::pack(std::span<const unsigned> exps) const {
    Key k = 0;
    unsigned total = 0;
    for (unsigned i = 0; i < arity_; ++i) {
        total += exps[i];
        k = (k << width_) | exps[i];
    }
    if (total > max_exponent()) throw ResourceCapError("monomial degree exceeds packed exponent width");
    return k;
}

std::vector<unsigned> MultiPoly::exponents(Key key) const {
    std::vector<unsigned> e(arity_);
    const Key mask = (Key{1} << width_) - 1;
    for (unsigned i = arity_; i-- > 0;) {
        e[i] = static_cast<unsigned>(key & mask);
        key >>= width_;
    }
    return e;
}

unsigned MultiPoly::degree_of(Key key) const {
    unsigned total = 0;
    for (unsigned e : exponents(key)) total += e;
    return total;
}

int MultiPoly::total_degree() const {
    int best = -1;
    for (const auto& t : terms_) best = std::max(best, static_cast<int>(degree_of(t.key)));
    return best;
}

Rational MultiPoly::constant_term() const {
    if (!terms_.empty() && terms_.front().key == 0) return terms_.front().coeff;
    return 0;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (o.arity_ != arity_) throw std::invalid_argument("MultiPoly arity mismatch");
    MultiPoly r(arity_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->key < b->key)) {
            r.terms_.push_back(*a++);
        } else if (a == terms_.end() || b->key < a->key) {
            r.terms_.push_back(*b++);
        } else {
            Rational s = a->coeff + b->coeff;
            if (s != 0) r.terms_.push_back({a->key, std::move(s)});
            ++a;
            ++b;
        }
    }
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (o.is_zero()) return *this;
    return *this = *this + o;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const Rational& s) const {
    if (s == 0) return MultiPoly(arity_);
    MultiPoly r(*this);
    for (auto& t : r.terms_) t.coeff *= s;
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (o.arity_ != arity_) throw std::invalid_argument("MultiPoly arity mismatch");
    MultiPoly r(arity_);
    if (is_zero() || o.is_zero()) return r;
    if (static_cast<unsigned>(total_degree() + o.total_degree()) > max_exponent()) {
        throw ResourceCapError("MultiPoly product degree exceeds packed exponent width");
    }
    const MultiPoly& small = size() <= o.size() ? *this : o;
    const MultiPoly& large = size() <= o.size() ? o : *this;
    if (small.size() == 1) {
        const Term& s = small.terms_.front();
        r.terms_.reserve(large.size());
        for (const auto& t : large.terms_) r.terms_.push_back({t.key + s.key, t.coeff * s.coeff});
        return r;
    }
    // Every row (one term of `small` times `large`) is already sorted, so
    // collect, sort by key and fold equal keys.
    std::vector<std::pair<Key, Rational>> raw;
    raw.reserve(small.size() * large.size());
    for (const auto& s : small.terms_)
        for (const auto& t : large.terms_) raw.emplace_back(s.key + t.key, 0);
    {
        std::size_t idx = 0;
        for (const auto& s : small.terms_)
            for (const auto& t : large.terms_)
                mpq_mul(raw[idx++].second.get_mpq_t(), s.coeff.get_mpq_t(), t.coeff.get_mpq_t());
    }
    std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i + 1;
        Rational acc = std::move(raw[i].second);
        while (j < raw.size() && raw[j].first == raw[i].first) acc += raw[j++].second;
        if (acc != 0) r.terms_.push_back({raw[i].first, std::move(acc)});
        i = j;
    }
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result = constant(arity_, 1);
    MultiPoly base = *this;
    while (e) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e) base *= base;
    }
    return result;
}

Rational MultiPoly::eval(std::span<const Rational> point) const {
    if (point.size() != arity_) throw std::invalid_argument("evaluation point has wrong arity");
    std::vector<unsigned> top(arity_, 0);
    for (const auto& t : terms_) {
        auto e = exponents(t.key);
        for (unsigned i = 0; i < arity_; ++i) top[i] = std::max(top[i], e[i]);
    }
    std::vector<std::vector<Rational>> powers(arity_);
    for (unsigned i = 0; i < arity_; ++i) {
        powers[i].resize(top[i] + 1);
        powers[i][0] = 1;
        for (unsigned k = 1; k <= top[i]; ++k) powers[i][k] = powers[i][k - 1] * point[i];
    }
    Rational acc = 0;
    for (const auto& t : terms_) {
        Rational m = t.coeff;
        auto e = exponents(t.key);
        for (unsigned i = 0; i < arity_; ++i)
            if (e[i]) m *= powers[i][e[i]];
        acc += m;
    }
    return acc;
}

Integer MultiPoly::eval(std::span<const Integer> point) const {
    std::vector<Rational> q(point.begin(), point.end());
    Rational r = eval(std::span<const Rational>(q));
    if (r.get_den() != 1) throw std::domain_error("integer evaluation produced a non-integer");
    return r.get_num();
}

UniPoly MultiPoly::substitute(std::span<const UniPoly> values) const {
    if (values.size() != arity_) throw std::invalid_argument("substitution has wrong arity");
    Var v = Var::t;
    for (const auto& u : values)
        if (!u.is_constant()) v = u.var();
    UniPoly acc(v);
    for (const auto& t : terms_) {
        UniPoly m = UniPoly::constant(t.coeff, v);
        auto e = exponents(t.key);
        for (unsigned i = 0; i < arity_; ++i)
            if (e[i]) m *= values[i].pow(e[i]);
        acc += m;
    }
    return acc;
}

Valuation MultiPoly::min_valuation(std::uint64_t p) const {
    Valuation best = Valuation::infinity();
    for (const auto& t : terms_) best = std::min(best, vp(t.coeff, p));
    return best;
}

Rational MultiPoly::l1_norm() const {
    Rational s = 0;
    for (const auto& t : terms_) s += abs(t.coeff);
    return s;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::vector<const Term*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [&](const Term* x, const Term* y) {
        unsigned dx = degree_of(x->key), dy = degree_of(y->key);
        if (dx != dy) return dx > dy;
        return x->key > y->key;
    });
    std::ostringstream os;
    bool first = true;
    for (const Term* t : order) {
        const Rational a = abs(t->coeff);
        if (first) {
            if (t->coeff < 0) os << "-";
        } else {
            os << (t->coeff < 0 ? " - " : " + ");
        }
        first = false;
        auto e = exponents(t->key);
        bool any = false;
        std::ostringstream mono;
        for (unsigned i = 0; i < arity_; ++i) {
            if (!e[i]) continue;
            if (any) mono << "*";
            mono << "a" << (i + 1);
            if (e[i] > 1) mono << "^" << e[i];
            any = true;
        }
        if (!any) os << a;
        else if (a == 1) os << mono.str();
        else os << a << "*" << mono.str();
    }
    return os.str();
}

}  // namespace heightlab
