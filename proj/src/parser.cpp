#include "heightlab/parser.hpp"

#include <cctype>

#include "heightlab/errors.hpp"

namespace heightlab {

namespace {

// Polynomial in z with coefficients in Q[t]; c[k] multiplies z^k.
struct Biv {
    std::vector<UniPoly> c;

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    static Biv constant(const Rational& r) {
        Biv b;
        if (r != 0) b.c.push_back(UniPoly::constant(r, Var::t));
        return b;
    }
    Biv operator+(const Biv& o) const {
        Biv r;
        r.c.assign(std::max(c.size(), o.c.size()), UniPoly(Var::t));
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
        for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        r.trim();
        return r;
    }
    Biv operator-() const {
        Biv r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    Biv operator*(const Biv& o) const {
        Biv r;
        if (c.empty() || o.c.empty()) return r;
        r.c.assign(c.size() + o.c.size() - 1, UniPoly(Var::t));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        r.trim();
        return r;
    }
};

struct BivOps {
    using Value = Biv;
    Value constant(const Rational& r) const { return Biv::constant(r); }
    Value variable(std::string_view name, std::size_t pos) const {
        Biv b;
        if (name == "t") {
            b.c.push_back(UniPoly::x(Var::t));
        } else if (name == "z") {
            b.c = {UniPoly(Var::t), UniPoly::constant(1, Var::t)};
        } else {
            throw ParseError("unknown variable '" + std::string(name) + "' (expected t or z)", pos);
        }
        return b;
    }
};

struct MultiOps {
    using Value = MultiPoly;
    unsigned arity;
    Value constant(const Rational& r) const { return MultiPoly::constant(arity, r); }
    Value variable(std::string_view name, std::size_t pos) const {
        if (name.size() == 2 && name[0] == 'a' && name[1] >= '1' && name[1] <= '9') {
            const unsigned i = static_cast<unsigned>(name[1] - '0');
            if (i <= arity) return MultiPoly::variable(arity, i);
        }
        throw ParseError("unknown variable '" + std::string(name) + "' (expected a1..a" + std::to_string(arity) + ")",
                         pos);
    }
};

template <typename Ops>
class Parser {
public:
    using Value = typename Ops::Value;

    Parser(std::string_view text, Ops ops) : s_(text), ops_(std::move(ops)) {}

    Value parse() {
        skip();
        if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
        Value v = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return v;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Value expr() {
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        Value v = term();
        if (negate) v = -v;
        for (;;) {
            if (accept('+'))
                v = v + term();
            else if (accept('-'))
                v = v + (-term());
            else
                return v;
        }
    }

    Value term() {
        Value v = factor();
        while (accept('*')) v = v * factor();
        return v;
    }

    Value factor() {
        Value b = base();
        if (!accept('^')) return b;
        skip();
        const std::size_t at = pos_;
        const std::string digits = read_digits();
        if (digits.empty()) throw ParseError("expected an unsigned integer exponent", at);
        if (digits.size() > 9 || std::stoul(digits) > max_parse_exponent)
            throw ResourceCapError("exponent " + digits + " exceeds " + std::to_string(max_parse_exponent));
        unsigned e = static_cast<unsigned>(std::stoul(digits));
        Value r = ops_.constant(1);
        Value p = b;
        while (e) {
            if (e & 1U) r = r * p;
            e >>= 1U;
            if (e) p = p * p;
        }
        return r;
    }

    Value base() {
        skip();
        if (pos_ == s_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::string num = read_digits();
            skip();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip();
                const std::size_t at = pos_;
                const std::string den = read_digits();
                if (den.empty()) throw ParseError("expected a denominator", at);
                const Integer d(den);
                if (d == 0) throw ParseError("zero denominator", at);
                return ops_.constant(make_rational(Integer(num), d));
            }
            return ops_.constant(Rational(Integer(num)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t at = pos_;
            std::size_t end = pos_ + 1;
            // a1..a9 are the only multi-character names
            if (c == 'a' && end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
            pos_ = end;
            return ops_.variable(s_.substr(at, end - at), at);
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    std::string read_digits() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string_view s_;
    Ops ops_;
    std::size_t pos_ = 0;
};

}  // namespace

ParsedPoly parse_poly(std::string_view text) {
    Biv b = Parser<BivOps>(text, BivOps{}).parse();
    if (b.c.size() >= 3) return Family(b.c);
    if (b.c.size() == 2) {
        std::vector<Rational> zc;
        for (const auto& x : b.c) {
            if (!x.is_constant())
                throw ParseError("expression mixes t with z but has degree < 2 in z; not a map", 0);
            zc.push_back(x.coeff(0));
        }
        return UniPoly(Var::z, std::move(zc));
    }
    if (b.c.empty()) return UniPoly(Var::t);
    return b.c[0];
}

UniPoly parse_t_poly(std::string_view text) {
    ParsedPoly p = parse_poly(text);
    if (const auto* u = std::get_if<UniPoly>(&p)) {
        if (u->var() == Var::t || u->is_constant()) return u->with_var(Var::t);
    }
    throw ParseError("expected a polynomial in t", 0);
}

Family parse_map(std::string_view text) {
    ParsedPoly p = parse_poly(text);
    if (auto* f = std::get_if<Family>(&p)) return *f;
    throw ParseError("expected a map of degree >= 2 in z", 0);
}

MultiPoly parse_multipoly(std::string_view text, unsigned arity) {
    return Parser<MultiOps>(text, MultiOps{arity}).parse();
}

}  // namespace heightlab
