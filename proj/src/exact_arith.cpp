#include "heightlab/exact_arith.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace heightlab {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::int64_t Valuation::value() const {
    if (!finite_) throw std::logic_error("value() of infinite valuation");
    return value_;
}

std::string Valuation::str() const { return finite_ ? std::to_string(value_) : std::string("+inf"); }

std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof n, 0, 0, &n);
    return is_prime(z);
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor_small(0)");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        unsigned e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e) out.emplace_back(q, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t n) {
    if (n < 2) return {0, 0};
    auto f = factor_small(n);
    if (f.size() != 1) return {0, 0};
    return f.front();
}

namespace {

void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("valuation requires a prime, got " + std::to_string(p));
}

std::int64_t strip(Integer& x, std::uint64_t p) {
    Integer pp(static_cast<unsigned long>(p));
    return static_cast<std::int64_t>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

}  // namespace

Valuation vp(const Integer& x, std::uint64_t p) {
    require_prime(p);
    if (x == 0) return Valuation::infinity();
    Integer y = x;
    return Valuation(strip(y, p));
}

Valuation vp(const Rational& x, std::uint64_t p) {
    require_prime(p);
    if (x == 0) return Valuation::infinity();
    Integer n = x.get_num();
    Integer d = x.get_den();
    return Valuation(strip(n, p) - strip(d, p));
}

Rational lemma61_value(unsigned k, unsigned m) {
    if (k == 0 || m == 0) throw std::invalid_argument("lemma61_value requires k >= 1 and m >= 1");
    Integer num = 1;
    for (unsigned i = 0; i < k; ++i) num *= Integer(1) - Integer(i) * m;
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), k);
    return make_rational(num, fact);
}

// --- Z[zeta_p] ---------------------------------------------------------------

CyclotomicInt::CyclotomicInt(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("Z[zeta_p] requires p prime, got " + std::to_string(p));
    c_.assign(p - 1, Integer(0));
}

CyclotomicInt::CyclotomicInt(std::uint64_t p, const Integer& constant) : CyclotomicInt(p) {
    c_[0] = constant;
}

CyclotomicInt::CyclotomicInt(std::uint64_t p, std::span<const Integer> powers) : CyclotomicInt(p) {
    // Fold into zeta^0..zeta^{p-1}, then eliminate zeta^{p-1} = -(1 + ... + zeta^{p-2}).
    std::vector<Integer> full(p, Integer(0));
    for (std::size_t i = 0; i < powers.size(); ++i) full[i % p] += powers[i];
    for (std::size_t i = 0; i + 1 < p; ++i) c_[i] = full[i] - full[p - 1];
}

CyclotomicInt CyclotomicInt::zeta(std::uint64_t p) {
    std::vector<Integer> v{0, 1};
    return CyclotomicInt(p, v);
}

bool CyclotomicInt::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Integer& x) { return x == 0; });
}

void CyclotomicInt::check_same_ring(const CyclotomicInt& o) const {
    if (o.p_ != p_) throw std::invalid_argument("mixing Z[zeta_p] for different primes");
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
    check_same_ring(o);
    CyclotomicInt r(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const {
    check_same_ring(o);
    CyclotomicInt r(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

CyclotomicInt CyclotomicInt::operator-() const {
    CyclotomicInt r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
    check_same_ring(o);
    std::vector<Integer> prod(2 * c_.size(), Integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    return CyclotomicInt(p_, prod);
}

Integer CyclotomicInt::norm() const {
    if (is_zero()) return 0;
    std::size_t deg = c_.size() - 1;
    while (c_[deg] == 0) --deg;
    std::vector<Integer> x(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(deg) + 1);
    std::vector<Integer> phi(p_, Integer(1));
    if (deg == 0) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), x[0].get_mpz_t(), p_ - 1);
        return r;
    }
    return integer_resultant(phi, x);
}

std::string CyclotomicInt::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << (c_[i] < 0 ? " - " : " + ");
        else if (c_[i] < 0) os << "-";
        Integer a = abs(c_[i]);
        if (i == 0) os << a;
        else {
            if (a != 1) os << a << "*";
            os << "zeta";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Valuation cyclo_lambda_valuation(const CyclotomicInt& x) {
    if (x.is_zero()) return Valuation::infinity();
    return vp(x.norm(), x.prime());
}

Integer bareiss_determinant(std::vector<Integer> m, std::size_t n) {
    if (m.size() != n * n) throw std::invalid_argument("bareiss_determinant: size mismatch");
    if (n == 0) return 1;
    auto at = [&](std::size_t r, std::size_t c) -> Integer& { return m[r * n + c]; };
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && at(r, k) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(r, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

Integer integer_resultant(std::span<const Integer> a, std::span<const Integer> b) {
    if (a.empty() || b.empty() || a.back() == 0 || b.back() == 0) {
        throw std::invalid_argument("integer_resultant: leading coefficients must be nonzero");
    }
    const std::size_t m = a.size() - 1;
    const std::size_t n = b.size() - 1;
    const std::size_t size = m + n;
    if (size == 0) return 1;
    std::vector<Integer> s(size * size, Integer(0));
    // Rows 0..n-1: shifted copies of a (descending powers); rows n..n+m-1: of b.
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) s[r * size + r + i] = a[m - i];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) s[(n + r) * size + r + i] = b[n - i];
    return bareiss_determinant(std::move(s), size);
}

}  // namespace heightlab
