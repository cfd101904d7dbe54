#include "heightlab/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "heightlab/errors.hpp"
#include "heightlab/trunc_laurent.hpp"

namespace heightlab {

// --- Family ----------------------------------------------------------------------

Family::Family(std::vector<UniPoly> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.size() < 3) throw std::invalid_argument("family must have degree >= 2 in z");
    for (auto& c : c_) c = c.with_var(Var::t);
}

Family Family::constant_map(const UniPoly& f_of_z) {
    std::vector<UniPoly> cs;
    for (const auto& c : f_of_z.coeffs()) cs.push_back(UniPoly::constant(c, Var::t));
    return Family(std::move(cs));
}

Family Family::power_plus_t(unsigned d) {
    std::vector<UniPoly> cs(d + 1, UniPoly(Var::t));
    cs[0] = UniPoly::x(Var::t);
    cs[d] = UniPoly::constant(1, Var::t);
    return Family(std::move(cs));
}

bool Family::is_monic() const { return lead().is_constant() && lead().coeff(0) == 1; }

bool Family::is_constant_in_t() const {
    return std::all_of(c_.begin(), c_.end(), [](const UniPoly& c) { return c.is_constant(); });
}

UniPoly Family::apply(const UniPoly& x) const {
    UniPoly xt = x.with_var(Var::t);
    UniPoly acc(Var::t);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * xt + *it;
    return acc;
}

Rational Family::apply(const Rational& t0, const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->eval(t0);
    return acc;
}

UniPoly Family::specialize(const Rational& t0) const {
    std::vector<Rational> cs;
    for (const auto& c : c_) cs.push_back(c.eval(t0));
    return UniPoly(Var::z, std::move(cs));
}

std::string Family::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        const bool simple = c_[k].coeffs().size() == 1 || (c_[k].coeffs().size() == 2 && c_[k].coeff(0) == 0);
        const bool unit = c_[k].is_constant() && c_[k].coeff(0) == 1;
        if (k == 0) {
            os << (simple ? c_[k].str() : "(" + c_[k].str() + ")");
            continue;
        }
        if (!unit) os << (simple ? c_[k].str() : "(" + c_[k].str() + ")") << "*";
        os << "z";
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

// --- orbits --------------------------------------------------------------------------

UniPoly iterate_orbit(const Family& f, const UniPoly& a, unsigned n, std::uint64_t degree_cap) {
    UniPoly x = a.with_var(Var::t);
    for (unsigned step = 0; step < n; ++step) {
        std::uint64_t predicted = 0;
        const std::uint64_t dx = x.is_zero() ? 0 : static_cast<std::uint64_t>(x.degree());
        for (unsigned k = 0; k <= f.degree(); ++k) {
            if (f.coeff(k).is_zero()) continue;
            predicted = std::max<std::uint64_t>(predicted, static_cast<std::uint64_t>(f.coeff(k).degree()) + k * dx);
        }
        if (predicted > degree_cap) {
            throw ResourceCapError("iterate_orbit: t-degree " + std::to_string(predicted) + " exceeds cap " +
                                   std::to_string(degree_cap));
        }
        x = f.apply(x);
    }
    return x;
}

// --- generic iterates --------------------------------------------------------------

std::uint64_t checked_power(std::uint64_t base, unsigned exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > cap / base) {
            throw ResourceCapError(std::to_string(base) + "^" + std::to_string(exp) + " exceeds cap " +
                                   std::to_string(cap));
        }
        r *= base;
    }
    return r;
}

std::vector<MultiPoly> iterate_coefficients(unsigned d, unsigned n, unsigned count,
                                            std::span<const MultiPoly> a_values, std::uint64_t cap) {
    if (d < 2) throw std::invalid_argument("generic iterate needs d >= 2");
    if (n < 1) throw std::invalid_argument("generic iterate needs n >= 1");
    if (a_values.size() != d) throw std::invalid_argument("need one value per coefficient a_1..a_d");
    const std::uint64_t dn = checked_power(d, n, cap);
    const unsigned K = static_cast<unsigned>(std::min<std::uint64_t>(count, dn));
    const MultiPoly zero = zero_like(a_values[0]);

    // s_k = P^k(z) / z^{d^k} as a series in x = 1/z; a polynomial of degree d^k in x.
    std::uint64_t D = d;
    TruncLaurent<MultiPoly> s =
        TruncLaurent<MultiPoly>::one_plus(static_cast<unsigned>(std::min<std::uint64_t>(K, D)), zero, a_values);

    for (unsigned level = 1; level < n; ++level) {
        const unsigned order = static_cast<unsigned>(std::min<std::uint64_t>(K, D * d));
        TruncLaurent<MultiPoly> base(order, zero);
        for (int i = 0; i <= static_cast<int>(s.order()); ++i) base.set(i, s.at(i));
        // Horner: s_{k+1} = (((s + a1 x^D) s + a2 x^{2D}) s + ...) s + a_d x^{dD}
        TruncLaurent<MultiPoly> acc = base;
        for (unsigned j = 1; j <= d; ++j) {
            const std::uint64_t shift = j * D;
            if (shift <= order) acc.set(static_cast<int>(shift), acc.at(static_cast<int>(shift)) + a_values[j - 1]);
            if (j < d) acc = acc * base;
        }
        s = acc;
        D *= d;
    }
    std::vector<MultiPoly> out;
    out.reserve(K + 1);
    for (unsigned i = 0; i <= K; ++i) out.push_back(i <= s.order() ? s.at(static_cast<int>(i)) : zero);
    return out;
}

std::vector<MultiPoly> generic_iterate_leading(unsigned d, unsigned n, unsigned count, std::uint64_t cap) {
    if (d > MultiPoly::max_arity) throw std::invalid_argument("generic iterate supports d <= 9");
    std::vector<MultiPoly> vars;
    for (unsigned j = 1; j <= d; ++j) vars.push_back(MultiPoly::variable(d, j));
    return iterate_coefficients(d, n, count, vars, cap);
}

GenericIterate generic_iterate(unsigned d, unsigned n, std::uint64_t cap) {
    const std::uint64_t dn = checked_power(d, n, cap);
    GenericIterate G;
    G.d = d;
    G.n = n;
    G.A = generic_iterate_leading(d, n, static_cast<unsigned>(dn), cap);
    return G;
}

DegBoundReport check_deg_bound(const GenericIterate& G) {
    DegBoundReport r;
    r.d = G.d;
    r.n = G.n;
    for (std::size_t i = 0; i < G.A.size(); ++i) {
        const int deg = G.A[i].total_degree();
        const int margin = deg < 0 ? static_cast<int>(i) + 1 : static_cast<int>(i) - deg;
        r.margin.push_back(margin);
        if (margin < 0) r.ok = false;
    }
    return r;
}

namespace {

std::vector<Integer> tilde_values(unsigned d) {
    std::vector<Integer> a(d);
    for (unsigned j = 1; j <= d; ++j) {
        Integer c;
        mpz_bin_uiui(c.get_mpz_t(), d, j);
        a[j - 1] = c << j;
    }
    a[d - 1] -= 2;  // constant term of (z+2)^d - 2
    return a;
}

Integer arch_bound(unsigned long dn, unsigned long i) {
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), dn, i);
    return binom << static_cast<mp_bitcnt_t>(i);
}

Integer tilde_expected(unsigned long dn, unsigned long i) {
    if (i == 0) return 1;
    if (i == dn) return (Integer(1) << static_cast<mp_bitcnt_t>(dn)) - 2;
    return arch_bound(dn, i);
}

PadicBoundReport padic_report(unsigned d, unsigned n, std::uint64_t p, const std::vector<MultiPoly>& A) {
    PadicBoundReport r;
    r.d = d;
    r.n = n;
    r.p = p;
    r.expanded_through = A.size() - 1;
    const std::int64_t vd = vp(Integer(d), p).value();
    for (std::size_t i = 0; i < A.size(); ++i) {
        const Valuation v = A[i].min_valuation(p);
        const std::int64_t req =
            std::max<std::int64_t>(0, (static_cast<std::int64_t>(n) - static_cast<std::int64_t>(i)) * vd);
        r.min_valuation.push_back(v);
        r.required.push_back(req);
        if (i >= 1 && v < Valuation(req)) r.ok = false;
    }
    return r;
}

}  // namespace

PadicBoundReport check_padic_bound(const GenericIterate& G, std::uint64_t p) {
    return padic_report(G.d, G.n, p, G.A);
}

ArchBoundReport check_arch_bound(const GenericIterate& G) {
    ArchBoundReport r;
    r.d = G.d;
    r.n = G.n;
    const unsigned long dn = static_cast<unsigned long>(G.A.size() - 1);
    const auto tilde_a = tilde_values(G.d);
    for (std::size_t i = 0; i < G.A.size(); ++i) {
        Rational l1 = G.A[i].l1_norm();
        Integer bound = arch_bound(dn, i);
        Integer tilde = G.A[i].eval(std::span<const Integer>(tilde_a));
        if (l1 > bound) r.bound_ok = false;
        if (tilde != tilde_expected(dn, i)) r.witness_ok = false;
        r.l1.push_back(l1);
        r.bound.push_back(bound);
        r.tilde.push_back(tilde);
    }
    return r;
}

std::uint64_t generic_monomial_count(unsigned d, unsigned n) {
    constexpr std::uint64_t sat = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t N = checked_power(d, n, 1u << 20);
    std::vector<std::uint64_t> p(N + 1, 0);
    p[0] = 1;
    for (unsigned j = 1; j <= d; ++j)
        for (std::uint64_t i = j; i <= N; ++i) p[i] = p[i] > sat - p[i - j] ? sat : p[i] + p[i - j];
    std::uint64_t total = 0;
    for (auto x : p) total = total > sat - x ? sat : total + x;
    return total;
}

bool GenericBoundsReport::padic_ok() const {
    return std::all_of(padic.begin(), padic.end(), [](const PadicBoundReport& r) { return r.ok; });
}

GenericBoundsReport certify_generic_bounds(unsigned d, unsigned n, std::span<const std::uint64_t> primes,
                                           std::uint64_t expand_limit, std::uint64_t cap) {
    const std::uint64_t dn = checked_power(d, n, cap);
    GenericBoundsReport r;
    r.d = d;
    r.n = n;
    r.expanded = generic_monomial_count(d, n) <= expand_limit;

    std::vector<MultiPoly> tilde_a;
    for (const auto& c : tilde_values(d)) tilde_a.push_back(MultiPoly::constant(1, c));
    const auto tilde = iterate_coefficients(d, n, static_cast<unsigned>(dn), tilde_a, cap);

    std::vector<MultiPoly> A;
    if (r.expanded) {
        A = generic_iterate(d, n, cap).A;
    } else {
        std::vector<MultiPoly> s(d, MultiPoly::variable(1, 1));
        A = iterate_coefficients(d, n, static_cast<unsigned>(dn), s, cap);
    }
    for (std::size_t i = 0; i <= dn; ++i) {
        for (const auto& t : A[i].terms())
            if (t.coeff < 0 || t.coeff.get_den() != 1) r.nonnegative = false;
        const int deg = A[i].total_degree();
        r.degree.push_back(deg);
        if (deg > static_cast<int>(i)) r.deg_ok = false;
        r.l1.push_back(A[i].l1_norm().get_num());
        r.bound.push_back(arch_bound(dn, i));
        if (r.l1.back() > r.bound.back()) r.l1_ok = false;
        r.tilde.push_back(tilde[i].constant_term().get_num());
        if (r.tilde.back() != tilde_expected(dn, i)) r.witness_ok = false;
    }
    for (std::uint64_t p : primes) {
        if (r.expanded)
            r.padic.push_back(padic_report(d, n, p, A));
        else
            r.padic.push_back(padic_report(d, n, p, generic_iterate_leading(d, n, n, cap)));
    }
    return r;
}

// --- function-field canonical height ---------------------------------------------------

FFHeight ff_canonical_height(const Family& f, const UniPoly& a, unsigned max_iter, std::uint64_t degree_cap) {
    FFHeight out;
    const unsigned d = f.degree();
    const int e = f.lead().degree();
    bool seen_nonconstant = false;
    std::set<std::string> constants_seen;
    UniPoly x = a.with_var(Var::t);
    for (unsigned n = 0; n <= max_iter; ++n) {
        const int D = x.degree();
        out.degrees.push_back(D);
        if (D <= 0) {
            const std::string key = x.is_zero() ? "0" : x.coeff(0).get_str();
            if (!constants_seen.insert(key).second) {
                out.status = FFHeightStatus::preperiodic_zero;
                out.value = 0;
                out.certified_at = n;
                out.note = "orbit constant in t and repeats";
                return out;
            }
        } else {
            if (!seen_nonconstant) {
                seen_nonconstant = true;
                out.m0 = n;
            }
            bool dominant = true;
            for (unsigned k = 0; k < d; ++k) {
                if (f.coeff(k).is_zero()) continue;
                const long lhs = f.coeff(k).degree() + static_cast<long>(k) * D;
                const long rhs = e + static_cast<long>(d) * D;
                if (lhs >= rhs) {
                    dominant = false;
                    break;
                }
            }
            if (dominant) {
                Integer dn;
                mpz_ui_pow_ui(dn.get_mpz_t(), d, n);
                out.status = FFHeightStatus::exact;
                out.value = (Rational(D) + make_rational(Integer(e), Integer(d - 1))) / Rational(dn);
                out.certified_at = n;
                out.note = "leading term dominates from n = " + std::to_string(n);
                return out;
            }
        }
        if (n == max_iter) break;
        try {
            x = iterate_orbit(f, x, 1, degree_cap);
        } catch (const ResourceCapError&) {
            out.note = "degree cap reached before certification";
            return out;
        }
    }
    out.status = FFHeightStatus::undetermined;
    if (out.note.empty()) out.note = "no certificate within " + std::to_string(max_iter) + " iterations";
    return out;
}

// --- M-set -----------------------------------------------------------------------------------

bool MSetDescription::contains(std::uint64_t m, std::uint64_t n) const {
    switch (kind) {
        case Kind::empty:
            return false;
        case Kind::finite:
            return std::find(solutions.begin(), solutions.end(), std::make_pair(m, n)) != solutions.end();
        case Kind::arithmetic: {
            if (m < base.first || n < base.second) return false;
            if ((m - base.first) % step.first != 0) return false;
            const std::uint64_t k = (m - base.first) / step.first;
            return n == base.second + k * step.second;
        }
    }
    return false;
}

std::string MSetDescription::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::empty:
            os << "empty";
            break;
        case Kind::finite:
            os << "{";
            for (std::size_t i = 0; i < solutions.size(); ++i)
                os << (i ? ", " : "") << "(" << solutions[i].first << ", " << solutions[i].second << ")";
            os << "}";
            break;
        case Kind::arithmetic:
            os << "{(" << base.first << " + " << step.first << "k, " << base.second << " + " << step.second
               << "k) : k >= 0}";
            break;
    }
    return os.str();
}

namespace {

using i64 = std::int64_t;

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

// returns g = gcd(a, b) and x, y with a x + b y = g
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace

MSetDescription mset(std::uint64_t d1, const Rational& h1, std::uint64_t d2, const Rational& h2) {
    if (d1 < 2 || d2 < 2) throw std::invalid_argument("mset requires d1, d2 >= 2");
    if (h1 <= 0 || h2 <= 0) throw std::invalid_argument("mset requires positive heights");
    MSetDescription out;
    const Rational r = h2 / h1;  // need d1^m / d2^n = r

    std::vector<std::uint64_t> primes;
    for (auto [q, e] : factor_small(d1)) primes.push_back(q);
    for (auto [q, e] : factor_small(d2)) primes.push_back(q);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    Integer num = r.get_num(), den = r.get_den();
    std::vector<i64> u, w, t;
    for (std::uint64_t q : primes) {
        u.push_back(vp(Integer(static_cast<unsigned long>(d1)), q).value());
        w.push_back(vp(Integer(static_cast<unsigned long>(d2)), q).value());
        t.push_back(vp(Integer(num), q).value() - vp(Integer(den), q).value());
        Integer qq(static_cast<unsigned long>(q));
        mpz_remove(num.get_mpz_t(), num.get_mpz_t(), qq.get_mpz_t());
        mpz_remove(den.get_mpz_t(), den.get_mpz_t(), qq.get_mpz_t());
    }
    if (num != 1 || den != 1) return out;  // a prime of r divides neither degree

    const std::size_t P = primes.size();
    // m u - n w = t. Look for two coordinates with a nonzero determinant.
    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t j = i + 1; j < P; ++j) {
            const i64 det = -u[i] * w[j] + u[j] * w[i];
            if (det == 0) continue;
            const i64 mn = -t[i] * w[j] + t[j] * w[i];
            const i64 nn = u[i] * t[j] - u[j] * t[i];
            if (mn % det != 0 || nn % det != 0) return out;
            const i64 m = mn / det, n = nn / det;
            if (m < 0 || n < 0) return out;
            for (std::size_t k = 0; k < P; ++k)
                if (m * u[k] - n * w[k] != t[k]) return out;
            out.kind = MSetDescription::Kind::finite;
            out.solutions.emplace_back(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n));
            return out;
        }
    }

    // u and w are proportional: u = alpha g, w = beta g with g primitive.
    i64 alpha = 0;
    for (i64 x : u) alpha = std::gcd(alpha, x);
    std::vector<i64> g(P);
    for (std::size_t k = 0; k < P; ++k) g[k] = u[k] / alpha;
    std::size_t k0 = 0;
    while (g[k0] == 0) ++k0;
    const i64 beta = w[k0] / g[k0];
    if (t[k0] % g[k0] != 0) return out;
    const i64 s = t[k0] / g[k0];
    for (std::size_t k = 0; k < P; ++k)
        if (t[k] != s * g[k]) return out;
    // alpha m - beta n = s
    i64 x, y;
    const i64 G = ext_gcd(alpha, beta, x, y);  // alpha x + beta y = G
    if (s % G != 0) return out;
    i64 m0 = x * (s / G), n0 = -y * (s / G);
    const i64 sm = beta / G, sn = alpha / G;
    const i64 k = std::max(ceil_div(-m0, sm), ceil_div(-n0, sn));
    m0 += k * sm;
    n0 += k * sn;
    // shift down to the smallest nonnegative representative
    const i64 back = std::min(floor_div(m0, sm), floor_div(n0, sn));
    m0 -= back * sm;
    n0 -= back * sn;
    out.kind = MSetDescription::Kind::arithmetic;
    out.base = {static_cast<std::uint64_t>(m0), static_cast<std::uint64_t>(n0)};
    out.step = {static_cast<std::uint64_t>(sm), static_cast<std::uint64_t>(sn)};
    return out;
}

// --- power-map counterexample ------------------------------------------------------------

std::vector<CounterexamplePoint> counterexample_points(unsigned d1, unsigned d2, unsigned maxM, unsigned maxN,
                                                       mpfr_prec_t prec) {
    if (d1 < 2 || d2 < 2) throw std::invalid_argument("counterexample_points requires degrees >= 2");
    std::vector<CounterexamplePoint> out;
    for (unsigned m = 1; m <= maxM; ++m) {
        Integer a;
        mpz_ui_pow_ui(a.get_mpz_t(), d1, m);
        for (unsigned n = 1; n <= maxN; ++n) {
            Integer b;
            mpz_ui_pow_ui(b.get_mpz_t(), d2, n);
            if (a == b) continue;
            Rational e = make_rational(b, a - b);
            std::optional<Rational> t;
            if (e.get_den() == 1 && abs(e) <= 4096) {
                const long ei = e.get_num().get_si();
                Integer p2 = Integer(1) << static_cast<mp_bitcnt_t>(ei < 0 ? -ei : ei);
                t = ei >= 0 ? Rational(p2) : make_rational(1, p2);
            }
            HeightValue h = HeightValue::exact_log(abs(e), 2, prec);
            out.push_back({m, n, e, t, std::move(h)});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const CounterexamplePoint& x, const CounterexamplePoint& y) {
        return abs(x.exponent) > abs(y.exponent);
    });
    return out;
}

}  // namespace heightlab
