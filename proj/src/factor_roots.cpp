#include "heightlab/factor_roots.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "heightlab/errors.hpp"

namespace heightlab {

UniPoly FactorList::product(Var v) const {
    UniPoly r = UniPoly::constant(unit, v);
    for (const auto& e : factors) r *= e.factor.with_var(v).pow(e.multiplicity);
    return r;
}

namespace {

UniPoly primitive_positive(const UniPoly& p) {
    return UniPoly::from_integers(p.var(), p.primitive_integer().second);
}

}  // namespace

SquarefreeDecomposition squarefree_decompose(const UniPoly& P) {
    if (P.is_zero()) throw std::invalid_argument("squarefree decomposition of the zero polynomial");
    SquarefreeDecomposition out;
    if (P.degree() == 0) {
        out.unit = P.coeff(0);
        return out;
    }
    // Yun over Q with monic gcds.
    const UniPoly dP = P.derivative();
    const UniPoly b = gcd(P, dP);
    UniPoly c = P.exact_div(b);
    UniPoly d = dP.exact_div(b) - c.derivative();
    for (unsigned i = 1; c.degree() > 0; ++i) {
        const UniPoly a = gcd(c, d);
        c = c.exact_div(a);
        d = d.exact_div(a) - c.derivative();
        if (a.degree() > 0) out.parts.emplace_back(primitive_positive(a), i);
    }
    Rational lead_product = 1;
    for (const auto& [part, m] : out.parts) {
        Rational l = part.lead();
        for (unsigned k = 0; k < m; ++k) lead_product *= l;
    }
    out.unit = P.lead() / lead_product;
    return out;
}

// --- arithmetic modulo a small prime --------------------------------------------------------

namespace modp {

using Poly = std::vector<std::uint64_t>;

struct Field {
    std::uint64_t p;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        for (; e; e >>= 1, a = mul(a, a))
            if (e & 1) r = mul(r, a);
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }

    static void trim(Poly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    static int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

    Poly reduce(std::span<const Integer> c) const {
        Poly r(c.size());
        Integer P(static_cast<unsigned long>(p));
        for (std::size_t i = 0; i < c.size(); ++i) {
            Integer m;
            mpz_fdiv_r(m.get_mpz_t(), c[i].get_mpz_t(), P.get_mpz_t());
            r[i] = m.get_ui();
        }
        trim(r);
        return r;
    }

    Poly sub(const Poly& a, const Poly& b) const {
        Poly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
        trim(r);
        return r;
    }

    Poly mul(const Poly& a, const Poly& b) const {
        if (a.empty() || b.empty()) return {};
        Poly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
        }
        trim(r);
        return r;
    }

    std::pair<Poly, Poly> divmod(Poly a, const Poly& b) const {
        if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
        const std::uint64_t il = inv(b.back());
        Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
        for (int i = deg(a); i >= deg(b); --i) {
            const std::uint64_t c = mul(a[i], il);
            q[i - deg(b)] = c;
            if (!c) continue;
            for (int j = 0; j <= deg(b); ++j) a[i - deg(b) + j] = sub(a[i - deg(b) + j], mul(c, b[j]));
        }
        trim(a);
        trim(q);
        return {q, a};
    }

    Poly rem(const Poly& a, const Poly& b) const { return divmod(a, b).second; }

    Poly monic(Poly a) const {
        if (a.empty()) return a;
        const std::uint64_t il = inv(a.back());
        for (auto& x : a) x = mul(x, il);
        return a;
    }

    Poly gcd(Poly a, Poly b) const {
        while (!b.empty()) {
            Poly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    // s a + t b = gcd(a, b) (monic)
    Poly ext_gcd(Poly a, Poly b, Poly& s, Poly& t) const {
        Poly s0{1}, s1{}, t0{}, t1{1};
        while (!b.empty()) {
            auto [q, r] = divmod(a, b);
            a = std::move(b);
            b = std::move(r);
            Poly s2 = sub(s0, mul(q, s1));
            Poly t2 = sub(t0, mul(q, t1));
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        const std::uint64_t il = inv(a.back());
        for (auto& x : s0) x = mul(x, il);
        for (auto& x : t0) x = mul(x, il);
        s = s0;
        t = t0;
        return monic(a);
    }

    Poly derivative(const Poly& a) const {
        Poly r;
        for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mul(a[i], i % p));
        trim(r);
        return r;
    }

    Poly powmod(Poly base, const Integer& e, const Poly& m) const {
        Poly r{1};
        base = rem(base, m);
        const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = rem(mul(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base), m);
        }
        return r;
    }
};

std::vector<std::pair<Poly, int>> distinct_degree(const Field& F, Poly f) {
    std::vector<std::pair<Poly, int>> out;
    const Poly x{0, 1};
    Poly h = F.rem(x, f);
    const Integer p(static_cast<unsigned long>(F.p));
    for (int i = 1; Field::deg(f) >= 2 * i; ++i) {
        h = F.powmod(h, p, f);
        Poly g = F.gcd(F.sub(h, x), f);
        if (Field::deg(g) > 0) {
            out.emplace_back(g, i);
            f = F.divmod(f, g).first;
            h = F.rem(h, f);
        }
    }
    if (Field::deg(f) > 0) out.emplace_back(f, Field::deg(f));
    return out;
}

void equal_degree(const Field& F, const Poly& g, int i, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (Field::deg(g) == i) {
        out.push_back(F.monic(g));
        return;
    }
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(i));
    e = (e - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> coef(0, F.p - 1);
    for (;;) {
        Poly a(static_cast<std::size_t>(Field::deg(g)));
        for (auto& c : a) c = coef(rng);
        Field::trim(a);
        if (Field::deg(a) < 1) continue;
        Poly b = F.powmod(a, e, g);
        b = F.sub(b, Poly{1});
        Poly u = F.gcd(b, g);
        if (Field::deg(u) > 0 && Field::deg(u) < Field::deg(g)) {
            equal_degree(F, u, i, rng, out);
            equal_degree(F, F.divmod(g, u).first, i, rng, out);
            return;
        }
    }
}

// monic squarefree f mod p
std::vector<Poly> factor_squarefree(const Field& F, const Poly& f) {
    std::mt19937_64 rng(0x5eed0000 + F.p);
    std::vector<Poly> out;
    for (auto& [g, i] : distinct_degree(F, f)) equal_degree(F, g, i, rng, out);
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

}  // namespace modp

std::vector<std::vector<std::uint64_t>> factor_mod_p(std::span<const Integer> coeffs, std::uint64_t p) {
    if (!is_prime(p) || p < 3 || p > (1ull << 31)) throw std::invalid_argument("factor_mod_p needs an odd prime < 2^31");
    modp::Field F{p};
    modp::Poly f = F.reduce(coeffs);
    if (modp::Field::deg(f) < 1) throw std::domain_error("polynomial is constant mod p");
    if (modp::Field::deg(F.gcd(f, F.derivative(f))) > 0) throw std::domain_error("polynomial is not squarefree mod p");
    return modp::factor_squarefree(F, F.monic(f));
}

// --- Hensel lifting over Z / m ---------------------------------------------------------------

namespace {

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmod(ZPoly a, const Integer& m) {
    for (auto& x : a) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    ztrim(a);
    return a;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    ztrim(r);
    return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return zmod(std::move(r), m);
}

// division by a monic polynomial modulo m
std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& b, const Integer& m) {
    a = zmod(std::move(a), m);
    const int db = static_cast<int>(b.size()) - 1;
    ZPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Integer(0));
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        Integer c = a[i];
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        q[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) mpz_submul(a[i - db + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
    }
    return {zmod(std::move(q), m), zmod(std::move(a), m)};
}

ZPoly from_modp(const modp::Poly& a) {
    ZPoly r;
    for (auto x : a) r.emplace_back(static_cast<unsigned long>(x));
    ztrim(r);
    return r;
}

struct HenselPair {
    ZPoly g, h, s, t;
};

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic -> same mod m^2.
void hensel_step(const ZPoly& f, HenselPair& x, const Integer& m) {
    const Integer M = m * m;
    const ZPoly e = zmod(zsub(f, zmul(x.g, x.h, M)), M);
    auto [q, r] = zdivmod_monic(zmul(x.s, e, M), x.h, M);
    ZPoly g2 = zmod(zadd(zadd(x.g, zmul(x.t, e, M)), zmul(q, x.g, M)), M);
    ZPoly h2 = zmod(zadd(x.h, r), M);
    ZPoly b = zmod(zsub(zadd(zmul(x.s, g2, M), zmul(x.t, h2, M)), ZPoly{Integer(1)}), M);
    auto [c, d] = zdivmod_monic(zmul(x.s, b, M), h2, M);
    ZPoly s2 = zmod(zsub(x.s, d), M);
    ZPoly t2 = zmod(zsub(zsub(x.t, zmul(x.t, b, M)), zmul(c, g2, M)), M);
    x = {std::move(g2), std::move(h2), std::move(s2), std::move(t2)};
}

// Lift monic factors u_1..u_r of f mod p (lc(f) prime to p) to monic factors mod P = p^(2^k).
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<modp::Poly>& u, std::uint64_t p, const Integer& P) {
    const modp::Field F{p};
    std::vector<ZPoly> out;
    ZPoly cur = f;
    const Integer lc = f.back();
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        // split cur = g * u_i with g carrying the leading coefficient
        modp::Poly rest = F.reduce(std::span<const Integer>(&lc, 1));
        for (std::size_t j = i + 1; j < u.size(); ++j) rest = F.mul(rest, u[j]);
        modp::Poly s, t;
        F.ext_gcd(rest, u[i], s, t);
        // s = q h + s_red, so s_red g + (t + q g) h = 1 with deg s_red < deg h
        auto [q, s_red] = F.divmod(s, u[i]);
        modp::Poly t_red = F.sub(t, F.sub(modp::Poly{}, F.mul(q, rest)));
        HenselPair x{from_modp(rest), from_modp(u[i]), from_modp(s_red), from_modp(t_red)};
        Integer m(static_cast<unsigned long>(p));
        while (m < P) {
            hensel_step(cur, x, m);
            m *= m;
        }
        out.push_back(x.h);
        cur = zmod(x.g, P);
    }
    // remaining factor: make cur monic mod P
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), P.get_mpz_t()) == 0)
        throw std::logic_error("leading coefficient not invertible in Hensel lifting");
    for (auto& c : cur) c *= inv;
    out.push_back(zmod(cur, P));
    return out;
}

ZPoly symmetric(ZPoly a, const Integer& m) {
    const Integer half = m / 2;
    for (auto& x : a) {
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        if (x > half) x -= m;
    }
    ztrim(a);
    return a;
}

Integer l2_norm_ceiling(const std::vector<Integer>& f) {
    Integer s = 0;
    for (const auto& c : f) s += c * c;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    return r + 1;
}

// Factors a squarefree primitive integer polynomial with positive leading coefficient.
std::vector<UniPoly> zassenhaus(const UniPoly& f_in) {
    const Var v = f_in.var();
    if (f_in.degree() <= 1) return {f_in};
    const std::vector<Integer> f = f_in.integer_coeffs();
    const Integer lc = f.back();

    // try several good primes and keep the one with the fewest modular factors
    std::uint64_t best_p = 0;
    std::vector<modp::Poly> best;
    int good = 0;
    for (std::uint64_t p = 3; good < 5 && p < (1u << 20); p += 2) {
        if (!is_prime(p)) continue;
        if (mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
        modp::Field F{p};
        modp::Poly fp = F.reduce(f);
        if (modp::Field::deg(F.gcd(fp, F.derivative(fp))) > 0) continue;
        auto u = modp::factor_squarefree(F, F.monic(fp));
        ++good;
        if (best_p == 0 || u.size() < best.size()) {
            best_p = p;
            best = std::move(u);
        }
        if (best.size() == 1) return {f_in};
    }
    if (best_p == 0) throw std::logic_error("no good prime found for a squarefree polynomial");

    const int n = f_in.degree();
    const Integer bound = 2 * abs(lc) * (Integer(1) << n) * l2_norm_ceiling(f);
    Integer P(static_cast<unsigned long>(best_p));
    while (P <= bound) P *= P;
    std::vector<ZPoly> lifted = hensel_lift(f, best, best_p, P);

    std::vector<UniPoly> found;
    UniPoly rem = f_in;
    std::vector<std::size_t> alive(lifted.size());
    std::iota(alive.begin(), alive.end(), 0);
    std::size_t s = 1;
    while (2 * s <= alive.size()) {
        bool hit = false;
        std::vector<std::size_t> idx(s);
        std::iota(idx.begin(), idx.end(), 0);
        const Integer lr = rem.lead().get_num();
        const Integer c0 = rem.coeff(0).get_num();
        for (;;) {
            // candidate lr * prod_{S} u mod P
            Integer ct = lr;
            for (auto k : idx) {
                const auto& u = lifted[alive[k]];
                ct *= u.empty() ? Integer(0) : u[0];
                mpz_fdiv_r(ct.get_mpz_t(), ct.get_mpz_t(), P.get_mpz_t());
            }
            if (ct > P / 2) ct -= P;
            bool plausible = true;
            if (c0 != 0 && (ct == 0 || !mpz_divisible_p(Integer(lr * c0).get_mpz_t(), ct.get_mpz_t()))) plausible = false;
            if (plausible) {
                ZPoly g{lr};
                for (auto k : idx) g = zmul(g, lifted[alive[k]], P);
                g = symmetric(g, P);
                UniPoly cand = primitive_positive(UniPoly::from_integers(v, g));
                auto [q, r] = rem.divmod(cand);
                if (r.is_zero()) {
                    found.push_back(cand);
                    rem = q;
                    std::vector<std::size_t> next;
                    for (std::size_t k = 0; k < alive.size(); ++k)
                        if (std::find(idx.begin(), idx.end(), k) == idx.end()) next.push_back(alive[k]);
                    alive = std::move(next);
                    hit = true;
                    break;
                }
            }
            // next combination
            std::size_t k = s;
            while (k > 0 && idx[k - 1] == alive.size() - s + (k - 1)) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!hit) ++s;
    }
    if (rem.degree() > 0) found.push_back(primitive_positive(rem));
    return found;
}

}  // namespace

FactorList factor_over_Q(const UniPoly& P, int degree_cap) {
    if (P.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
    if (P.degree() > degree_cap)
        throw ResourceCapError("factor_over_Q: degree " + std::to_string(P.degree()) + " exceeds cap " +
                               std::to_string(degree_cap));
    FactorList out;
    const SquarefreeDecomposition sq = squarefree_decompose(P);
    for (const auto& [part, m] : sq.parts) {
        UniPoly rest = part;
        // peel off t first; the modular machinery prefers a nonzero constant term
        if (rest.coeff(0) == 0) {
            out.factors.push_back({UniPoly::x(P.var()), m});
            rest = rest.exact_div(UniPoly::x(P.var()));
        }
        if (rest.degree() <= 0) continue;
        for (auto& g : zassenhaus(rest)) out.factors.push_back({std::move(g), m});
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const FactorList::Entry& a, const FactorList::Entry& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        return a.factor.str() < b.factor.str();
    });
    Rational lead = 1;
    for (const auto& e : out.factors)
        for (unsigned k = 0; k < e.multiplicity; ++k) lead *= e.factor.lead();
    out.unit = P.lead() / lead;
    return out;
}

bool eisenstein(const UniPoly& P, const Integer& p) {
    const std::vector<Integer> c = P.integer_coeffs();
    if (c.size() < 2) return false;
    if (!is_prime(p)) throw std::invalid_argument("eisenstein needs a prime");
    if (mpz_divisible_p(c.back().get_mpz_t(), p.get_mpz_t())) return false;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (!mpz_divisible_p(c[i].get_mpz_t(), p.get_mpz_t())) return false;
    const Integer p2 = p * p;
    return !mpz_divisible_p(c[0].get_mpz_t(), p2.get_mpz_t());
}

bool cyclo_eisenstein_reversed(std::span<const CyclotomicInt> coeffs, std::uint64_t d) {
    const auto [q, k] = prime_power(d);
    if (q == 0) throw std::invalid_argument("d = " + std::to_string(d) + " is not a prime power");
    if (k >= 2) throw std::domain_error("d = p^k with k >= 2 is not supported (Z[zeta_p] only)");
    if (coeffs.size() < 2) throw std::invalid_argument("need a polynomial of degree >= 1");
    for (const auto& c : coeffs)
        if (c.prime() != d) throw std::invalid_argument("coefficients must lie in Z[zeta_d]");
    const std::size_t n = coeffs.size() - 1;
    // reversed polynomial: leading coefficient coeffs[0], constant coeffs[n]
    if (cyclo_lambda_valuation(coeffs[0]) != Valuation(0)) return false;
    for (std::size_t i = 1; i < n; ++i)
        if (cyclo_lambda_valuation(coeffs[i]) < Valuation(1)) return false;
    return cyclo_lambda_valuation(coeffs[n]) == Valuation(1);
}

// --- complex roots -----------------------------------------------------------------------------

namespace {

struct Cx {
    BigFloat re, im;
    explicit Cx(mpfr_prec_t prec) : re(prec), im(prec) {}
};

void cx_set_prec(Cx& z, mpfr_prec_t prec) {
    mpfr_prec_round(z.re.get(), prec, MPFR_RNDN);
    mpfr_prec_round(z.im.get(), prec, MPFR_RNDN);
}

// r = a * b
void cx_mul(Cx& r, const Cx& a, const Cx& b, mpfr_prec_t prec) {
    BigFloat t1(prec), t2(prec), re(prec);
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_swap(r.re.get(), re.get());
}

void cx_div(Cx& r, const Cx& a, const Cx& b, mpfr_prec_t prec) {
    BigFloat den(prec), t1(prec), t2(prec), re(prec);
    mpfr_sqr(t1.get(), b.re.get(), MPFR_RNDN);
    mpfr_sqr(t2.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(den.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(re.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_div(re.get(), re.get(), den.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), r.im.get(), den.get(), MPFR_RNDN);
    mpfr_swap(r.re.get(), re.get());
}

void cx_abs(BigFloat& r, const Cx& a, mpfr_rnd_t rnd) { mpfr_hypot(r.get(), a.re.get(), a.im.get(), rnd); }

// p(z), p'(z) by Horner
void horner(const std::vector<BigFloat>& a, const Cx& z, Cx& p, Cx& dp, mpfr_prec_t prec) {
    mpfr_set_zero(p.re.get(), 1);
    mpfr_set_zero(p.im.get(), 1);
    mpfr_set_zero(dp.re.get(), 1);
    mpfr_set_zero(dp.im.get(), 1);
    for (std::size_t k = a.size(); k-- > 0;) {
        cx_mul(dp, dp, z, prec);
        mpfr_add(dp.re.get(), dp.re.get(), p.re.get(), MPFR_RNDN);
        mpfr_add(dp.im.get(), dp.im.get(), p.im.get(), MPFR_RNDN);
        cx_mul(p, p, z, prec);
        mpfr_add(p.re.get(), p.re.get(), a[k].get(), MPFR_RNDN);
    }
}

struct Certificate {
    bool ok = false;
    std::vector<BigFloat> radius;
};

// Inclusion disks D(z_i, n |W_i|) with W_i the Weierstrass correction; pairwise
// disjoint disks each hold exactly one root. Rounding in the evaluation is
// covered by an a priori Horner bound and a relative safety factor.
Certificate certify(const std::vector<Integer>& coeffs, const std::vector<BigFloat>& a, const std::vector<Cx>& z,
                    mpfr_prec_t prec) {
    const std::size_t n = z.size();
    Certificate cert;
    BigFloat u(prec);  // unit roundoff 2^(1-prec), rounded up
    mpfr_set_ui_2exp(u.get(), 1, 1 - prec, MPFR_RNDU);
    BigFloat safety(prec);
    mpfr_mul_ui(safety.get(), u.get(), 16 * (n + 2), MPFR_RNDU);
    mpfr_add_ui(safety.get(), safety.get(), 1, MPFR_RNDU);
    BigFloat lead = BigFloat::from(Integer(abs(coeffs.back())), prec, MPFR_RNDD);

    for (std::size_t i = 0; i < n; ++i) {
        Cx p(prec), dp(prec);
        horner(a, z[i], p, dp, prec);
        BigFloat ap(prec), az(prec), S(prec), tmp(prec);
        cx_abs(ap, p, MPFR_RNDU);
        cx_abs(az, z[i], MPFR_RNDU);
        // S = sum |a_k| |z|^k
        mpfr_set_zero(S.get(), 1);
        for (std::size_t k = coeffs.size(); k-- > 0;) {
            mpfr_mul(S.get(), S.get(), az.get(), MPFR_RNDU);
            BigFloat ak = BigFloat::from(Integer(abs(coeffs[k])), prec, MPFR_RNDU);
            mpfr_add(S.get(), S.get(), ak.get(), MPFR_RNDU);
        }
        // |p(z)| <= |p~| + (8n + 8) u S
        mpfr_mul(tmp.get(), S.get(), u.get(), MPFR_RNDU);
        mpfr_mul_ui(tmp.get(), tmp.get(), 8 * (coeffs.size() + 1), MPFR_RNDU);
        mpfr_add(ap.get(), ap.get(), tmp.get(), MPFR_RNDU);
        // denominator |lead| prod |z_i - z_j|, rounded down
        BigFloat den = lead;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Cx diff(prec);
            mpfr_sub(diff.re.get(), z[i].re.get(), z[j].re.get(), MPFR_RNDN);
            mpfr_sub(diff.im.get(), z[i].im.get(), z[j].im.get(), MPFR_RNDN);
            BigFloat ad(prec);
            cx_abs(ad, diff, MPFR_RNDD);
            mpfr_mul(den.get(), den.get(), ad.get(), MPFR_RNDD);
        }
        if (mpfr_zero_p(den.get())) return cert;
        BigFloat r(prec);
        mpfr_div(r.get(), ap.get(), den.get(), MPFR_RNDU);
        mpfr_mul_ui(r.get(), r.get(), n, MPFR_RNDU);
        mpfr_mul(r.get(), r.get(), safety.get(), MPFR_RNDU);
        cert.radius.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Cx diff(prec);
            mpfr_sub(diff.re.get(), z[i].re.get(), z[j].re.get(), MPFR_RNDN);
            mpfr_sub(diff.im.get(), z[i].im.get(), z[j].im.get(), MPFR_RNDN);
            BigFloat ad(prec), sum(prec);
            cx_abs(ad, diff, MPFR_RNDD);
            mpfr_div(ad.get(), ad.get(), safety.get(), MPFR_RNDD);
            mpfr_add(sum.get(), cert.radius[i].get(), cert.radius[j].get(), MPFR_RNDU);
            if (mpfr_cmp(ad.get(), sum.get()) <= 0) return cert;
        }
    }
    cert.ok = true;
    return cert;
}

}  // namespace

std::string RootBox::str(int digits) const {
    std::ostringstream os;
    os << re.str(digits) << (im.sign() < 0 ? " - " : " + ");
    BigFloat a(im.prec());
    mpfr_abs(a.get(), im.get(), MPFR_RNDN);
    os << a.str(digits) << "i  (r <= " << radius.str(3) << ")";
    return os.str();
}

std::vector<RootBox> complex_roots(const UniPoly& P, const Rational& target_radius) {
    if (P.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
    if (target_radius <= 0) throw std::invalid_argument("target radius must be positive");
    if (P.degree() < 1) return {};
    const UniPoly sqf = primitive_positive(P.exact_div(gcd(P, P.derivative())));
    const std::vector<Integer> coeffs = sqf.integer_coeffs();
    const std::size_t n = coeffs.size() - 1;

    std::size_t maxbits = 0;
    for (const auto& c : coeffs) maxbits = std::max(maxbits, mpz_sizeinbase(c.get_mpz_t(), 2));
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<std::size_t>(128, 2 * maxbits + 4 * n + 64));

    // initial points on a circle around the centroid enclosing all roots
    std::vector<Cx> z;
    {
        const mpfr_prec_t p0 = prec;
        BigFloat an = BigFloat::from(Integer(abs(coeffs[n])), p0);
        BigFloat R(p0);
        mpfr_set_ui(R.get(), 1, MPFR_RNDN);
        for (std::size_t k = 1; k <= n; ++k) {
            BigFloat q = BigFloat::from(Integer(abs(coeffs[n - k])), p0);
            mpfr_div(q.get(), q.get(), an.get(), MPFR_RNDN);
            if (mpfr_zero_p(q.get())) continue;
            mpfr_rootn_ui(q.get(), q.get(), static_cast<unsigned long>(k), MPFR_RNDN);
            mpfr_mul_ui(q.get(), q.get(), 2, MPFR_RNDN);
            if (mpfr_cmp(q.get(), R.get()) > 0) R = q;
        }
        BigFloat centre = BigFloat::from(make_rational(-coeffs[n - 1], coeffs[n] * static_cast<unsigned long>(n)), p0);
        BigFloat pi(p0);
        mpfr_const_pi(pi.get(), MPFR_RNDN);
        for (std::size_t k = 0; k < n; ++k) {
            Cx w(p0);
            BigFloat ang(p0);
            mpfr_mul_ui(ang.get(), pi.get(), 2 * k, MPFR_RNDN);
            mpfr_div_ui(ang.get(), ang.get(), n, MPFR_RNDN);
            BigFloat off = BigFloat::from(0.4, p0);
            mpfr_add(ang.get(), ang.get(), off.get(), MPFR_RNDN);
            mpfr_sin_cos(w.im.get(), w.re.get(), ang.get(), MPFR_RNDN);
            mpfr_mul(w.re.get(), w.re.get(), R.get(), MPFR_RNDN);
            mpfr_mul(w.im.get(), w.im.get(), R.get(), MPFR_RNDN);
            mpfr_add(w.re.get(), w.re.get(), centre.get(), MPFR_RNDN);
            z.push_back(std::move(w));
        }
    }

    BigFloat target = BigFloat::from(target_radius, 64, MPFR_RNDD);
    for (int attempt = 0; attempt < 12; ++attempt) {
        std::vector<BigFloat> a;
        for (const auto& c : coeffs) a.push_back(BigFloat::from(c, prec));
        for (auto& w : z) cx_set_prec(w, prec);

        const std::size_t max_iter = 100 + 20 * n;
        BigFloat tol(prec);
        mpfr_set_ui_2exp(tol.get(), 1, -(prec - 16), MPFR_RNDN);
        for (std::size_t it = 0; it < max_iter; ++it) {
            bool small = true;
            for (std::size_t k = 0; k < n; ++k) {
                Cx p(prec), dp(prec);
                horner(a, z[k], p, dp, prec);
                if (mpfr_zero_p(p.re.get()) && mpfr_zero_p(p.im.get())) continue;
                Cx ratio(prec), sum(prec), one(prec), w(prec);
                cx_div(ratio, p, dp, prec);
                mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == k) continue;
                    Cx diff(prec), inv(prec);
                    mpfr_sub(diff.re.get(), z[k].re.get(), z[j].re.get(), MPFR_RNDN);
                    mpfr_sub(diff.im.get(), z[k].im.get(), z[j].im.get(), MPFR_RNDN);
                    cx_div(inv, one, diff, prec);
                    mpfr_add(sum.re.get(), sum.re.get(), inv.re.get(), MPFR_RNDN);
                    mpfr_add(sum.im.get(), sum.im.get(), inv.im.get(), MPFR_RNDN);
                }
                Cx denom(prec);
                cx_mul(denom, ratio, sum, prec);
                mpfr_ui_sub(denom.re.get(), 1, denom.re.get(), MPFR_RNDN);
                mpfr_neg(denom.im.get(), denom.im.get(), MPFR_RNDN);
                cx_div(w, ratio, denom, prec);
                if (!mpfr_number_p(w.re.get()) || !mpfr_number_p(w.im.get())) continue;
                mpfr_sub(z[k].re.get(), z[k].re.get(), w.re.get(), MPFR_RNDN);
                mpfr_sub(z[k].im.get(), z[k].im.get(), w.im.get(), MPFR_RNDN);
                BigFloat aw(prec), az(prec);
                cx_abs(aw, w, MPFR_RNDN);
                cx_abs(az, z[k], MPFR_RNDN);
                if (mpfr_cmp_ui(az.get(), 1) < 0) mpfr_set_ui(az.get(), 1, MPFR_RNDN);
                mpfr_div(aw.get(), aw.get(), az.get(), MPFR_RNDN);
                if (mpfr_cmp(aw.get(), tol.get()) > 0) small = false;
            }
            if (small) break;
        }
        Certificate cert = certify(coeffs, a, z, prec);
        if (cert.ok) {
            bool tight = true;
            for (const auto& r : cert.radius)
                if (mpfr_cmp(r.get(), target.get()) > 0) tight = false;
            if (tight) {
                std::vector<RootBox> out;
                for (std::size_t k = 0; k < n; ++k) out.push_back({z[k].re, z[k].im, cert.radius[k]});
                return out;
            }
        }
        prec *= 2;
    }
    throw std::runtime_error("complex_roots: certification failed for " + sqf.str());
}

HeightValue mahler_root_height(const UniPoly& irreducible, mpfr_prec_t prec) {
    if (irreducible.degree() < 1) throw std::invalid_argument("root height needs degree >= 1");
    const auto [scale, c] = irreducible.primitive_integer();
    const int n = irreducible.degree();
    if (c[0] == 0) {
        if (n != 1) throw std::invalid_argument("polynomial divisible by t is not irreducible");
        return HeightValue::zero(prec);
    }
    Integer tr = Integer(1) << static_cast<mp_bitcnt_t>(prec + 8);
    const auto boxes = complex_roots(irreducible, make_rational(1, tr));
    if (static_cast<int>(boxes.size()) != n) throw std::invalid_argument("polynomial is not squarefree");

    bool all_in = true, all_out = true;
    Interval sum = Interval::log_of(Integer(abs(c.back())), prec);
    for (const auto& b : boxes) {
        const mpfr_prec_t bp = std::max(prec, b.re.prec());
        BigFloat lo(bp), hi(bp);
        mpfr_hypot(lo.get(), b.re.get(), b.im.get(), MPFR_RNDD);
        mpfr_hypot(hi.get(), b.re.get(), b.im.get(), MPFR_RNDU);
        mpfr_sub(lo.get(), lo.get(), b.radius.get(), MPFR_RNDD);
        mpfr_add(hi.get(), hi.get(), b.radius.get(), MPFR_RNDU);
        if (mpfr_cmp_ui(hi.get(), 1) > 0) all_in = false;
        if (mpfr_cmp_ui(lo.get(), 1) < 0) all_out = false;
        BigFloat llo(prec), lhi(prec);
        if (mpfr_cmp_ui(lo.get(), 1) > 0)
            mpfr_log(llo.get(), lo.get(), MPFR_RNDD);
        else
            mpfr_set_zero(llo.get(), 1);
        if (mpfr_cmp_ui(hi.get(), 1) > 0)
            mpfr_log(lhi.get(), hi.get(), MPFR_RNDU);
        else
            mpfr_set_zero(lhi.get(), 1);
        sum = sum + Interval(std::move(llo), std::move(lhi));
    }
    if (all_in) return HeightValue::exact_log(Rational(1, n), Rational(abs(c.back())), prec);
    if (all_out) return HeightValue::exact_log(Rational(1, n), Rational(abs(c.front())), prec);
    return HeightValue::approximate(sum * Rational(1, n));
}

std::vector<RootHeightRow> roots_height_table(const UniPoly& P, mpfr_prec_t prec, int degree_cap) {
    const FactorList fl = factor_over_Q(P, degree_cap);
    std::vector<RootHeightRow> rows;
    for (const auto& e : fl.factors)
        rows.push_back({e.factor, e.factor.degree(), e.multiplicity, mahler_root_height(e.factor, prec)});
    return rows;
}

}  // namespace heightlab
