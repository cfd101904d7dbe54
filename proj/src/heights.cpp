#include "heightlab/heights.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "heightlab/errors.hpp"
#include "heightlab/factor_roots.hpp"

namespace heightlab {

HeightValue weil_height_rational(const Rational& x, mpfr_prec_t prec) {
    const Integer num = abs(x.get_num());
    const Integer& den = x.get_den();
    return HeightValue::exact_log(1, Rational(num > den ? num : den), prec);
}

Integer hpol_ratio(const UniPoly& P) {
    if (P.is_zero()) throw std::invalid_argument("hpol of the zero polynomial");
    const auto ints = P.primitive_integer().second;
    Integer m = 0;
    for (const auto& c : ints)
        if (abs(c) > m) m = abs(c);
    return m;
}

HeightValue hpol(const UniPoly& P, mpfr_prec_t prec) { return HeightValue::exact_log(1, Rational(hpol_ratio(P)), prec); }

Valuation gauss_valuation(const UniPoly& P, std::uint64_t p) {
    Valuation v = Valuation::infinity();
    for (const auto& c : P.coeffs()) v = std::min(v, vp(c, p));
    return v;
}

GelfondReport gelfond_gap(const UniPoly& P, const UniPoly& Q, mpfr_prec_t prec) {
    const UniPoly PQ = P * Q;
    const Integer HP = hpol_ratio(P), HQ = hpol_ratio(Q), HPQ = hpol_ratio(PQ);
    GelfondReport r{hpol(P, prec), hpol(Q, prec), hpol(PQ, prec), PQ.degree(), make_rational(HPQ, HP * HQ),
                    Interval(prec), false};
    r.gap = (r.hPQ.enclosure() - r.hP.enclosure() - r.hQ.enclosure()).abs();
    const Integer two_d = Integer(1) << static_cast<mp_bitcnt_t>(r.degree);
    r.ok = r.ratio <= Rational(two_d) && r.ratio >= make_rational(1, two_d);
    return r;
}

HeightValue root_height_bound(const UniPoly& P, unsigned dprime, mpfr_prec_t prec) {
    if (P.degree() < 1) throw std::invalid_argument("root_height_bound needs deg P >= 1");
    if (dprime < 1 || static_cast<int>(dprime) > P.degree())
        throw std::invalid_argument("root_height_bound needs 1 <= d' <= deg P");
    const Integer arg = hpol_ratio(P) << static_cast<mp_bitcnt_t>(P.degree());
    return HeightValue::exact_log(Rational(1, dprime), Rational(arg), prec);
}

namespace {

bool eisenstein_at_some_prime(const std::vector<Integer>& k) {
    Integer g = 0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k[i].get_mpz_t());
    if (g == 0 || g == 1) return false;
    const UniPoly P = UniPoly::from_integers(Var::t, k);
    // small prime divisors of g, then g itself if what remains is prime
    for (unsigned long p = 2; p < 100000 && g != 1; ++p) {
        if (!mpz_divisible_ui_p(g.get_mpz_t(), p)) continue;
        if (eisenstein(P, Integer(p))) return true;
        while (mpz_divisible_ui_p(g.get_mpz_t(), p)) g /= p;
    }
    return g != 1 && is_prime(g) && eisenstein(P, g);
}

bool eisenstein_certified(const std::vector<Integer>& c) {
    return eisenstein_at_some_prime(c) || eisenstein_at_some_prime(std::vector<Integer>(c.rbegin(), c.rend()));
}

}  // namespace

HeightValue height_from_minpoly(const UniPoly& P, mpfr_prec_t prec) {
    if (P.degree() < 1) throw std::invalid_argument("height_from_minpoly needs degree >= 1");
    const UniPoly Q = UniPoly::from_integers(P.var(), P.primitive_integer().second);
    if (Q.degree() > 1 && !eisenstein_certified(Q.integer_coeffs())) {
        const FactorList fl = factor_over_Q(Q);
        if (fl.factors.size() != 1 || fl.factors[0].multiplicity != 1)
            throw std::invalid_argument("height_from_minpoly: " + P.str() + " is reducible over Q");
    }
    return mahler_root_height(Q, prec);
}

CanonicalHeightEstimate canonical_height_numeric(const UniPoly& f, const Rational& x, unsigned nmax,
                                                 mpfr_prec_t prec, std::uint64_t bit_cap) {
    if (f.degree() < 2) throw std::invalid_argument("canonical height needs deg f >= 2");
    const unsigned d = static_cast<unsigned>(f.degree());
    std::size_t coeff_bits = 0;
    for (const auto& c : f.coeffs())
        coeff_bits = std::max(coeff_bits, mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2));

    auto height_of = [prec](const Rational& y) {
        const Integer num = abs(y.get_num());
        const Integer& den = y.get_den();
        return Interval::log_of(num > den ? num : den, prec);
    };

    CanonicalHeightEstimate out{HeightValue::zero(prec), 0, 0, 0, false, {}};
    std::set<Rational> seen;
    Rational y = x;
    Interval h = height_of(y);
    Integer dk = 1;
    out.normalized.push_back(h.mid().to_double());
    for (unsigned k = 0;; ++k) {
        const std::size_t bits = mpz_sizeinbase(y.get_num_mpz_t(), 2) + mpz_sizeinbase(y.get_den_mpz_t(), 2);
        if (bits <= 512 && !seen.insert(y).second) {
            out.preperiodic = true;
            out.n = k;
            out.value = HeightValue::zero(prec);
            out.tail = 0;
            return out;
        }
        if (k == nmax) {
            out.n = k;
            out.value = HeightValue::approximate(h * make_rational(1, dk));
            out.tail = out.C / ((d - 1) * std::pow(static_cast<double>(d), static_cast<double>(k)));
            return out;
        }
        if (static_cast<std::uint64_t>(d) * bits + coeff_bits + 64 > bit_cap)
            throw ResourceCapError("canonical_height_numeric: orbit exceeds " + std::to_string(bit_cap) + " bits");
        Rational next = 0;
        for (std::size_t i = f.coeffs().size(); i-- > 0;) next = next * y + f.coeffs()[i];
        y = next;
        Interval hn = height_of(y);
        out.C = std::max(out.C, std::fabs((hn - h * Rational(d)).mid().to_double()));
        h = hn;
        dk *= d;
        out.normalized.push_back((h * make_rational(1, dk)).mid().to_double());
    }
}

SpecializationFit specialization_fit(const Family& f, const Rational& x, std::span<const Rational> samples,
                                     unsigned nmax) {
    SpecializationFit fit;
    const double hx = weil_height_rational(x).approx();
    for (const auto& t : samples) {
        const auto est = canonical_height_numeric(f.specialize(t), x, nmax);
        fit.h_t.push_back(weil_height_rational(t).approx());
        fit.deviation.push_back(std::fabs(est.value.approx() - hx));
    }
    const double n = static_cast<double>(fit.h_t.size());
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < fit.h_t.size(); ++i) {
        sx += fit.h_t[i];
        sy += fit.deviation[i];
        sxx += fit.h_t[i] * fit.h_t[i];
        sxy += fit.h_t[i] * fit.deviation[i];
    }
    const double den = n * sxx - sx * sx;
    if (den != 0) {
        fit.slope = (n * sxy - sx * sy) / den;
        fit.intercept = (sy - fit.slope * sx) / n;
    } else {
        fit.intercept = sy / n;
    }
    return fit;
}

}  // namespace heightlab
