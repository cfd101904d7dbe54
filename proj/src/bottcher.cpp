#include "heightlab/bottcher.hpp"

#include <algorithm>
#include <stdexcept>

#include "heightlab/trunc_laurent.hpp"

namespace heightlab {

unsigned bottcher_level(unsigned d, unsigned J) {
    if (d < 2) throw std::invalid_argument("Bottcher coordinate needs d >= 2");
    unsigned n = 1;
    std::uint64_t dn = d;
    while (dn - 1 <= J) {
        dn *= d;
        ++n;
    }
    return n;
}

std::vector<MultiPoly> bottcher_F(unsigned d, unsigned level, unsigned order, std::uint64_t cap) {
    std::vector<MultiPoly> A = generic_iterate_leading(d, level, order, cap);
    const std::uint64_t dn = checked_power(d, level, cap);
    const MultiPoly zero(d);
    TruncLaurent<MultiPoly> u(order, zero);
    for (unsigned i = 1; i <= order && i < A.size(); ++i) u.set(static_cast<int>(i), A[i]);
    const TruncLaurent<MultiPoly> g = trunc_root(u, static_cast<unsigned>(dn));
    std::vector<MultiPoly> out;
    for (unsigned k = 0; k <= order; ++k) out.push_back(g.at(static_cast<int>(k)));
    return out;
}

BottcherSeries compute_coeffs_at_level(unsigned d, unsigned J, unsigned level, std::uint64_t cap) {
    BottcherSeries S;
    S.d = d;
    S.J = J;
    S.level = level;
    const auto g = bottcher_F(d, level, J + 1, cap);
    // F = z g, so the coefficient of z^{-j} is g_{j+1}
    S.B.assign(g.begin() + 1, g.end());
    return S;
}

BottcherSeries compute_coeffs(unsigned d, unsigned J, std::uint64_t cap) {
    return compute_coeffs_at_level(d, J, bottcher_level(d, J), cap);
}

StabilizationReport stabilization_check(unsigned d, unsigned J, std::uint64_t cap) {
    StabilizationReport r;
    r.d = d;
    r.J = J;
    r.level = bottcher_level(d, J);
    const auto lo = compute_coeffs_at_level(d, J, r.level, cap);
    const auto hi = compute_coeffs_at_level(d, J, r.level + 1, cap);
    for (unsigned j = 0; j <= J; ++j) {
        if (!(lo.B[j] == hi.B[j])) {
            r.mismatches.push_back(j);
            r.ok = false;
        }
    }
    return r;
}

LevelDifferenceReport level_difference_check(unsigned d, unsigned n, std::uint64_t cap) {
    LevelDifferenceReport r;
    r.d = d;
    r.n = n;
    const unsigned dn = static_cast<unsigned>(checked_power(d, n, cap));
    const auto a = bottcher_F(d, n, dn, cap);
    const auto b = bottcher_F(d, n + 1, dn, cap);
    for (unsigned k = 0; k <= dn; ++k) {
        if (a[k] == b[k]) continue;
        // g_k multiplies z^{1-k}
        r.first_nonzero = static_cast<int>(k) - 1;
        if (k <= dn - 1) r.ok = false;
        break;
    }
    return r;
}

FunctionalEquationReport functional_equation_check(const BottcherSeries& S) {
    FunctionalEquationReport r;
    r.d = S.d;
    r.J = S.J;
    r.certified_order = static_cast<int>(S.J) - static_cast<int>(S.d - 1);
    const unsigned d = S.d;
    const unsigned K = S.J + 1;
    const MultiPoly zero(d);

    TruncLaurent<MultiPoly> U = TruncLaurent<MultiPoly>::one(K, zero);
    for (unsigned j = 0; j <= S.J; ++j) U.set(static_cast<int>(j + 1), S.B[j]);

    std::vector<MultiPoly> avars, q(d + 1, zero);
    for (unsigned i = 1; i <= d; ++i) avars.push_back(MultiPoly::variable(d, i));
    for (unsigned i = 1; i <= d; ++i) q[d - i] = avars[i - 1];
    q[d] = MultiPoly::constant(d, 1);

    const TruncLaurent<MultiPoly> UP = compose_poly(U, std::span<const MultiPoly>(q));
    const TruncLaurent<MultiPoly> phat = TruncLaurent<MultiPoly>::one_plus(K, zero, avars);
    const TruncLaurent<MultiPoly> residual = phat * UP - U.pow(d);
    for (unsigned k = 0; k <= K; ++k) {
        ++r.checked;
        if (!residual.at(static_cast<int>(k)).is_zero()) r.nonzero.push_back(k);
    }
    return r;
}

namespace {

std::int64_t floor_rational(const Rational& x) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f.get_si();
}

std::int64_t ceil_rational(const Rational& x) {
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return c.get_si();
}

// mu = -min(0, min vp(a_i)), so max{1, |a_i|_p} = p^mu
std::int64_t mu_of(std::span<const Rational> avec, std::uint64_t p) {
    std::int64_t mu = 0;
    for (const auto& a : avec) {
        const Valuation v = vp(a, p);
        if (v.is_finite()) mu = std::max(mu, -v.value());
    }
    return mu;
}

}  // namespace

CoeffValuationReport coeff_valuation_check(const BottcherSeries& S, std::uint64_t p) {
    CoeffValuationReport r;
    r.d = S.d;
    r.p = p;
    const std::int64_t vd = vp(Integer(S.d), p).value();
    r.p_divides_d = vd > 0;
    for (unsigned j = 0; j < S.B.size(); ++j) {
        const Valuation v = S.B[j].min_valuation(p);
        std::int64_t bound = 0;
        if (r.p_divides_d) bound = ceil_rational(-Rational(j + 1) * (Rational(vd) + Rational(1, p - 1)));
        r.min_valuation.push_back(v);
        r.bound.push_back(bound);
        if (v < Valuation(bound)) r.ok = false;
    }
    return r;
}

std::string padic_domain_violation(unsigned d, const Rational& z, std::span<const Rational> avec, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (avec.size() != d) throw std::invalid_argument("need exactly d coefficients a_1..a_d");
    const Valuation vz = vp(z, p);
    if (vz.is_infinite()) return "z = 0 is outside every domain";
    const std::int64_t mu = mu_of(avec, p);
    const std::int64_t vd = vp(Integer(d), p).value();
    if (vd == 0) {
        if (vz.value() < -mu) return "";
        return "max{1,|a_i|_p} < |z|_p fails: vp(z) = " + std::to_string(vz.value()) + " is not < " +
               std::to_string(-mu);
    }
    // max{1,|a_i|} p^{1/(p-1)} / |d| < |z|  <=>  (p-1)(-vp(z) - mu - vp(d)) > 1
    const std::int64_t lhs = static_cast<std::int64_t>(p - 1) * (-vz.value() - mu - vd);
    if (lhs > 1) return "";
    return "max{1,|a_i|_p} p^(1/(p-1)) / |d|_p < |z|_p fails: (p-1)(-vp(z) - mu - vp(d)) = " + std::to_string(lhs) +
           " is not > 1";
}

PadicEvalResult eval_padic(const BottcherSeries& S, const Rational& z, std::span<const Rational> avec,
                           std::uint64_t p) {
    const std::string why = padic_domain_violation(S.d, z, avec, p);
    if (!why.empty()) throw std::domain_error("eval_padic: " + why);
    PadicEvalResult r;
    r.p = p;
    r.z = z;
    r.avec.assign(avec.begin(), avec.end());
    r.J = S.J;

    Rational sum = z;
    const Rational zinv = 1 / z;
    Rational zpow = 1;
    for (unsigned j = 0; j <= S.J; ++j) {
        const Rational b = S.B[j].eval(avec);
        if (b != 0) sum += b * zpow;
        zpow *= zinv;
    }
    r.partial_sum = sum;

    if (std::all_of(avec.begin(), avec.end(), [](const Rational& a) { return a == 0; })) {
        r.tail_bound = Valuation::infinity();
        return r;
    }
    const std::int64_t vz = vp(z, p).value();
    const std::int64_t mu = mu_of(avec, p);
    const std::int64_t vd = vp(Integer(S.d), p).value();
    if (vd == 0) {
        // vp(B_j(a) / z^j) >= -mu (j+1) - j vz = -mu + j delta
        const std::int64_t delta = -(mu + vz);
        r.tail_bound = Valuation(-mu + static_cast<std::int64_t>(S.J + 1) * delta);
    } else {
        const Rational rho = Rational(mu + vd) + Rational(1, p - 1);
        const Rational delta = Rational(-vz) - rho;
        r.tail_bound = Valuation(floor_rational(-rho + Rational(S.J + 1) * delta));
    }
    return r;
}

PadicResidual padic_functional_residual(const BottcherSeries& S, const Rational& z, std::span<const Rational> avec,
                                        std::uint64_t p) {
    Rational fz = 1;  // Horner for z^d + a1 z^{d-1} + ... + a_d
    for (unsigned i = 0; i < S.d; ++i) fz = fz * z + avec[i];
    const PadicEvalResult at_z = eval_padic(S, z, avec, p);
    const PadicEvalResult at_fz = eval_padic(S, fz, avec, p);
    Rational pw = 1;
    for (unsigned i = 0; i < S.d; ++i) pw *= at_z.partial_sum;
    PadicResidual r;
    r.residual = vp(at_fz.partial_sum - pw, p);
    const Valuation shifted = at_z.tail_bound.is_infinite()
                                  ? Valuation::infinity()
                                  : at_z.tail_bound + Valuation(static_cast<std::int64_t>(S.d - 1) * vp(z, p).value());
    r.bound = std::min(at_fz.tail_bound, shifted);
    return r;
}

std::vector<InjectivityRow> injectivity_probe(const BottcherSeries& S,
                                              std::span<const std::pair<Rational, Rational>> pairs,
                                              std::span<const Rational> avec, std::uint64_t p) {
    std::vector<InjectivityRow> rows;
    for (const auto& [z, z2] : pairs) {
        if (z == z2) throw std::invalid_argument("injectivity_probe needs z != z'");
        const auto e1 = eval_padic(S, z, avec, p);
        const auto e2 = eval_padic(S, z2, avec, p);
        InjectivityRow row;
        row.z = z;
        row.z2 = z2;
        row.v_points = vp(z - z2, p);
        row.v_images = vp(e1.partial_sum - e2.partial_sum, p);
        row.tail = std::min(e1.tail_bound, e2.tail_bound);
        if (row.tail > row.v_points)
            row.status = row.v_images == row.v_points ? IsometryStatus::holds : IsometryStatus::violated;
        else
            row.status = IsometryStatus::inconclusive;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string to_string(IsometryStatus s) {
    switch (s) {
        case IsometryStatus::holds: return "holds";
        case IsometryStatus::violated: return "violated";
        case IsometryStatus::inconclusive: return "inconclusive at this truncation";
    }
    return "";
}

}  // namespace heightlab
