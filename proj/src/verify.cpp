#include "heightlab/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "heightlab/bottcher.hpp"
#include "heightlab/dynamics.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/experiments.hpp"
#include "heightlab/factor_roots.hpp"
#include "heightlab/heights.hpp"

namespace heightlab {

namespace {

constexpr std::size_t max_failures = 8;

class Tally {
public:
    explicit Tally(SuiteResult& r) : r_(r) {}
    void check(bool ok, const std::function<std::string()>& what) {
        ++r_.total;
        if (ok) {
            ++r_.passed;
        } else if (r_.failures.size() < max_failures) {
            r_.failures.push_back(what());
        }
    }

private:
    SuiteResult& r_;
};

long rand_int(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

long rand_nonzero(std::mt19937_64& rng, long bound) {
    long x = 0;
    while (x == 0) x = rand_int(rng, -bound, bound);
    return x;
}

long rand_unit_mod(std::mt19937_64& rng, long bound, long p) {
    long x = 0;
    while (x == 0 || x % p == 0) x = rand_int(rng, -bound, bound);
    return x;
}

std::string pair_label(unsigned d, unsigned n) { return "d=" + std::to_string(d) + " n=" + std::to_string(n); }

const std::vector<std::pair<unsigned, unsigned>>& generic_cases() {
    static const std::vector<std::pair<unsigned, unsigned>> cases = [] {
        std::vector<std::pair<unsigned, unsigned>> v;
        for (unsigned d = 2; d <= 6; ++d)
            for (unsigned n = 1; n <= 3; ++n) v.emplace_back(d, n);
        for (unsigned n = 4; n <= 6; ++n) v.emplace_back(2, n);
        return v;
    }();
    return cases;
}

constexpr std::uint64_t small_primes[] = {2, 3, 5, 7};

void suite_generic(int criterion, SuiteResult& r) {
    Tally t(r);
    for (const auto& [d, n] : generic_cases()) {
        const GenericBoundsReport g = certify_generic_bounds(d, n, small_primes);
        const std::string at = pair_label(d, n);
        if (criterion == 1) {
            t.check(g.deg_ok, [&] { return at + ": deg A_{n,i} > i"; });
        } else if (criterion == 2) {
            for (const auto& pr : g.padic)
                t.check(pr.ok, [&] { return at + " p=" + std::to_string(pr.p) + ": Gauss norm bound fails"; });
        } else {
            t.check(g.nonnegative && g.l1_ok, [&] { return at + ": l1 norm exceeds 2^i C(d^n, i)"; });
            t.check(g.witness_ok, [&] { return at + ": witness values differ from 2^i C(d^n, i)"; });
        }
    }
}

UniPoly random_poly(std::mt19937_64& rng, int deg, long bound) {
    std::vector<Rational> c;
    for (int i = 0; i < deg; ++i) c.emplace_back(rand_int(rng, -bound, bound));
    c.emplace_back(rand_nonzero(rng, bound));
    return UniPoly(Var::t, std::move(c));
}

void suite_gelfond(const VerifyConfig& cfg, SuiteResult& r) {
    Tally t(r);
    std::mt19937_64 rng(cfg.seed ^ 4);
    const mpfr_prec_t prec = default_height_prec;
    const Interval log2 = Interval::log_of(Integer(2), prec);
    for (int i = 0; i < 500; ++i) {
        const UniPoly P = random_poly(rng, static_cast<int>(rand_int(rng, 0, 10)), 1000);
        const UniPoly Q = random_poly(rng, static_cast<int>(rand_int(rng, 0, 10)), 1000);
        const GelfondReport g = gelfond_gap(P, Q, prec);
        const Interval bound = log2 * Rational(g.degree);
        // the exact ratio test decides; the interval gap must not contradict it
        const bool ok = g.ok && g.gap.lo().cmp(bound.hi()) <= 0;
        t.check(ok, [&] { return "P = " + P.str() + ", Q = " + Q.str(); });
    }
}

void suite_lemma61(SuiteResult& r) {
    Tally t(r);
    for (unsigned k = 1; k <= 40; ++k)
        for (unsigned m = 1; m <= 12; ++m) {
            const Rational v = lemma61_value(k, m);
            for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19}) {
                if (m % p == 0) continue;
                t.check(vp(v, p) >= Valuation(0), [&] {
                    return "k=" + std::to_string(k) + " m=" + std::to_string(m) + " p=" + std::to_string(p);
                });
            }
        }
}

void suite_bottcher(const VerifyConfig& cfg, SuiteResult& r) {
    Tally t(r);
    const unsigned J = 16;
    for (unsigned d : {2U, 3U}) {
        const std::string at = "d=" + std::to_string(d);
        const StabilizationReport st = stabilization_check(d, J);
        t.check(st.ok, [&] { return at + ": B_j changes between levels"; });
        BottcherSeries S = compute_coeffs(d, J);
        if (cfg.perturb_b0) S.B[0] += MultiPoly::constant(d, 1);
        const FunctionalEquationReport fe = functional_equation_check(S);
        t.check(fe.ok(), [&] {
            return at + ": functional equation residual nonzero at " + std::to_string(fe.nonzero.size()) +
                   " coefficients";
        });
        for (std::uint64_t p : small_primes) {
            const CoeffValuationReport cv = coeff_valuation_check(S, p);
            t.check(cv.ok, [&] { return at + " p=" + std::to_string(p) + ": coefficient valuation bound fails"; });
        }
    }
    for (unsigned n = 1; n <= 3; ++n) {
        const LevelDifferenceReport ld = level_difference_check(2, n);
        t.check(ld.ok, [&] { return "d=2 n=" + std::to_string(n) + ": F_{n+1} - F_n too large"; });
    }
}

Rational five_power(long k) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 5, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? Rational(1) / Rational(p) : Rational(p);
}

void suite_padic_eval(SuiteResult& r, const VerifyConfig& cfg) {
    Tally t(r);
    std::mt19937_64 rng(cfg.seed ^ 7);
    const std::uint64_t p = 5;
    const std::vector<Rational> avec{0, 1};
    const BottcherSeries S = compute_coeffs(2, 16);

    auto in_domain = [&]() -> Rational { return Rational(rand_unit_mod(rng, 500, 5)) * five_power(-rand_int(rng, 1, 3)); };
    for (int i = 0; i < 20; ++i) {
        const Rational z = in_domain();
        const PadicResidual res = padic_functional_residual(S, z, avec, p);
        t.check(res.ok(), [&] {
            return "z = " + to_string(z) + ": residual " + res.residual.str() + " < bound " + res.bound.str();
        });
    }
    for (int i = 0; i < 20; ++i) {
        const Rational z = in_domain();
        const std::int64_t vz = vp(z, p).value();
        const long j = rand_int(rng, vz + 1, 10);
        const Rational z2 = z + Rational(rand_unit_mod(rng, 500, 5)) * five_power(j);
        const std::pair<Rational, Rational> pr{z, z2};
        const auto rows = injectivity_probe(S, std::span(&pr, 1), avec, p);
        t.check(rows[0].status == IsometryStatus::holds, [&] {
            return "z = " + to_string(z) + ", z' = " + to_string(z2) + ": " + to_string(rows[0].status);
        });
    }
    for (int i = 0; i < 10; ++i) {
        const Rational z = Rational(rand_nonzero(rng, 500)) * five_power(rand_int(rng, 0, 2)) /
                           Rational(rand_int(rng, 1, 4));
        bool rejected = false;
        try {
            eval_padic(S, z, avec, p);
        } catch (const std::domain_error&) {
            rejected = true;
        }
        t.check(rejected, [&] { return "z = " + to_string(z) + " accepted outside the domain"; });
    }
}

void tally_scenario(Tally& t, const ScenarioResult& s, const std::string& prefix) {
    for (const auto& c : s.checks) t.check(c.ok, [&] { return prefix + c.name + (c.detail.empty() ? "" : ": " + c.detail); });
}

void suite_prop52(const VerifyConfig& cfg, SuiteResult& r) {
    Tally t(r);
    ScenarioOptions opt;
    opt.maxN = 8;
    opt.root_degree_limit = 32;
    opt.jobs = cfg.jobs;
    tally_scenario(t, scenario_prop52(opt), "");
}

void suite_quadratic(const VerifyConfig& cfg, SuiteResult& r) {
    Tally t(r);
    ScenarioOptions opt;
    opt.maxN = 6;
    opt.jobs = cfg.jobs;
    for (const auto& [a, b] : {std::pair{Rational(2), Rational(1, 2)}, std::pair{Rational(0), Rational(1, 3)}}) {
        const std::string at = "(a,b) = (" + to_string(a) + "," + to_string(b) + "): ";
        try {
            tally_scenario(t, scenario_quadratic(a, b, opt), at);
        } catch (const PropertyViolation& e) {
            t.check(false, [&] { return at + e.what(); });
        }
    }
}

void suite_example15(SuiteResult& r) {
    Tally t(r);
    tally_scenario(t, scenario_example15(), "");
}

void suite_counterexample(SuiteResult& r) {
    Tally t(r);
    tally_scenario(t, scenario_counterexample(40, 40), "");
}

// Irreducible by Eisenstein at p, then moved by t -> t + c.
UniPoly random_irreducible(std::mt19937_64& rng) {
    const int deg = static_cast<int>(rand_int(rng, 1, 6));
    const long p = std::array<long, 4>{2, 3, 5, 7}[rng() % 4];
    std::vector<Rational> c;
    c.emplace_back(p * rand_unit_mod(rng, 12, p));
    for (int i = 1; i < deg; ++i) c.emplace_back(p * rand_int(rng, -6, 6));
    c.emplace_back(rand_unit_mod(rng, 6, p));
    const UniPoly P(Var::t, std::move(c));
    return P.compose(UniPoly(Var::t, {Rational(rand_int(rng, -3, 3)), 1}));
}

void suite_factor(const VerifyConfig& cfg, SuiteResult& r) {
    Tally t(r);
    std::mt19937_64 rng(cfg.seed ^ 12);
    for (int i = 0; i < 200; ++i) {
        const int k = static_cast<int>(rand_int(rng, 1, 4));
        std::vector<UniPoly> parts;
        for (int j = 0; j < k; ++j) {
            // repeat an earlier factor now and then to exercise multiplicities
            if (j > 0 && rng() % 4 == 0)
                parts.push_back(parts[rng() % parts.size()]);
            else
                parts.push_back(random_irreducible(rng));
        }
        UniPoly prod = UniPoly::constant(1, Var::t);
        std::vector<int> want;
        for (const auto& q : parts) {
            prod *= q;
            want.push_back(q.degree());
        }
        const FactorList fl = factor_over_Q(prod);
        std::vector<int> got;
        for (const auto& e : fl.factors)
            for (unsigned m = 0; m < e.multiplicity; ++m) got.push_back(e.factor.degree());
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        t.check(fl.product(Var::t) == prod && got == want, [&] { return "product " + prod.str(); });
    }
    const FactorList f4 = factor_over_Q(UniPoly(Var::t, {1, 0, 0, 0, 1}));
    t.check(f4.factors.size() == 1 && f4.factors[0].multiplicity == 1, [] { return "t^4 + 1 split"; });
}

const char* suite_name(int k) {
    static const char* const names[] = {
        "generic iterate degree bound",
        "generic iterate p-adic bound",
        "generic iterate l1 bound and witness",
        "product height fuzz",
        "binomial-type coefficient integrality",
        "Bottcher coefficients",
        "p-adic Bottcher evaluation",
        "3z^2+5 against z^2",
        "z^2+t desk-scale scenarios",
        "z^4+t and z^8+t example",
        "power-map height witness",
        "factorization oracle",
    };
    return names[k - 1];
}

}  // namespace

std::string SuiteResult::str() const {
    char head[160];
    std::snprintf(head, sizeof head, "%s %2d %s: %zu/%zu (%.1fs)", ok() ? "PASS" : "FAIL", criterion, name.c_str(),
                  passed, total, seconds);
    std::string s = head;
    for (const auto& f : failures) s += "\n    " + f;
    return s;
}

SuiteResult run_suite(int criterion, const VerifyConfig& cfg) {
    if (criterion < 1 || criterion > suite_count) throw std::invalid_argument("no suite " + std::to_string(criterion));
    SuiteResult r;
    r.criterion = criterion;
    r.name = suite_name(criterion);
    const auto start = std::chrono::steady_clock::now();
    try {
        switch (criterion) {
            case 1:
            case 2:
            case 3: suite_generic(criterion, r); break;
            case 4: suite_gelfond(cfg, r); break;
            case 5: suite_lemma61(r); break;
            case 6: suite_bottcher(cfg, r); break;
            case 7: suite_padic_eval(r, cfg); break;
            case 8: suite_prop52(cfg, r); break;
            case 9: suite_quadratic(cfg, r); break;
            case 10: suite_example15(r); break;
            case 11: suite_counterexample(r); break;
            case 12: suite_factor(cfg, r); break;
        }
    } catch (const std::exception& e) {
        ++r.total;
        r.failures.push_back(std::string("aborted: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

bool VerifyReport::ok() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

std::string VerifyReport::str() const {
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& s : suites) {
        os << s.str() << "\n";
        passed += s.ok();
    }
    os << passed << "/" << suites.size() << " suites passed\n";
    return os.str();
}

VerifyReport verify_all(const VerifyConfig& cfg, std::span<const int> only) {
    VerifyReport rep;
    if (only.empty()) {
        for (int k = 1; k <= suite_count; ++k) rep.suites.push_back(run_suite(k, cfg));
    } else {
        for (int k : only) rep.suites.push_back(run_suite(k, cfg));
    }
    return rep;
}

}  // namespace heightlab
