#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "heightlab/bottcher.hpp"
#include "heightlab/dynamics.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/experiments.hpp"
#include "heightlab/factor_roots.hpp"
#include "heightlab/heights.hpp"
#include "heightlab/parser.hpp"
#include "heightlab/verify.hpp"

using namespace heightlab;

namespace {

enum Exit { ok = 0, violation = 1, usage = 2, cap = 3 };

Rational rational_arg(const std::string& text) {
    const UniPoly p = parse_t_poly(text);
    if (!p.is_constant()) throw ParseError("expected a rational number, got '" + text + "'", 0);
    return p.coeff(0);
}

std::string err_text(double e) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", e);
    return buf;
}

std::string height_text(const HeightValue& h, int digits) {
    std::string s = h.decimal(digits) + " (+/- " + err_text(h.error_bound()) + ")";
    if (h.exact()) s = h.str(digits) + " = " + s;
    return s;
}

struct Common {
    int digits = 30;
    std::string out = "csv";
    unsigned maxN = 6;
    std::optional<std::uint64_t> cap;
    unsigned jobs = 1;
};

int emit(const ScenarioResult& r, const Common& c) {
    std::cout << (c.out == "json" ? to_json(r) : to_csv(r));
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& chk : r.checks)
        if (!chk.ok) std::cerr << "check failed: " << chk.name << (chk.detail.empty() ? "" : " (" + chk.detail + ")") << "\n";
    return r.ok() ? Exit::ok : Exit::violation;
}

ScenarioOptions scenario_options(const Common& c) {
    ScenarioOptions o;
    o.maxN = c.maxN;
    o.digits = c.digits;
    o.jobs = c.jobs;
    if (c.cap) o.degree_cap = static_cast<int>(*c.cap);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heightlab: exact heights, iterates and Bottcher coordinates"};
    app.require_subcommand(1);
    Common c;
    int rc = Exit::ok;

    auto add_precision = [&](CLI::App* s) {
        s->add_option("--precision", c.digits, "decimal digits for numeric output")->check(CLI::Range(5, 2000));
    };
    auto add_cap = [&](CLI::App* s, const std::string& what) { s->add_option("--cap", c.cap, what); };

    // iterate
    std::string map_text, point_text;
    unsigned steps = 3;
    bool full = false;
    auto* it = app.add_subcommand("iterate", "iterate a map on a point of Q[t] and report the function-field height");
    it->add_option("map", map_text, "map in z with coefficients in Q[t], e.g. 'z^2+t'")->required();
    it->add_option("point", point_text, "starting point in Q[t]")->required();
    it->add_option("-n,--steps", steps, "number of iterations");
    it->add_flag("--full", full, "print every iterate in full");
    add_cap(it, "maximum t-degree");
    it->callback([&] {
        const Family f = parse_map(map_text);
        UniPoly x = parse_t_poly(point_text);
        const std::uint64_t limit = c.cap.value_or(default_orbit_degree_cap);
        for (unsigned k = 0; k <= steps; ++k) {
            if (k > 0) x = iterate_orbit(f, x, 1, limit);
            std::cout << "f^" << k << "(a): degree " << x.degree();
            if (full || x.degree() <= 16) std::cout << ": " << x.str();
            std::cout << "\n";
        }
        const FFHeight h = ff_canonical_height(f, parse_t_poly(point_text), 64, limit);
        static const char* const names[] = {"exact", "preperiodic", "undetermined"};
        std::cout << "canonical height over Q(t): " << to_string(h.value) << " [" << names[static_cast<int>(h.status)]
                  << "] " << h.note << "\n";
    });

    // generic
    unsigned gd = 2, gn = 2;
    std::vector<std::uint64_t> primes{2, 3, 5, 7};
    bool print_coeffs = false;
    auto* gen = app.add_subcommand("generic", "bounds for the coefficients A_{n,i} of the generic n-th iterate");
    gen->add_option("-d", gd, "degree d")->required()->check(CLI::Range(2, 9));
    gen->add_option("-n", gn, "iterate n")->required()->check(CLI::Range(1, 64));
    gen->add_option("--primes", primes, "primes for the Gauss-norm bound")->delimiter(',');
    gen->add_flag("--print", print_coeffs, "print every A_{n,i}");
    add_cap(gen, "maximum d^n");
    gen->callback([&] {
        const std::uint64_t limit = c.cap.value_or(default_generic_cap);
        for (auto p : primes)
            if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
        const GenericBoundsReport r = certify_generic_bounds(gd, gn, primes, default_expand_limit, limit);
        std::cout << "d=" << gd << " n=" << gn << (r.expanded ? " (expanded)" : " (certified image)") << "\n";
        std::cout << "i,degree,l1,bound,witness\n";
        for (std::size_t i = 0; i < r.degree.size(); ++i)
            std::cout << i << ',' << r.degree[i] << ',' << r.l1[i] << ',' << r.bound[i] << ',' << r.tilde[i] << "\n";
        std::cout << "degree bound: " << (r.deg_ok ? "holds" : "FAILS") << "\n";
        std::cout << "l1 bound: " << (r.l1_ok && r.nonnegative ? "holds" : "FAILS") << "\n";
        std::cout << "witness: " << (r.witness_ok ? "holds" : "FAILS") << "\n";
        for (const auto& pr : r.padic)
            std::cout << "Gauss norm bound at p=" << pr.p << ": " << (pr.ok ? "holds" : "FAILS") << "\n";
        if (print_coeffs) {
            const GenericIterate G = generic_iterate(gd, gn, limit);
            for (std::size_t i = 0; i < G.A.size(); ++i) std::cout << "A_" << i << " = " << G.A[i].str() << "\n";
        }
        if (!r.ok()) rc = Exit::violation;
    });

    // heights
    std::string hexpr, hmap;
    unsigned hsteps = 8;
    auto* hts = app.add_subcommand("heights", "Weil height of a rational, or h_pol and root heights of a polynomial");
    hts->add_option("expr", hexpr, "rational number or polynomial in t")->required();
    hts->add_option("--map", hmap, "with a rational expr: estimate its canonical height under this map in z");
    hts->add_option("-n,--steps", hsteps, "iterations for the canonical height estimate");
    add_precision(hts);
    add_cap(hts, "maximum factorization degree");
    hts->callback([&] {
        const mpfr_prec_t prec = bits_for_digits(c.digits);
        const UniPoly P = parse_t_poly(hexpr);
        if (P.is_constant()) {
            const Rational x = P.coeff(0);
            std::cout << "h(" << to_string(x) << ") = " << height_text(weil_height_rational(x, prec), c.digits) << "\n";
            if (!hmap.empty()) {
                const Family f = parse_map(hmap);
                if (!f.is_constant_in_t()) throw std::invalid_argument("--map must not involve t");
                const auto est = canonical_height_numeric(f.specialize(0), x, hsteps, prec);
                std::cout << "canonical height ~ " << est.value.decimal(c.digits) << " (n = " << est.n
                          << ", tail estimate " << err_text(est.tail) << (est.preperiodic ? ", preperiodic" : "")
                          << ")\n";
            }
            return;
        }
        std::cout << "h_pol = " << height_text(hpol(P, prec), c.digits) << "\n";
        std::cout << "factor,degree,multiplicity,root_height,err_bound\n";
        const int limit = c.cap ? static_cast<int>(*c.cap) : default_factor_degree_cap;
        for (const auto& row : roots_height_table(P, prec, limit))
            std::cout << row.factor.str() << ',' << row.degree << ',' << row.multiplicity << ','
                      << row.height.decimal(c.digits) << ',' << err_text(row.height.error_bound()) << "\n";
    });

    // factor
    std::string fexpr;
    auto* fac = app.add_subcommand("factor", "factor a polynomial over Q");
    fac->add_option("poly", fexpr, "polynomial in t")->required();
    add_cap(fac, "maximum degree");
    fac->callback([&] {
        const UniPoly P = parse_t_poly(fexpr);
        const FactorList fl = factor_over_Q(P, c.cap ? static_cast<int>(*c.cap) : default_factor_degree_cap);
        std::cout << "unit: " << to_string(fl.unit) << "\n";
        for (const auto& e : fl.factors)
            std::cout << "(" << e.factor.str() << ")^" << e.multiplicity << "  degree " << e.factor.degree() << "\n";
        if (!(fl.product(P.var()) == P)) throw PropertyViolation("factorization does not multiply back to the input");
    });

    // eisenstein
    std::string eexpr;
    std::string eprime;
    auto* eis = app.add_subcommand("eisenstein", "Eisenstein criterion at a prime");
    eis->add_option("poly", eexpr, "polynomial in t with integer coefficients")->required();
    eis->add_option("-p,--prime", eprime, "prime")->required();
    eis->callback([&] {
        const UniPoly P = parse_t_poly(eexpr);
        const Integer p(eprime);
        if (!is_prime(p)) throw std::invalid_argument(eprime + " is not prime");
        std::cout << (eisenstein(P, p) ? "Eisenstein at " + eprime + ": irreducible" : "not Eisenstein at " + eprime)
                  << "\n";
    });

    // bottcher
    unsigned bd = 2, bJ = 8;
    bool bcheck = false;
    auto* bot = app.add_subcommand("bottcher", "coefficients B_j of the Bottcher coordinate of z^d + a1 z^(d-1) + ... + a_d");
    bot->add_option("-d", bd, "degree")->required()->check(CLI::Range(2, 9));
    bot->add_option("-J", bJ, "last coefficient index")->check(CLI::Range(0, 4096));
    bot->add_flag("--check", bcheck, "verify stabilization, the functional equation and valuation bounds");
    add_cap(bot, "maximum d^n");
    bot->callback([&] {
        const std::uint64_t limit = c.cap.value_or(default_generic_cap);
        const BottcherSeries S = compute_coeffs(bd, bJ, limit);
        for (unsigned j = 0; j <= bJ; ++j) std::cout << "B_" << j << " = " << S.B[j].str() << "\n";
        if (!bcheck) return;
        bool all = true;
        const auto st = stabilization_check(bd, bJ, limit);
        std::cout << "stabilization (level " << st.level << " vs " << st.level + 1 << "): " << (st.ok ? "ok" : "FAILS")
                  << "\n";
        const auto fe = functional_equation_check(S);
        std::cout << "functional equation through order " << fe.certified_order << ": " << (fe.ok() ? "ok" : "FAILS")
                  << "\n";
        all = st.ok && fe.ok();
        for (std::uint64_t p : {2, 3, 5, 7}) {
            const auto cv = coeff_valuation_check(S, p);
            std::cout << "valuation bound p=" << p << ": " << (cv.ok ? "ok" : "FAILS") << "\n";
            all &= cv.ok;
        }
        if (!all) rc = Exit::violation;
    });

    // bottcher-eval
    unsigned ed = 2, eJ = 16;
    std::string ez, ez2;
    std::vector<std::string> eavec;
    std::uint64_t ep = 5;
    auto* bev = app.add_subcommand("bottcher-eval", "evaluate the Bottcher series p-adically at a rational point");
    bev->add_option("-d", ed, "degree")->required()->check(CLI::Range(2, 9));
    bev->add_option("-J", eJ, "truncation index")->check(CLI::Range(0, 4096));
    bev->add_option("--z", ez, "point")->required();
    bev->add_option("--z2", ez2, "second point for the isometry check");
    bev->add_option("--a", eavec, "coefficients a1,...,ad")->delimiter(',')->required();
    bev->add_option("-p,--prime", ep, "prime")->required();
    add_cap(bev, "maximum d^n");
    bev->callback([&] {
        std::vector<Rational> avec;
        for (const auto& s : eavec) avec.push_back(rational_arg(s));
        const Rational z = rational_arg(ez);
        const BottcherSeries S = compute_coeffs(ed, eJ, c.cap.value_or(default_generic_cap));
        const PadicEvalResult r = eval_padic(S, z, avec, ep);
        std::cout << "partial sum: " << to_string(r.partial_sum) << "\n";
        std::cout << "vp(partial sum) = " << vp(r.partial_sum, ep).str() << ", tail valuation >= " << r.tail_bound.str()
                  << "\n";
        const PadicResidual res = padic_functional_residual(S, z, avec, ep);
        std::cout << "functional equation residual valuation " << res.residual.str() << " (certified >= "
                  << res.bound.str() << "): " << (res.ok() ? "ok" : "FAILS") << "\n";
        if (!res.ok()) rc = Exit::violation;
        if (!ez2.empty()) {
            const std::pair<Rational, Rational> pr{z, rational_arg(ez2)};
            const auto row = injectivity_probe(S, std::span(&pr, 1), avec, ep)[0];
            std::cout << "vp(z - z') = " << row.v_points.str() << ", vp(B(z) - B(z')) = " << row.v_images.str()
                      << ": isometry " << to_string(row.status) << "\n";
            if (row.status == IsometryStatus::violated) rc = Exit::violation;
        }
    });

    // scenario
    auto* sc = app.add_subcommand("scenario", "reproducible experiment tables");
    sc->require_subcommand(1);
    auto add_scenario_flags = [&](CLI::App* s) {
        s->add_option("--maxN", c.maxN, "largest N")->check(CLI::Range(1, 64));
        s->add_option("--out", c.out, "output format")->check(CLI::IsMember({"csv", "json"}));
        add_precision(s);
        add_cap(s, "maximum factorization degree");
        s->add_option("--jobs", c.jobs, "rows computed concurrently")->check(CLI::Range(1, 256));
    };
    std::string qa = "2", qb = "1/2";
    auto* sq = sc->add_subcommand("quadratic", "z^2 + t at two rational starting points");
    sq->add_option("--a", qa, "first point");
    sq->add_option("--b", qb, "second point");
    add_scenario_flags(sq);
    sq->callback([&] { rc = emit(scenario_quadratic(rational_arg(qa), rational_arg(qb), scenario_options(c)), c); });
    auto* sp = sc->add_subcommand("prop52", "3z^2 + 5 against z^2 at t");
    add_scenario_flags(sp);
    sp->callback([&] { rc = emit(scenario_prop52(scenario_options(c)), c); });
    auto* se = sc->add_subcommand("example15", "z^4 + t at t + 2017 against z^8 + t at t^3 + 2018");
    add_scenario_flags(se);
    se->callback([&] { rc = emit(scenario_example15(scenario_options(c)), c); });
    std::optional<unsigned> maxM;
    auto* sx = sc->add_subcommand("counterexample", "z^2 at t against z^3 at 2t");
    add_scenario_flags(sx);
    sx->add_option("--maxM", maxM, "largest m (defaults to maxN)")->check(CLI::Range(1, 64));
    sx->callback([&] { rc = emit(scenario_counterexample(maxM.value_or(c.maxN), c.maxN, scenario_options(c)), c); });

    // verify-all
    VerifyConfig vc;
    std::vector<int> only;
    auto* va = app.add_subcommand("verify-all", "run every property suite");
    va->add_flag("--perturb-b0", vc.perturb_b0, "add 1 to B_0 before the functional-equation check");
    va->add_option("--seed", vc.seed, "random seed");
    va->add_option("--jobs", vc.jobs, "rows computed concurrently")->check(CLI::Range(1, 256));
    va->add_option("--suite", only, "run only these suites")->check(CLI::Range(1, suite_count))->delimiter(',');
    va->callback([&] {
        const VerifyReport rep = verify_all(vc, only);
        std::cout << rep.str();
        rc = rep.ok() ? Exit::ok : Exit::violation;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::usage;
    } catch (const ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return Exit::cap;
    } catch (const PropertyViolation& e) {
        std::cerr << "property violation: " << e.what() << "\n";
        return Exit::violation;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    }
    return rc;
}
