#include "heightlab/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "heightlab/dynamics.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/heights.hpp"

namespace heightlab {

bool ScenarioResult::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ScenarioCheck& c) { return c.ok; });
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string opt_str(const std::optional<long>& x) { return x ? std::to_string(*x) : std::string(); }

std::string err_str(double e) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", e);
    return buf;
}

std::string interval_decimal(const Interval& x, int digits) { return x.mid().str(digits); }

// Runs fn(i) for i in [0, n), concurrently in batches of `jobs` when jobs > 1.
template <typename T>
std::vector<T> run_rows(std::size_t n, unsigned jobs, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out;
    out.reserve(n);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
        return out;
    }
    for (std::size_t start = 0; start < n; start += jobs) {
        std::vector<std::future<T>> batch;
        for (std::size_t i = start; i < std::min(n, start + jobs); ++i) batch.push_back(std::async(std::launch::async, fn, i));
        for (auto& f : batch) out.push_back(f.get());
    }
    return out;
}

Integer pow_int(unsigned long base, unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

}  // namespace

std::string to_csv(const ScenarioResult& r) {
    std::ostringstream os;
    os << csv_header << "\n";
    for (const auto& row : r.rows) {
        os << csv_field(row.scenario) << ',' << csv_field(row.N) << ',' << opt_str(row.degree) << ','
           << opt_str(row.n_factors) << ',' << opt_str(row.min_factor_deg) << ',' << opt_str(row.max_factor_deg) << ','
           << csv_field(row.max_root_height) << ',' << csv_field(row.height_err_bound) << ',' << csv_field(row.hpol)
           << ',' << csv_field(row.hpol_over_dN) << ',' << csv_field(row.verdict) << "\n";
    }
    return os.str();
}

std::string to_json(const ScenarioResult& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["scenario"] = r.id;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    ordered_json rows = ordered_json::array();
    auto opt = [](const std::optional<long>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); };
    for (const auto& row : r.rows) {
        ordered_json o;
        o["scenario"] = row.scenario;
        o["N"] = row.N;
        o["degree"] = opt(row.degree);
        o["n_factors"] = opt(row.n_factors);
        o["min_factor_deg"] = opt(row.min_factor_deg);
        o["max_factor_deg"] = opt(row.max_factor_deg);
        o["max_root_height"] = row.max_root_height;
        o["height_err_bound"] = row.height_err_bound;
        o["hpol"] = row.hpol;
        o["hpol_over_dN"] = row.hpol_over_dN;
        o["verdict"] = row.verdict;
        rows.push_back(o);
    }
    j["rows"] = rows;
    ordered_json summary = ordered_json::object();
    for (const auto& [k, v] : r.summary) summary[k] = v;
    j["summary"] = summary;
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    j["checks"] = checks;
    j["warnings"] = r.warnings;
    j["ok"] = r.ok();
    return j.dump(2) + "\n";
}

// --- z^2 + t ------------------------------------------------------------------------------------

ScenarioResult scenario_quadratic(const Rational& a, const Rational& b, const ScenarioOptions& opt) {
    if (a == b) throw std::invalid_argument("a = b: f^N(a) - f^N(b) is identically zero");
    if (opt.maxN < 2) throw std::invalid_argument("scenario quadratic needs maxN >= 2");
    const mpfr_prec_t prec = bits_for_digits(opt.digits);
    ScenarioResult res;
    res.id = "quadratic";
    res.params = {{"map", "z^2 + t"}, {"a", to_string(a)}, {"b", to_string(b)}, {"maxN", std::to_string(opt.maxN)}};

    const Family f = Family::power_plus_t(2);
    std::vector<UniPoly> A{UniPoly::constant(a, Var::t)}, B{UniPoly::constant(b, Var::t)};
    for (unsigned N = 1; N <= opt.maxN; ++N) {
        A.push_back(f.apply(A.back()));
        B.push_back(f.apply(B.back()));
    }

    if (a * a == b * b) {
        res.warnings.push_back("a^2 = b^2: f^N(a) = f^N(b) for every N >= 1 and the exceptional set is all of Qbar");
        for (unsigned N = 2; N <= opt.maxN; ++N) {
            ScenarioRow row;
            row.scenario = res.id;
            row.N = std::to_string(N);
            row.verdict = "undefined: f^N(a) - f^N(b) = 0";
            res.rows.push_back(row);
        }
        return res;
    }

    struct RowData {
        ScenarioRow row;
        std::optional<HeightValue> max_height;
        Interval hpol_D_scaled;
    };
    const auto rows = run_rows<RowData>(opt.maxN - 1, opt.jobs, [&](std::size_t idx) {
        const unsigned N = static_cast<unsigned>(idx + 2);
        const UniPoly D = A[N] - B[N];
        const UniPoly Dprev = A[N - 1] - B[N - 1];
        const UniPoly Q = D.exact_div(Dprev);  // PropertyViolation on a remainder
        RowData out{{}, std::nullopt, Interval(prec)};
        ScenarioRow& row = out.row;
        row.scenario = "quadratic";
        row.N = std::to_string(N);
        row.degree = Q.degree();
        const auto table = roots_height_table(Q, prec, opt.degree_cap);
        long lo = 0, hi = 0;
        for (const auto& t : table) {
            lo = lo == 0 ? t.degree : std::min<long>(lo, t.degree);
            hi = std::max<long>(hi, t.degree);
            if (!out.max_height || out.max_height->enclosure().mid().cmp(t.height.enclosure().mid()) < 0)
                out.max_height = t.height;
        }
        row.n_factors = static_cast<long>(table.size());
        row.min_factor_deg = lo;
        row.max_factor_deg = hi;
        if (out.max_height) {
            row.max_root_height = out.max_height->decimal(opt.digits);
            row.height_err_bound = err_str(out.max_height->error_bound());
        }
        const HeightValue hq = hpol(Q, prec);
        row.hpol = hq.decimal(opt.digits);
        const Integer dN = Integer(1) << N;
        row.hpol_over_dN = interval_decimal(hq.enclosure() * make_rational(1, dN), opt.digits);
        row.verdict = table.size() == 1 && table[0].multiplicity == 1 ? "exact division; Q_N irreducible"
                                                                       : "exact division";
        out.hpol_D_scaled = hpol(D, prec).enclosure() * make_rational(1, dN);
        return out;
    });

    bool deg_ok = true;
    std::string deg_detail;
    for (unsigned N = 1; N <= opt.maxN; ++N) {
        const long want = 1L << (N - 1);
        const long dD = (A[N] - B[N]).degree();
        if (A[N].degree() != want || B[N].degree() != want || dD != want - 1) {
            deg_ok = false;
            deg_detail += "N=" + std::to_string(N) + " ";
        }
    }
    res.checks.push_back({"exact division of f^N(a)-f^N(b) by f^(N-1)(a)-f^(N-1)(b)", true,
                          "N = 2.." + std::to_string(opt.maxN)});
    res.checks.push_back({"deg f^N(a) = deg f^N(b) = 2^(N-1), deg of the difference = 2^(N-1)-1", deg_ok,
                          deg_ok ? "all N" : "fails at " + deg_detail});

    std::optional<Interval> max3, max_all;
    Interval cD(prec);
    bool first = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        res.rows.push_back(rows[i].row);
        const unsigned N = static_cast<unsigned>(i + 2);
        if (rows[i].max_height) {
            const Interval& h = rows[i].max_height->enclosure();
            max_all = max_all ? max_all->max(h) : h;
            if (N <= 3) max3 = max3 ? max3->max(h) : h;
        }
        cD = first ? rows[i].hpol_D_scaled : cD.max(rows[i].hpol_D_scaled);
        first = false;
    }
    if (max3 && max_all) {
        res.summary.emplace_back("max_root_height_N_le_3", interval_decimal(*max3, opt.digits));
        res.summary.emplace_back("max_root_height_all_N", interval_decimal(*max_all, opt.digits));
        const bool growth = max_all->certainly_le(*max3 * Rational(3));
        res.checks.push_back({"max root height over N <= maxN within 3x of N <= 3", growth,
                              interval_decimal(*max_all, 12) + " vs 3 * " + interval_decimal(*max3, 12)});
    }
    // constant c with hpol(f^N(a) - f^N(b)) / 2^N <= c, reported rounded up
    BigFloat c(prec);
    mpfr_set(c.get(), cD.hi().get(), MPFR_RNDU);
    res.summary.emplace_back("hpol_diff_over_2N_bound", c.str(8));
    bool bounded = true;
    for (const auto& r : rows)
        if (r.hpol_D_scaled.hi().cmp(c) > 0) bounded = false;
    res.checks.push_back({"hpol(f^N(a)-f^N(b))/2^N bounded by the reported constant", bounded, "c = " + c.str(8)});
    return res;
}

// --- 3z^2 + 5 versus z^2 -----------------------------------------------------------------------------

ScenarioResult scenario_prop52(const ScenarioOptions& opt) {
    if (opt.maxN < 1) throw std::invalid_argument("scenario prop52 needs maxN >= 1");
    const mpfr_prec_t prec = bits_for_digits(opt.digits);
    ScenarioResult res;
    res.id = "prop52";
    res.params = {{"f", "3*z^2 + 5"}, {"g", "z^2"}, {"a", "t"}, {"b", "t"}, {"maxN", std::to_string(opt.maxN)}};
    const Family f = Family::constant_map(UniPoly(Var::z, {5, 0, 3}));
    const Family g = Family::constant_map(UniPoly(Var::z, {0, 0, 1}));

    struct RowData {
        ScenarioRow row;
        bool lead_ok = false, lead_mod5 = false, const_ok = false, middle_ok = false, eis = false;
        std::optional<bool> root_bound_ok;
        Interval scaled;
    };
    const auto rows = run_rows<RowData>(opt.maxN, opt.jobs, [&](std::size_t idx) {
        const unsigned n = static_cast<unsigned>(idx + 1);
        const UniPoly t = UniPoly::x(Var::t);
        const UniPoly P = iterate_orbit(f, t, n) - iterate_orbit(g, t, n);
        const auto c = P.integer_coeffs();
        RowData out{{}, false, false, false, false, false, std::nullopt, Interval(prec)};
        const long deg = P.degree();
        out.lead_ok = deg == (1L << n) && c.back() == pow_int(3, (1UL << n) - 1) - 1;
        out.lead_mod5 = !mpz_divisible_ui_p(c.back().get_mpz_t(), 5);
        Integer r25;
        mpz_fdiv_r_ui(r25.get_mpz_t(), c.front().get_mpz_t(), 25);
        out.const_ok = r25 == 5;
        out.middle_ok = true;
        for (std::size_t i = 1; i + 1 < c.size(); ++i)
            if (!mpz_divisible_ui_p(c[i].get_mpz_t(), 5)) out.middle_ok = false;
        out.eis = eisenstein(P, 5);

        ScenarioRow& row = out.row;
        row.scenario = "prop52";
        row.N = std::to_string(n);
        row.degree = deg;
        if (out.eis) {
            row.n_factors = 1;
            row.min_factor_deg = deg;
            row.max_factor_deg = deg;
        }
        if (out.eis && static_cast<unsigned long>(deg) <= opt.root_degree_limit) {
            const HeightValue h = mahler_root_height(P, prec);
            const HeightValue bound = root_height_bound(P, static_cast<unsigned>(deg), prec);
            out.root_bound_ok = h.enclosure().certainly_le(bound.enclosure());
            row.max_root_height = h.decimal(opt.digits);
            row.height_err_bound = err_str(h.error_bound());
        }
        const HeightValue hp = hpol(P, prec);
        row.hpol = hp.decimal(opt.digits);
        out.scaled = hp.enclosure() * make_rational(1, Integer(1) << n);
        row.hpol_over_dN = interval_decimal(out.scaled, opt.digits);
        row.verdict = out.eis ? "Eisenstein at 5; irreducible" : "not Eisenstein at 5";
        return out;
    });

    bool lead = true, mod5 = true, cst = true, mid = true, eis = true, roots = true;
    std::optional<Interval> lo, hi;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        res.rows.push_back(r.row);
        lead &= r.lead_ok;
        mod5 &= r.lead_mod5;
        cst &= r.const_ok;
        mid &= r.middle_ok;
        eis &= r.eis;
        if (r.root_bound_ok) roots &= *r.root_bound_ok;
        if (i + 1 >= 3) {
            if (!lo || r.scaled.hi().cmp(lo->hi()) < 0) lo = r.scaled;
            if (!hi || r.scaled.hi().cmp(hi->hi()) > 0) hi = r.scaled;
        }
    }
    res.checks.push_back({"leading coefficient = 3^(2^n-1) - 1", lead, ""});
    res.checks.push_back({"leading coefficient not divisible by 5", mod5, ""});
    res.checks.push_back({"constant coefficient = 5 mod 25", cst, ""});
    res.checks.push_back({"middle coefficients divisible by 5", mid, ""});
    res.checks.push_back({"Eisenstein at 5", eis, "n = 1.." + std::to_string(opt.maxN)});
    res.checks.push_back({"max root height <= root_height_bound(P_n, 2^n)", roots,
                          "degrees <= " + std::to_string(opt.root_degree_limit)});
    if (lo && hi && opt.maxN >= 4) {
        const bool spread = hi->certainly_lt(*lo * Rational(2));
        res.checks.push_back({"hpol(P_n)/2^n for n >= 3 varies by less than a factor 2", spread,
                              "min " + interval_decimal(*lo, 12) + ", max " + interval_decimal(*hi, 12)});
        res.summary.emplace_back("hpol_over_2n_min", interval_decimal(*lo, opt.digits));
        res.summary.emplace_back("hpol_over_2n_max", interval_decimal(*hi, opt.digits));
    }
    return res;
}

// --- Example with z^4 + t and z^8 + t ---------------------------------------------------------------

ScenarioResult scenario_example15(const ScenarioOptions& opt) {
    ScenarioResult res;
    res.id = "example15";
    res.params = {{"f", "z^4 + t"}, {"a", "t + 2017"}, {"g", "z^8 + t"}, {"b", "t^3 + 2018"},
                  {"maxN", std::to_string(opt.maxN)}};
    const Family f = Family::power_plus_t(4);
    const Family g = Family::power_plus_t(8);
    const UniPoly a(Var::t, {2017, 1});
    const UniPoly b(Var::t, {2018, 0, 0, 1});

    const FFHeight hf = ff_canonical_height(f, a);
    const FFHeight hg = ff_canonical_height(g, b);
    res.summary.emplace_back("hhat_f(a)", to_string(hf.value));
    res.summary.emplace_back("hhat_g(b)", to_string(hg.value));
    res.checks.push_back({"hhat_f(a) = 1", hf.status == FFHeightStatus::exact && hf.value == 1, hf.note});
    res.checks.push_back({"hhat_g(b) = 3", hg.status == FFHeightStatus::exact && hg.value == 3, hg.note});

    const Rational ratio = hg.value / hf.value;
    const bool power_of_two = ratio.get_den() == 1 && ratio > 0 && mpz_popcount(ratio.get_num_mpz_t()) == 1;
    res.summary.emplace_back("ratio", to_string(ratio));
    res.checks.push_back({"ratio hhat_g(b)/hhat_f(a) = 3 is not a power of 2", ratio == 3 && !power_of_two, ""});

    const MSetDescription M = mset(4, hf.value, 8, hg.value);
    res.summary.emplace_back("mset", M.str());
    res.checks.push_back({"M-set is empty", M.kind == MSetDescription::Kind::empty, M.str()});

    // degrees: iterated while small, then from the dominance certificate
    bool degrees_ok = true;
    std::vector<Integer> deg_f, deg_g;
    auto add_rows = [&](const char* tag, const Family& map, const UniPoly& start, unsigned long d, unsigned long mult,
                        std::uint64_t iterate_limit, std::vector<Integer>& degs) {
        UniPoly x = start;
        for (unsigned m = 0; m <= opt.maxN; ++m) {
            const Integer expected = mult * pow_int(d, m);
            Integer got;
            std::string how;
            if (expected <= iterate_limit) {
                if (m > 0) x = map.apply(x);
                got = x.degree();
                how = "iterated";
            } else {
                got = expected;  // deg_{m+1} = d deg_m once the top term dominates
                how = "dominance certificate";
            }
            degrees_ok &= got == expected;
            degs.push_back(got);
            ScenarioRow row;
            row.scenario = res.id;
            row.N = std::string(tag) + std::to_string(m);
            row.degree = got.fits_slong_p() ? std::optional<long>(got.get_si()) : std::nullopt;
            row.verdict = "deg = " + expected.get_str() + " (" + how + ")";
            res.rows.push_back(row);
        }
    };
    add_rows("f^m(a) m=", f, a, 4, 1, 256, deg_f);
    add_rows("g^n(b) n=", g, b, 8, 3, 192, deg_g);
    res.checks.push_back({"deg f^m(a) = 4^m and deg g^n(b) = 3*8^n", degrees_ok, ""});
    bool disjoint = true;
    for (const auto& x : deg_f)
        for (const auto& y : deg_g)
            if (x == y) disjoint = false;
    res.checks.push_back({"degrees never coincide, so f^m(a) != g^n(b)", disjoint, ""});
    return res;
}

// --- power maps with multiplicatively independent degrees -----------------------------------------------

ScenarioResult scenario_counterexample(unsigned maxM, unsigned maxN, const ScenarioOptions& opt) {
    const mpfr_prec_t prec = bits_for_digits(opt.digits);
    ScenarioResult res;
    res.id = "counterexample";
    res.params = {{"f", "z^2"}, {"g", "z^3"}, {"a", "t"}, {"b", "2*t"}, {"maxM", std::to_string(maxM)},
                  {"maxN", std::to_string(maxN)}};
    const auto pts = counterexample_points(2, 3, maxM, maxN, prec);
    for (const auto& p : pts) {
        ScenarioRow row;
        row.scenario = res.id;
        row.N = "m" + std::to_string(p.m) + "n" + std::to_string(p.n);
        row.max_root_height = p.height.decimal(opt.digits);
        row.height_err_bound = err_str(p.height.error_bound());
        row.verdict = "t = 2^(" + to_string(p.exponent) + ")";
        res.rows.push_back(row);
    }
    if (!pts.empty()) {
        const auto& top = pts.front();
        res.summary.emplace_back("max_height", top.height.decimal(opt.digits));
        res.summary.emplace_back("max_height_over_log2", to_string(abs(top.exponent)));
        res.summary.emplace_back("argmax", "m=" + std::to_string(top.m) + " n=" + std::to_string(top.n));
        const bool witness = abs(top.exponent) > 100;
        res.checks.push_back({"some height exceeds 100 log 2 (unboundedness witness)", witness,
                              "max |exponent| = " + to_string(abs(top.exponent)) + " at m=" + std::to_string(top.m) +
                                  " n=" + std::to_string(top.n)});
    }
    return res;
}

}  // namespace heightlab
