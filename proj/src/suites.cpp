#include <random>

#include "polyrep/reports.hpp"

namespace polyrep {

namespace {

using Rng = std::mt19937_64;

long pick(Rng& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

template <class T>
T pick(Rng& g, const std::vector<T>& v) {
    return v[static_cast<size_t>(pick(g, 0, static_cast<long>(v.size()) - 1))];
}

// odd entries with odd squarefree product
Quad random_alpha(Rng& g) {
    static const std::vector<long> pool{1, 1, 1, 1, 3, 5, 7, 11, 13, 15, 21};
    for (;;) {
        Quad a{pick(g, pool), pick(g, pool), pick(g, pool), pick(g, pool)};
        Integer prod = Integer(a[0]) * a[1] * a[2] * a[3];
        if (is_squarefree(prod)) return a;
    }
}

bool divides(long p, long v) { return v % p == 0; }

struct Tally {
    long pass = 0, fail = 0, skipped = 0;
    Json json() const { return {{"passed", pass}, {"failed", fail}, {"skipped", skipped}}; }
};

void finish(ReportEnvelope& env, const std::map<std::string, Tally>& t) {
    long pass = 0, fail = 0;
    Json parts = Json::object();
    for (auto& [k, v] : t) {
        parts[k] = v.json();
        pass += v.pass;
        fail += v.fail;
    }
    env.summary = {{"passed", pass}, {"failed", fail}, {"all_pass", fail == 0}, {"parts", parts}};
    env.exit_code = fail == 0 ? kExitOk : kExitFailed;
}

// ---- density-oracle

struct DensityCase {
    std::string method;
    unsigned long p;
    long m;
    Quad alpha, d;
    long n;
};

DensityCase draw_density_case(Rng& g, const std::string& method) {
    DensityCase c;
    c.method = method;
    c.alpha = random_alpha(g);
    c.n = pick(g, 1, 400);
    if (method == "closed2") {
        c.p = 2;
        c.m = 2 * pick(g, 2, 12) + 1;
        c.d = {1, 1, 1, 1};
        // at most two factors of 2 in prod(d) keeps the oracle depth small
        for (int k = pick(g, 0, 2); k > 0; --k) c.d[pick(g, 0, 3)] *= 2;
        for (auto& dj : c.d)
            if (pick(g, 0, 3) == 0) dj *= pick(g, std::vector<long>{3, 5, 7});
    } else if (method == "closedDiv") {
        c.p = pick(g, std::vector<unsigned long>{3, 5, 7});
        long mult = pick(g, 1, c.p == 3 ? 6 : 3);
        c.m = 2 + static_cast<long>(c.p) * mult;
        c.d = {1, 1, 1, 1};
        for (auto& dj : c.d) {
            if (pick(g, 0, 2) == 0) dj *= static_cast<long>(c.p);
            if (pick(g, 0, 3) == 0) dj *= pick(g, std::vector<long>{2, 4, 11});
        }
    } else {
        do {
            c.p = pick(g, std::vector<unsigned long>{3, 3, 5, 5, 7, 11, 13});
            c.m = pick(g, 3, 40);
        } while (divides(static_cast<long>(c.p), c.m - 2));
        c.d = {1, 1, 1, 1};
        if (c.p <= 7)
            for (auto& dj : c.d)
                if (pick(g, 0, 2) == 0) dj *= static_cast<long>(c.p) * (pick(g, 0, 3) == 0 ? static_cast<long>(c.p) : 1);
        for (auto& dj : c.d)
            if (pick(g, 0, 3) == 0) dj *= pick(g, std::vector<long>{2, 3, 5, 7});
    }
    return c;
}

ReportEnvelope suite_density_oracle(const RunConfig& cfg) {
    ReportEnvelope env;
    long cases = cfg.integer("cases", 100);
    if (cases < 1) throw UsageError("--cases must be >= 1");
    Rng g(cfg.seed());
    OracleOptions opt;
    opt.max_depth = static_cast<int>(cfg.integer("oracle-max-depth", 24));
    opt.max_modulus = cfg.integer("oracle-max-modulus", opt.max_modulus);
    opt.work_budget = static_cast<double>(cfg.real("oracle-budget", Real(opt.work_budget)));
    opt.threads = cfg.threads() > 0 ? cfg.threads() : 1;
    std::map<std::string, Tally> tally;
    long proof_disagree = 0;
    for (std::string method : {"closed2", "closedDiv", "kane"}) {
        auto& t = tally[method];
        long attempts = 0;
        while (t.pass + t.fail < cases) {
            if (++attempts > 50 * cases) throw BudgetExceeded("too many oracle cases over budget for " + method);
            auto c = draw_density_case(g, method);
            ProblemInstance inst{PolygonalFamily(c.m), CoefficientVector(c.alpha), Integer(c.n)};
            Rational closed;
            if (method == "closed2") closed = density_at_2(inst, c.d).value;
            else if (method == "closedDiv") closed = density_at_divisor_prime(inst, c.d, c.p).value;
            else {
                auto q = quadratic_data(inst, c.d);
                auto kd = kane_data(c.p, q);
                // zero completed target with empty D_p: the oracle only converges in the limit
                if (kd.nn == 0 && kd.t_d == kInfiniteOrd) {
                    ++t.skipped;
                    continue;
                }
                closed = density_kane(c.p, q).value;
            }
            OracleResult o;
            try {
                o = density_oracle_stable(c.p, inst, c.d, opt);
            } catch (const BudgetExceeded&) {
                ++t.skipped;
                continue;
            }
            bool ok = o.stable && o.value == closed;
            (ok ? t.pass : t.fail)++;
            Json r{{"method", method}, {"p", c.p}, {"m", c.m}, {"alpha", jquad(c.alpha)}, {"d", jquad(c.d)},
                   {"n", c.n}, {"closed", rstr(closed)}, {"oracle", rstr(o.value)}, {"depth", o.depth},
                   {"pass", ok}};
            if (method == "closedDiv") {
                auto pv = density_at_divisor_prime(inst, c.d, c.p, DivisorCondition::proof_display).value;
                r["proof_display_value"] = rstr(pv);
                if (pv != o.value) ++proof_disagree;
            }
            env.records.push_back(r);
        }
    }
    finish(env, tally);
    env.summary["proof_display_disagreements"] = proof_disagree;
    return env;
}

// ---- beta-bounds

std::vector<long> good_primes_for(long m, const Quad& alpha, bool want_alpha) {
    std::vector<long> out;
    Integer prod = Integer(alpha[0]) * alpha[1] * alpha[2] * alpha[3];
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
        if (divides(p, m - 2) || divides(p, m - 4)) continue;
        bool pa = mpz_divisible_ui_p(prod.get_mpz_t(), static_cast<unsigned long>(p));
        if (want_alpha ? (pa && p >= 5) : !pa) out.push_back(p);
    }
    return out;
}

ReportEnvelope suite_beta_bounds(const RunConfig& cfg) {
    ReportEnvelope env;
    long cases = cfg.integer("cases", 200);
    if (cases < 1) throw UsageError("--cases must be >= 1");
    Rng g(cfg.seed());
    std::map<std::string, Tally> tally;
    long informational_fail = 0;
    auto record = [&](const std::string& family, Json r, bool ok) {
        Json full{{"family", family}};
        full.update(r);
        full["pass"] = ok;
        env.records.push_back(full);
        (ok ? tally[family].pass : tally[family].fail)++;
    };
    auto draw = [&](bool want_alpha, long& m, Quad& alpha, long& p) {
        for (;;) {
            m = pick(g, 3, 60);
            alpha = random_alpha(g);
            if (want_alpha && alpha == Quad{1, 1, 1, 1}) continue;
            auto ps = good_primes_for(m, alpha, want_alpha);
            if (ps.empty()) continue;
            p = pick(g, ps);
            return;
        }
    };
    // |N_p| case bounds
    for (long i = 0; i < cases; ++i) {
        long m, p;
        Quad alpha;
        draw(false, m, alpha, p);
        Quad d{1, 1, 1, 1};
        while (d == Quad{1, 1, 1, 1})
            for (auto& dj : d)
                if (pick(g, 0, 1)) dj = p;
        for (auto& dj : d)
            if (pick(g, 0, 3) == 0) dj *= pick(g, std::vector<long>{2, 29, 31});
        long n = pick(g, 1, 3000);
        ProblemInstance inst{PolygonalFamily(m), CoefficientVector(alpha), Integer(n)};
        auto v = local_density(inst, d, static_cast<unsigned long>(p)).value;
        auto cb = case_bound(inst, d, static_cast<unsigned long>(p), v);
        record("density-cases", {{"p", p}, {"m", m}, {"alpha", jquad(alpha)}, {"d", jquad(d)}, {"n", n},
                                 {"value", rstr(v)}, {"size_N", cb.size_N},
                                 {"bound", Json::array({Json(rstr(cb.lo)), Json(rstr(cb.hi))})}},
               cb.applicable && cb.holds);
    }
    // beta bounds in both classes, gamma
    for (bool want_alpha : {false, true}) {
        std::string fam = want_alpha ? "beta-alpha-class" : "beta-good-class";
        for (long i = 0; i < cases; ++i) {
            long m, p;
            Quad alpha;
            draw(want_alpha, m, alpha, p);
            // multiples of p exercise the p | n branch
            long n = pick(g, 0, 2) == 0 ? p * pick(g, 1, 300) : pick(g, 1, 3000);
            ProblemInstance inst{PolygonalFamily(m), CoefficientVector(alpha), Integer(n)};
            bool ok = true;
            Json checks = Json::array();
            Json gamma;
            for (auto& b : check_beta_bounds(static_cast<unsigned long>(p), inst)) {
                if (b.informational) {
                    if (!b.holds) ++informational_fail;
                    continue;
                }
                if (b.name.rfind("gamma", 0) == 0) {
                    gamma = Json{{"value", rstr(b.value)}, {"bound", rstr(b.bound)}, {"holds", b.holds}};
                    continue;
                }
                ok = ok && b.holds;
                if (!b.holds) checks.push_back(b.name);
            }
            record(fam, {{"p", p}, {"m", m}, {"alpha", jquad(alpha)}, {"n", n}, {"violations", checks}}, ok);
            if (!want_alpha)
                record("gamma", {{"p", p}, {"m", m}, {"alpha", jquad(alpha)}, {"n", n}, {"gamma", gamma}},
                       gamma.value("holds", false));
        }
    }
    // correlation bound and the w envelope on squarefree d over good primes
    for (long i = 0; i < cases; ++i) {
        long m = pick(g, 3, 60);
        Quad alpha = random_alpha(g);
        auto ps = good_primes_for(m, alpha, false);
        if (ps.size() < 2) {
            --i;
            continue;
        }
        Quad d{1, 1, 1, 1};
        for (auto& dj : d)
            for (long p : ps)
                if (pick(g, 0, 2) == 0 && p <= 13) dj *= p;
        long n = pick(g, 1, 3000);
        ProblemInstance inst{PolygonalFamily(m), CoefficientVector(alpha), Integer(n)};
        Rational gc = g_correlation(d, inst), gb = g_bound(d);
        record("g-bound", {{"m", m}, {"alpha", jquad(alpha)}, {"d", jquad(d)}, {"n", n}, {"g", rstr(gc)},
                           {"bound", rstr(gb)}},
               gc <= gb);
        auto we = check_w_envelope(d, inst);
        record("w-envelope", {{"m", m}, {"alpha", jquad(alpha)}, {"d", jquad(d)}, {"n", n}}, we.holds);
    }
    finish(env, tally);
    env.summary["informational_failures"] = informational_fail;
    return env;
}

// ---- sandwich

Integer random_c(Rng& g) {
    static const auto odd = [] {
        auto ps = primes_up_to(100);
        ps.erase(ps.begin());
        return ps;
    }();
    Integer c = 1;
    std::set<unsigned long> used;
    for (long k = pick(g, 0, 6); k > 0; --k) {
        auto p = pick(g, odd);
        if (used.insert(p).second) c *= p;
    }
    return c;
}

ReportEnvelope suite_sandwich(const RunConfig& cfg) {
    ReportEnvelope env;
    long cases = cfg.integer("cases", 500);
    long desk = cfg.integer("desk-cases", 30);
    if (cases < 0 || desk < 0 || desk > 30) throw UsageError("--cases >= 0 and 0 <= --desk-cases <= 30");
    Rng g(cfg.seed());
    std::map<std::string, Tally> tally;
    for (long i = 0; i < cases; ++i) {
        Rational D(pick(g, 2, 20000), pick(g, 1, 10));
        if (D <= 1) D += 1;
        long bd = pick(g, 1, 4);
        Rational beta(pick(g, bd, 5 * bd), bd);
        beta.canonicalize();
        D.canonicalize();
        std::array<Integer, 4> c{random_c(g), random_c(g), random_c(g), random_c(g)};
        bool ok = true;
        Json single = Json::array();
        for (auto& cj : c) {
            auto s = weight_sandwich_check(cj, D, beta);
            ok = ok && s.holds;
            single.push_back(Json::array({s.sum_minus, s.sum_mu, s.sum_plus}));
        }
        auto q = quad_sandwich_check(c, D, beta);
        ok = ok && q.holds;
        Json cs = Json::array();
        for (auto& cj : c) cs.push_back(jint(cj));
        env.records.push_back({{"part", "weights"}, {"D", rstr(D)}, {"beta", rstr(beta)}, {"c", cs},
                               {"sums", single}, {"quad_lhs", q.lhs}, {"quad_rhs", q.rhs}, {"pass", ok}});
        (ok ? tally["weights"].pass : tally["weights"].fail)++;
    }
    // m = 5, alpha = 1^4, n = 10, 20, ..., 300
    static const std::vector<long> levels{3, 5, 10, 20, 50};
    static const std::vector<Rational> betas{Rational(1), Rational(3, 2), Rational(2), Rational(3)};
    PolygonalFamily fam(5);
    CoefficientVector alpha({1, 1, 1, 1});
    for (long i = 1; i <= desk; ++i) {
        long n = 10 * i;
        ProblemInstance inst(fam, alpha, Integer(n));
        WeightedSieveSpec spec;
        spec.pool = pick(g, 0, 1) ? std::vector<unsigned long>{3, 5, 7} : std::vector<unsigned long>{3, 5, 7, 11};
        spec.D = pick(g, levels);
        spec.beta = pick(g, betas);
        spec.inner.caps = {{2, static_cast<int>(pick(g, 1, 4))}};
        spec.inner.mode = ConstraintMode::sieve_Fc;
        if (pick(g, 0, 2) == 0) spec.inner.P = {13};
        spec.layout = LowerLayout::symmetric;
        auto w = weighted_sieve_sum(inst, spec, cfg.threads());
        auto lit_lo = weighted_sieve_sum_literal(inst, spec, Sign::minus, cfg.threads());
        auto lit_hi = weighted_sieve_sum_literal(inst, spec, Sign::plus, cfg.threads());
        WeightedSieveSpec slot = spec;
        slot.layout = LowerLayout::slot_one;
        auto ws = weighted_sieve_sum(inst, slot, cfg.threads());
        bool ok = w.lower <= w.truth && w.truth <= w.upper && lit_lo == w.lower && lit_hi == w.upper;
        Json r{{"part", "desk"}, {"n", n}, {"h", jint(inst.h)}, {"pool", Json(spec.pool)},
               {"inner_p", Json(std::vector<unsigned long>(spec.inner.P.begin(), spec.inner.P.end()))},
               {"cap2", spec.inner.caps[2]}, {"D", rstr(spec.D)}, {"beta", rstr(spec.beta)},
               {"base", jint(w.base)}, {"lower", jint(w.lower)}, {"truth", jint(w.truth)},
               {"upper", jint(w.upper)}, {"literal_lower", jint(lit_lo)}, {"literal_upper", jint(lit_hi)},
               {"slot_one_lower", jint(ws.lower)}};
        if (spec.inner.P.empty()) {
            r["main_lower"] = to_string(weighted_sieve_main_term(inst, spec, Sign::minus), 12);
            r["main_upper"] = to_string(weighted_sieve_main_term(inst, spec, Sign::plus), 12);
        }
        r["pass"] = ok;
        env.records.push_back(r);
        (ok ? tally["desk"].pass : tally["desk"].fail)++;
    }
    finish(env, tally);
    return env;
}

// ---- decomposition

ReportEnvelope suite_decomposition(const RunConfig& cfg) {
    ReportEnvelope env;
    long m = cfg.integer("m", 5);
    CoefficientVector alpha(cfg.quad("alpha", {1, 1, 1, 1}));
    auto [lo, hi] = cfg.has("n-range") ? cfg.range("n-range") : std::pair<long, long>{1, 2000};
    if (lo < 1 || hi - lo < 3) throw UsageError("--n-range needs n >= 1 and at least four values");
    Real e = to_real(cfg.rational("exponent", Rational(3, 4)));
    Real slack = to_real(cfg.rational("slack", Rational(1, 5)));
    auto rows = decomposition_residual(m, alpha, lo, hi, cfg.threads());
    std::map<std::string, Tally> tally;
    long mid = lo + (hi - lo + 1) / 2;
    Real c_fit = 0, c_top = 0;
    // a_E / h^0.9 should not shrink: smallest value on each half
    Real g_lo = -1, g_hi = -1;
    for (auto& row : rows) {
        Real ratio = abs(row.residual) / pow(to_real(row.h), e);
        Real g = row.a_E / pow(to_real(row.h), Real("0.9"));
        if (row.n < mid) {
            c_fit = std::max(c_fit, ratio);
            g_lo = g_lo < 0 ? g : std::min(g_lo, g);
        } else {
            c_top = std::max(c_top, ratio);
            g_hi = g_hi < 0 ? g : std::min(g_hi, g);
        }
        bool pos = row.r > 0 && row.a_E > 0;
        (pos ? tally["positivity"].pass : tally["positivity"].fail)++;
        env.records.push_back({{"n", jint(row.n)}, {"h", jint(row.h)}, {"r", jint(row.r)},
                               {"a_E", to_string(row.a_E, env.digits)},
                               {"residual", to_string(row.residual, env.digits)},
                               {"ratio", to_string(ratio, 12)}, {"positive", pos}});
    }
    bool trend = c_top <= c_fit * (1 + slack);
    (trend ? tally["trend"].pass : tally["trend"].fail)++;
    bool growth = g_hi >= g_lo;
    (growth ? tally["growth"].pass : tally["growth"].fail)++;
    finish(env, tally);
    env.summary["aE_over_h09_min_first_half"] = to_string(g_lo, 12);
    env.summary["aE_over_h09_min_top_half"] = to_string(g_hi, 12);
    env.summary["C_fit_first_half"] = to_string(c_fit, 12);
    env.summary["C_top_half"] = to_string(c_top, 12);
    env.summary["slack"] = to_string(slack, 6);
    return env;
}

// ---- theorem-gate

ReportEnvelope suite_theorem_gate(const RunConfig& cfg) {
    ReportEnvelope env;
    Rational theta = cfg.rational("theta", Rational(1, 2000));
    Real s = cfg.real("s", 38);
    std::map<std::string, Tally> tally;
    auto gate = theta_gate(theta);
    bool ok = gate.arithmetic_gate && gate.hypothesis_gate;
    env.records.push_back({{"check", "theta"}, {"theta", rstr(theta)},
                           {"988_theta_plus_half", rstr(988 * theta + Rational(1, 2))},
                           {"arithmetic_gate", gate.arithmetic_gate}, {"hypothesis_gate", gate.hypothesis_gate},
                           {"pass", ok}});
    (ok ? tally["theta"].pass : tally["theta"].fail)++;
    // the arithmetic gate flips exactly at 1/1976; reported, not scored
    auto b = theta_gate(Rational(1, 1976));
    auto below = theta_gate(Rational(1, 1976) - Rational(1, 1000000000));
    env.records.push_back({{"check", "boundary"}, {"theta", "1/1976"},
                           {"988_theta_plus_half", rstr(988 * Rational(1, 1976) + Rational(1, 2))},
                           {"arithmetic_gate_at", b.arithmetic_gate},
                           {"arithmetic_gate_just_below", below.arithmetic_gate},
                           {"hypothesis_gate_at", b.hypothesis_gate}});
    Real sg = s_gate(s);
    bool sok = sg > 0;
    env.records.push_back({{"check", "s_gate"}, {"s", to_string(s, env.digits)},
                           {"value", to_string(sg, env.digits)}, {"pass", sok}});
    (sok ? tally["s_gate"].pass : tally["s_gate"].fail)++;
    finish(env, tally);
    return env;
}

}  // namespace

ReportEnvelope run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "density-oracle") return suite_density_oracle(cfg);
    if (name == "beta-bounds") return suite_beta_bounds(cfg);
    if (name == "sandwich") return suite_sandwich(cfg);
    if (name == "decomposition") return suite_decomposition(cfg);
    if (name == "theorem-gate") return suite_theorem_gate(cfg);
    throw UsageError("unknown suite '" + name +
                     "' (density-oracle, beta-bounds, sandwich, decomposition, theorem-gate)");
}

}  // namespace polyrep
