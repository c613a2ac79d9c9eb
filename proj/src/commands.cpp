#include <algorithm>

#include "polyrep/reports.hpp"

namespace polyrep {

namespace {

using Keys = std::vector<std::string>;

const Keys kCommon{"format", "output", "digits", "threads"};
const Keys kOracle{"oracle-max-depth", "oracle-max-modulus", "oracle-budget"};

Keys with(Keys a, const Keys& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

const std::map<std::string, Keys>& key_table() {
    static const std::map<std::string, Keys> t = [] {
        std::map<std::string, Keys> t;
        t["poly eval"] = {"m", "x"};
        t["repr count"] = {"m", "alpha", "n", "n-range", "d", "list"};
        t["density"] = with({"p", "m", "alpha", "n", "d", "method", "depth", "variant"}, kOracle);
        t["eisenstein"] = with({"m", "alpha", "n", "d", "source", "extra-primes"}, kOracle);
        t["betas"] = {"p", "m", "alpha", "n", "d"};
        t["sieve weights"] = {"pool", "D", "beta"};
        t["sieve sums"] = {"m", "alpha", "n", "n-range", "ell", "inner-p", "caps", "pool", "D", "beta",
                           "layout", "source", "zero-divisible"};
        t["sieve w"] = {"m", "alpha", "n", "n-range", "z0", "caps"};
        t["sieve m"] = {"m", "alpha", "n", "pool", "z0", "D", "beta", "layout", "budget"};
        t["sieve driver"] = {"m", "alpha", "n-range", "theta", "s", "z", "eps", "c-err", "B", "C",
                             "factor-bound", "allow-zero", "omega-mode"};
        t["witness"] = {"m", "alpha", "n", "n-range", "omega-bound", "exclude", "exclude-upto", "allow-zero",
                        "omega-mode", "list"};
        t["residuals"] = {"m", "alpha", "n-range", "exponent"};
        t["threshold"] = {"m", "alpha", "grid", "eps", "C", "n"};
        t["suite density-oracle"] = with({"cases", "seed"}, kOracle);
        t["suite beta-bounds"] = {"cases", "seed"};
        t["suite sandwich"] = {"cases", "desk-cases", "seed"};
        t["suite decomposition"] = {"m", "alpha", "n-range", "exponent", "slack"};
        t["suite theorem-gate"] = {"theta", "s"};
        for (auto& [k, v] : t) v.insert(v.end(), kCommon.begin(), kCommon.end());
        return t;
    }();
    return t;
}

struct Problem {
    PolygonalFamily fam;
    CoefficientVector alpha;
    long n_lo, n_hi;
};

Problem problem(const RunConfig& cfg, bool need_n = true) {
    Problem pr{PolygonalFamily(cfg.integer("m", 5)), CoefficientVector(cfg.quad("alpha", {1, 1, 1, 1})), 0, 0};
    if (cfg.has("n-range")) {
        std::tie(pr.n_lo, pr.n_hi) = cfg.range("n-range");
    } else if (cfg.has("n")) {
        Integer n = cfg.big("n", 0);
        if (n < 0) throw UsageError("--n must be >= 0");
        if (!mpz_fits_slong_p(n.get_mpz_t())) throw BudgetExceeded("--n beyond 64 bits");
        pr.n_lo = pr.n_hi = n.get_si();
    } else if (need_n) {
        throw UsageError("give --n or --n-range");
    }
    return pr;
}

ProblemInstance single(const RunConfig& cfg) {
    if (cfg.has("n-range")) throw UsageError("this command takes a single --n");
    auto pr = problem(cfg);
    return ProblemInstance(pr.fam, pr.alpha, cfg.big("n", 0));
}

OracleOptions oracle_opts(const RunConfig& cfg) {
    OracleOptions o;
    o.max_depth = static_cast<int>(cfg.integer("oracle-max-depth", o.max_depth));
    o.max_modulus = cfg.integer("oracle-max-modulus", o.max_modulus);
    o.work_budget = static_cast<double>(cfg.real("oracle-budget", Real(o.work_budget)));
    o.threads = cfg.threads() > 0 ? cfg.threads() : 1;
    return o;
}

Json sols_json(const std::vector<Quad>& s) {
    Json a = Json::array();
    for (auto& q : s) a.push_back(jquad(q));
    return a;
}

Json primes_json(const std::vector<unsigned long>& ps) {
    Json a = Json::array();
    for (auto p : ps) a.push_back(p);
    return a;
}

std::string pct(std::size_t a, std::size_t b) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", b ? 100.0 * double(a) / double(b) : 0.0);
    return buf;
}

FactorCountMode omega_mode(const RunConfig& cfg) {
    auto s = cfg.str("omega-mode", "multiplicity");
    if (s == "multiplicity" || s == "Omega") return FactorCountMode::with_multiplicity;
    if (s == "distinct" || s == "omega") return FactorCountMode::distinct;
    throw UsageError("--omega-mode: expected multiplicity or distinct, got '" + s + "'");
}

LowerLayout layout(const RunConfig& cfg, const std::string& def) {
    auto s = cfg.str("layout", def);
    if (s == "symmetric") return LowerLayout::symmetric;
    if (s == "slot1" || s == "slot-one") return LowerLayout::slot_one;
    throw UsageError("--layout: expected symmetric or slot1, got '" + s + "'");
}

void cmd_poly_eval(const RunConfig& cfg, ReportEnvelope& env) {
    PolygonalFamily f(cfg.integer("m", 5));
    if (!cfg.has("x")) throw UsageError("give --x");
    Integer x = cfg.big("x", 0);
    env.records.push_back({{"m", f.m}, {"x", jint(x)}, {"value", jint(eval_polygonal(f, x))}});
}

void cmd_repr_count(const RunConfig& cfg, ReportEnvelope& env) {
    auto pr = problem(cfg);
    Quad d = cfg.quad("d", {1, 1, 1, 1});
    bool list = cfg.flag("list", false);
    for (long n = pr.n_lo; n <= pr.n_hi; ++n) {
        ProblemInstance inst(pr.fam, pr.alpha, Integer(n));
        auto rs = count_representations(inst, d, cfg.threads(), list);
        Json r{{"n", n}, {"h", jint(inst.h)}, {"d", jquad(d)}, {"count", jint(rs.count)}};
        if (list) r["solutions"] = sols_json(rs.solutions);
        env.records.push_back(r);
    }
}

void cmd_density(const RunConfig& cfg, ReportEnvelope& env) {
    auto inst = single(cfg);
    if (!cfg.has("p")) throw UsageError("give --p");
    long pl = cfg.integer("p", 0);
    if (pl < 2 || !is_prime(Integer(pl))) throw UsageError("--p must be prime");
    unsigned long p = static_cast<unsigned long>(pl);
    Quad d = cfg.quad("d", {1, 1, 1, 1});
    for (auto dj : d)
        if (dj <= 0) throw UsageError("--d entries must be positive");
    auto method = cfg.str("method", "auto");
    auto variant = cfg.str("variant", "default");
    Json r{{"p", p}, {"m", inst.m()}, {"alpha", jquad(inst.alpha.a)}, {"n", jint(inst.n)}, {"h", jint(inst.h)},
           {"d", jquad(d)}};
    Rational v;
    if (method == "oracle") {
        auto opt = oracle_opts(cfg);
        OracleResult o = cfg.has("depth") ? density_oracle(p, inst, d, static_cast<int>(cfg.integer("depth", 2)), opt)
                                          : density_oracle_stable(p, inst, d, opt);
        v = o.value;
        r["method"] = "oracle";
        r["depth"] = o.depth;
        r["stable"] = o.stable;
    } else if (method == "kane") {
        if (p == 2) throw UsageError("the Kane formula needs an odd prime");
        v = density_kane(p, quadratic_data(inst, d)).value;
        r["method"] = "kane";
    } else if (method == "closed") {
        if (p == 2) {
            if (variant != "default" && variant != "corrected" && variant != "as-stated")
                throw UsageError("--variant at p = 2: corrected or as-stated");
            v = density_at_2(inst, d, variant == "as-stated" ? Dyadic::as_stated : Dyadic::corrected).value;
            r["method"] = "closed2";
        } else {
            if (variant != "default" && variant != "statement" && variant != "proof")
                throw UsageError("--variant at odd p | m-2: statement or proof");
            v = density_at_divisor_prime(inst, d, p,
                                         variant == "proof" ? DivisorCondition::proof_display
                                                            : DivisorCondition::statement)
                    .value;
            r["method"] = "closedDiv";
        }
        r["variant"] = variant == "default" ? (p == 2 ? "corrected" : "statement") : variant;
    } else if (method == "auto") {
        auto ld = local_density(inst, d, p);
        v = ld.value;
        r["method"] = to_string(ld.method);
    } else {
        throw UsageError("--method: expected auto, closed, kane or oracle, got '" + method + "'");
    }
    r["value"] = rstr(v);
    if (p != 2 && r["method"] != "oracle") {
        auto cb = case_bound(inst, d, p, v);
        if (cb.applicable) {
            r["case_size_N"] = cb.size_N;
            r["case_bound"] = Json::array({rstr(cb.lo), rstr(cb.hi)});
            r["case_bound_holds"] = cb.holds;
        }
    }
    env.records.push_back(r);
    if (v == 0) {
        env.summary["obstruction"] = "local density vanishes at p = " + std::to_string(p);
        env.exit_code = kExitObstruction;
    }
}

Json eisenstein_json(const EisensteinCoefficient& ec, int digits) {
    Json locals = Json::array();
    for (auto& ld : ec.locals) locals.push_back({{"p", ld.p}, {"value", rstr(ld.value)}, {"method", to_string(ld.method)}});
    return {{"h", jint(ec.h)},
            {"d", jquad(ec.d)},
            {"S", primes_json(ec.S)},
            {"locals", locals},
            {"disc", jint(ec.disc)},
            {"rational_part", rstr(ec.rational_part)},
            {"transcendental", to_string(ec.transcendental, digits)},
            {"value", to_string(ec.value, digits)}};
}

void cmd_eisenstein(const RunConfig& cfg, ReportEnvelope& env) {
    auto inst = single(cfg);
    AssembleOptions ao;
    auto src = cfg.str("source", "closed");
    if (src == "oracle") ao.source = DensitySource::oracle;
    else if (src != "closed") throw UsageError("--source: expected closed or oracle, got '" + src + "'");
    ao.extra_primes = cfg.primes("extra-primes");
    ao.oracle = oracle_opts(cfg);
    auto ec = assemble_eisenstein(inst, cfg.quad("d", {1, 1, 1, 1}), ao);
    Json r{{"n", jint(inst.n)}, {"source", to_string(ao.source)}};
    r.update(eisenstein_json(ec, env.digits));
    env.records.push_back(r);
    if (ec.obstruction_prime) {
        env.summary["obstruction"] = "local density vanishes at p = " + std::to_string(ec.obstruction_prime);
        env.exit_code = kExitObstruction;
    }
}

void push_check(ReportEnvelope& env, const BoundCheck& b, long& pass, long& fail) {
    env.records.push_back({{"check", b.name}, {"value", rstr(b.value)}, {"bound", rstr(b.bound)},
                           {"holds", b.holds}, {"informational", b.informational}});
    if (b.informational) return;
    (b.holds ? pass : fail)++;
}

void cmd_betas(const RunConfig& cfg, ReportEnvelope& env) {
    auto inst = single(cfg);
    long pl = cfg.integer("p", 0);
    if (pl < 3 || !is_prime(Integer(pl))) throw UsageError("--p must be an odd prime");
    long pass = 0, fail = 0;
    for (auto& b : check_beta_bounds(static_cast<unsigned long>(pl), inst)) push_check(env, b, pass, fail);
    if (cfg.has("d")) {
        Quad d = cfg.quad("d", {});
        push_check(env, check_w_envelope(d, inst), pass, fail);
        Rational g = g_correlation(d, inst), gb = g_bound(d);
        push_check(env, {"g(d) <= 4^4 prod gcd^2", g, gb, g <= gb}, pass, fail);
    }
    env.summary = {{"passed", pass}, {"failed", fail}};
    if (fail) env.exit_code = kExitFailed;
}

void cmd_sieve_weights(const RunConfig& cfg, ReportEnvelope& env) {
    auto pool = cfg.primes("pool");
    Rational D = cfg.rational("D", 100), beta = cfg.rational("beta", 2);
    if (pool.size() > kPoolCap) throw BudgetExceeded("pool capped at 12 primes");
    auto t = weight_table(pool, D, beta);
    std::set<Integer> ds;
    for (auto& [d, w] : t.plus) ds.insert(d);
    for (auto& [d, w] : t.minus) ds.insert(d);
    unsigned long a = beta.get_num().get_ui(), b = beta.get_den().get_ui();
    long over_cap = 0;
    for (auto& d : ds) {
        // d < D^{(1+beta)/beta}  <=>  d^a < D^{a+b}
        bool below = Rational(ipow(d, a)) < rpow(D, static_cast<int>(a + b));
        if (!below) ++over_cap;
        env.records.push_back({{"d", jint(d)},
                               {"lambda_plus", t.lambda(d, Sign::plus)},
                               {"lambda_minus", t.lambda(d, Sign::minus)},
                               {"Lambda_minus", t.cap_minus(d)},
                               {"below_support_cap", below}});
    }
    env.summary = {{"support", ds.size()}, {"plus_support", t.plus.size()}, {"minus_support", t.minus.size()},
                   {"above_cap", over_cap}};
}

void cmd_sieve_sums(const RunConfig& cfg, ReportEnvelope& env) {
    auto pr = problem(cfg);
    WeightedSieveSpec spec;
    spec.ell = cfg.quad("ell", {1, 1, 1, 1});
    auto ip = cfg.primes("inner-p");
    spec.inner.P = std::set<unsigned long>(ip.begin(), ip.end());
    spec.inner.caps = cfg.caps("caps");
    spec.inner.mode = spec.inner.caps.empty() ? ConstraintMode::sieve_F : ConstraintMode::sieve_Fc;
    spec.inner.zero_divisible = cfg.flag("zero-divisible", true);
    spec.inner.validate(pr.alpha);
    spec.pool = cfg.primes("pool");
    spec.D = cfg.rational("D", 100);
    spec.beta = cfg.rational("beta", 2);
    spec.layout = layout(cfg, "symmetric");
    auto src = cfg.str("source", "enum");
    if (src != "enum" && src != "main" && src != "both" && src != "literal")
        throw UsageError("--source: expected enum, literal, main or both, got '" + src + "'");
    long pass = 0, fail = 0;
    for (long n = pr.n_lo; n <= pr.n_hi; ++n) {
        ProblemInstance inst(pr.fam, pr.alpha, Integer(n));
        Json r{{"n", n}, {"h", jint(inst.h)}};
        if (src != "main") {
            auto w = weighted_sieve_sum(inst, spec, cfg.threads());
            bool ok = w.lower <= w.truth && w.truth <= w.upper;
            r["base"] = jint(w.base);
            r["lower"] = jint(w.lower);
            r["truth"] = jint(w.truth);
            r["upper"] = jint(w.upper);
            if (src == "literal") {
                auto ll = weighted_sieve_sum_literal(inst, spec, Sign::minus, cfg.threads());
                auto lu = weighted_sieve_sum_literal(inst, spec, Sign::plus, cfg.threads());
                r["literal_lower"] = jint(ll);
                r["literal_upper"] = jint(lu);
                ok = ok && ll == w.lower && lu == w.upper;
            }
            r["holds"] = ok;
            (ok ? pass : fail)++;
        }
        if (src == "main" || src == "both") {
            r["main_lower"] = to_string(weighted_sieve_main_term(inst, spec, Sign::minus), env.digits);
            r["main_upper"] = to_string(weighted_sieve_main_term(inst, spec, Sign::plus), env.digits);
        }
        env.records.push_back(r);
    }
    env.summary = {{"passed", pass}, {"failed", fail}};
    if (fail) env.exit_code = kExitFailed;
}

void cmd_sieve_w(const RunConfig& cfg, ReportEnvelope& env) {
    auto pr = problem(cfg);
    Rational z0 = cfg.rational("z0", 10);
    auto caps = cfg.caps("caps");
    if (caps.empty())
        for (auto p : prime_divisors(2 * pr.alpha.product())) caps[p] = 1;
    long positive = 0;
    for (long n = pr.n_lo; n <= pr.n_hi; ++n) {
        ProblemInstance inst(pr.fam, pr.alpha, Integer(n));
        auto w = main_term_W(inst, z0, caps);
        Real lz = log(to_real(z0));
        Json r{{"n", n}, {"h", jint(inst.h)}, {"pool", primes_json(w.pool)}, {"prod_C", rstr(w.prod_C)},
               {"sieve_product", rstr(w.sieve_product)}, {"W", rstr(w.W)},
               {"W_log_z0_cubed", to_string(to_real(w.W) * lz * lz * lz, env.digits)}};
        if (!w.diagnostic.empty()) r["diagnostic"] = w.diagnostic;
        if (w.W > 0) ++positive;
        env.records.push_back(r);
    }
    env.summary = {{"positive", positive}, {"total", pr.n_hi - pr.n_lo + 1}};
}

void cmd_sieve_m(const RunConfig& cfg, ReportEnvelope& env) {
    auto inst = single(cfg);
    std::vector<unsigned long> pool;
    if (cfg.has("pool")) pool = cfg.primes("pool");
    else pool = sieve_pool(inst.alpha, cfg.rational("z0", 10));
    MSumOptions mo;
    mo.D = cfg.rational("D", 100);
    mo.beta = cfg.rational("beta", 2);
    mo.layout = layout(cfg, "slot1");
    mo.term_budget = static_cast<double>(cfg.real("budget", Real(mo.term_budget)));
    Rational lo = m_pm_sums(inst, pool, -1, mo), hi = m_pm_sums(inst, pool, 1, mo);
    env.records.push_back({{"n", jint(inst.n)}, {"h", jint(inst.h)}, {"pool", primes_json(pool)},
                           {"M_minus", rstr(lo)}, {"M_plus", rstr(hi)}, {"ordered", lo <= hi}});
}

void cmd_sieve_driver(const RunConfig& cfg, ReportEnvelope& env) {
    if (!cfg.has("n-range")) throw UsageError("give --n-range");
    auto pr = problem(cfg);
    SieveConfig sc;
    sc.theta = cfg.rational("theta", sc.theta);
    sc.s = cfg.real("s", sc.s);
    sc.z = cfg.real("z", sc.z);
    sc.eps = to_real(cfg.rational("eps", Rational(1, 20)));
    sc.C_err = cfg.real("c-err", sc.C_err);
    sc.B = cfg.real("B", sc.B);
    sc.C = to_real(cfg.rational("C", 1));
    sc.factor_bound = static_cast<int>(cfg.integer("factor-bound", sc.factor_bound));
    sc.allow_zero = cfg.flag("allow-zero", true);
    sc.mode = omega_mode(cfg);
    auto rep = theorem_driver(pr.fam.m, pr.alpha, pr.n_lo, pr.n_hi, sc, cfg.threads());
    for (auto& row : rep.rows)
        env.records.push_back({{"n", jint(row.n)}, {"h", jint(row.h)}, {"excluded", primes_json(row.excluded)},
                               {"solutions", row.solutions}, {"witnesses", row.witnesses},
                               {"covered", row.witnesses > 0}});
    Integer nmax(pr.n_hi);
    env.summary = {{"theta", rstr(rep.gate.theta)},
                   {"arithmetic_gate", rep.gate.arithmetic_gate},
                   {"hypothesis_gate", rep.gate.hypothesis_gate},
                   {"gate_slack", rstr(rep.gate.slack)},
                   {"s", to_string(sc.s, env.digits)},
                   {"s_gate", to_string(rep.s_gate_value, env.digits)},
                   {"K", to_string(rep.K, env.digits)},
                   {"z0", to_string(rep.z0, env.digits)},
                   {"positivity", to_string(rep.positivity, env.digits)},
                   {"delta_policy", to_string(delta_policy(nmax, rep.rows.back().h, sc.B), env.digits)},
                   {"covered", rep.covered},
                   {"total", rep.rows.size()},
                   {"coverage", pct(rep.covered, rep.rows.size())}};
}

void cmd_witness(const RunConfig& cfg, ReportEnvelope& env) {
    auto pr = problem(cfg);
    WitnessOptions wo;
    wo.factor_bound = static_cast<int>(cfg.integer("omega-bound", 3));
    wo.allow_zero = cfg.flag("allow-zero", true);
    wo.mode = omega_mode(cfg);
    for (auto p : cfg.primes("exclude")) wo.exclude_P.insert(p);
    if (cfg.has("exclude-upto")) {
        long u = cfg.integer("exclude-upto", 0);
        if (u < 0) throw UsageError("--exclude-upto must be >= 0");
        Integer two_prod = 2 * pr.alpha.product();
        for (auto p : primes_up_to(static_cast<unsigned long>(u)))
            if (!mpz_divisible_ui_p(two_prod.get_mpz_t(), p)) wo.exclude_P.insert(p);
    }
    bool list = cfg.flag("list", false);
    std::size_t covered = 0, total = 0;
    for (long n = pr.n_lo; n <= pr.n_hi; ++n) {
        ProblemInstance inst(pr.fam, pr.alpha, Integer(n));
        auto ws = witness_search(inst, wo, cfg.threads());
        Json r{{"n", n}, {"h", jint(inst.h)}, {"witnesses", ws.solutions.size()}, {"covered", !ws.solutions.empty()}};
        if (!ws.solutions.empty()) r["example"] = jquad(ws.solutions.front());
        if (list) r["solutions"] = sols_json(ws.solutions);
        env.records.push_back(r);
        ++total;
        if (!ws.solutions.empty()) ++covered;
    }
    env.summary = {{"omega_bound", wo.factor_bound},
                   {"excluded", primes_json(std::vector<unsigned long>(wo.exclude_P.begin(), wo.exclude_P.end()))},
                   {"covered", covered},
                   {"total", total},
                   {"coverage", pct(covered, total)}};
}

void cmd_residuals(const RunConfig& cfg, ReportEnvelope& env) {
    if (!cfg.has("n-range")) throw UsageError("give --n-range");
    auto pr = problem(cfg);
    Real e = to_real(cfg.rational("exponent", Rational(3, 4)));
    auto rows = decomposition_residual(pr.fam.m, pr.alpha, pr.n_lo, pr.n_hi, cfg.threads());
    Real worst = 0;
    for (auto& row : rows) {
        Real ratio = row.h > 0 ? abs(row.residual) / pow(to_real(row.h), e) : Real(0);
        worst = std::max(worst, ratio);
        env.records.push_back({{"n", jint(row.n)}, {"h", jint(row.h)}, {"r", jint(row.r)},
                               {"a_E", to_string(row.a_E, env.digits)},
                               {"residual", to_string(row.residual, env.digits)},
                               {"ratio", to_string(ratio, env.digits)}});
    }
    env.summary = {{"exponent", to_string(e, env.digits)}, {"max_ratio", to_string(worst, env.digits)}};
}

void cmd_threshold(const RunConfig& cfg, ReportEnvelope& env) {
    Rational eps = cfg.rational("eps", 0), C = cfg.rational("C", 1);
    std::vector<long> ms;
    std::vector<Quad> alphas;
    if (cfg.flag("grid", false)) {
        if (cfg.has("m") || cfg.has("alpha")) throw UsageError("--grid replaces --m and --alpha");
        ms = {5, 11, 15};
        alphas = {{1, 1, 1, 1}, {1, 1, 1, 3}, {1, 3, 5, 7}};
    } else {
        ms = {cfg.integer("m", 5)};
        alphas = {cfg.quad("alpha", {1, 1, 1, 1})};
    }
    auto [eM, eA] = size_threshold_exponents();
    for (long m : ms)
        for (auto& a : alphas) {
            CoefficientVector alpha(a);
            auto row = size_threshold(m, alpha, eps, C);
            Json r{{"m", m}, {"alpha", jquad(a)}, {"exp_M", rstr(row.exp_M)}, {"exp_alpha", rstr(row.exp_alpha)},
                   {"eps", rstr(eps)}, {"C", rstr(C)}, {"exact", row.exact}};
            if (row.exact) {
                Rational T = C * Rational(ipow(Integer(2 * (m - 2)), eM.get_num().get_ui()) *
                                          ipow(alpha.product(), eA.get_num().get_ui()));
                r["threshold"] = rstr(T);
            } else {
                r["threshold"] = to_string(row.threshold, env.digits);
            }
            r["min_n"] = jint(row.min_n);
            if (cfg.has("n")) r["n_passes"] = size_threshold_check(m, alpha, cfg.big("n", 0), eps, C);
            env.records.push_back(r);
        }
    env.summary = {{"rows", env.records.size()}, {"exp_M", rstr(eM)}, {"exp_alpha", rstr(eA)}};
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (auto& [k, keys] : key_table()) v.push_back(k);
        return v;
    }();
    return names;
}

const std::vector<std::string>& command_keys(const std::string& command) {
    auto it = key_table().find(command);
    if (it == key_table().end()) throw UsageError("unknown command '" + command + "'");
    return it->second;
}

ReportEnvelope run_command(const RunConfig& cfg) {
    cfg.validate();
    auto t0 = std::chrono::steady_clock::now();
    ReportEnvelope env;
    env.command = cfg.command;
    env.digits = cfg.digits();
    env.config = Json::object();
    for (auto& [k, v] : cfg.kv)
        if (k != "output" && k != "format") env.config[k] = v;
    const auto& c = cfg.command;
    if (c.rfind("suite ", 0) == 0) {
        auto s = run_suite(c.substr(6), cfg);
        s.config = env.config;
        s.command = c;
        s.digits = env.digits;
        env = std::move(s);
    } else if (c == "poly eval") cmd_poly_eval(cfg, env);
    else if (c == "repr count") cmd_repr_count(cfg, env);
    else if (c == "density") cmd_density(cfg, env);
    else if (c == "eisenstein") cmd_eisenstein(cfg, env);
    else if (c == "betas") cmd_betas(cfg, env);
    else if (c == "sieve weights") cmd_sieve_weights(cfg, env);
    else if (c == "sieve sums") cmd_sieve_sums(cfg, env);
    else if (c == "sieve w") cmd_sieve_w(cfg, env);
    else if (c == "sieve m") cmd_sieve_m(cfg, env);
    else if (c == "sieve driver") cmd_sieve_driver(cfg, env);
    else if (c == "witness") cmd_witness(cfg, env);
    else if (c == "residuals") cmd_residuals(cfg, env);
    else if (c == "threshold") cmd_threshold(cfg, env);
    else throw UsageError("unknown command '" + c + "'");
    env.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return env;
}

}  // namespace polyrep
