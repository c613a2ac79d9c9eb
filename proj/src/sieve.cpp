#include "polyrep/sieve.hpp"

#include <algorithm>
#include <boost/math/special_functions/zeta.hpp>

#include "polyrep/parallel.hpp"

namespace polyrep {

namespace {

// p^a (p1...pk)^b < D^b with beta = a/b
bool chain_ok(unsigned long pk, const Integer& prefix, const Rational& D, const Rational& beta) {
    unsigned long a = beta.get_num().get_ui(), b = beta.get_den().get_ui();
    Rational lhs(ipow(Integer(pk), a) * ipow(prefix, b));
    return lhs < rpow(D, static_cast<int>(b));
}

void check_params(const Rational& D, const Rational& beta) {
    if (D <= 1) throw UsageError("sieve level D must exceed 1");
    if (beta < 1) throw UsageError("beta must be >= 1");
    if (!mpz_fits_ulong_p(beta.get_num().get_mpz_t()) || beta.get_num() > 64 || beta.get_den() > 64)
        throw UsageError("beta numerator and denominator must be at most 64");
}

int lambda_sorted(const std::vector<unsigned long>& desc, const Rational& D, const Rational& beta, Sign sign) {
    Integer prefix = 1;
    for (size_t k = 1; k <= desc.size(); ++k) {
        prefix *= desc[k - 1];
        bool odd = k % 2 == 1;
        if ((sign == Sign::plus) == odd && !chain_ok(desc[k - 1], prefix, D, beta)) return 0;
    }
    return desc.size() % 2 ? -1 : 1;
}

std::vector<unsigned long> odd_squarefree_primes(const Integer& d) {
    if (d < 1) throw UsageError("weights are defined for d >= 1");
    std::vector<unsigned long> ps;
    if (d == 1) return ps;
    for (auto& [p, e] : factor(d)) {
        if (e > 1) throw UsageError("d must be squarefree: " + d.get_str());
        if (p == 2) throw UsageError("d must be odd: " + d.get_str());
        ps.push_back(p.get_ui());
    }
    std::sort(ps.rbegin(), ps.rend());
    return ps;
}

// masks over a pool
struct MaskWeights {
    std::vector<int> plus, minus;   // indexed by mask
    std::vector<int> sum_plus, sum_minus;   // subset sums
};

MaskWeights mask_weights(const std::vector<unsigned long>& pool, const Rational& D, const Rational& beta) {
    check_params(D, beta);
    if (pool.size() > 20) throw BudgetExceeded("weight pool larger than 20 primes");
    size_t n = size_t(1) << pool.size();
    MaskWeights w{std::vector<int>(n), std::vector<int>(n), {}, {}};
    for (size_t mask = 0; mask < n; ++mask) {
        std::vector<unsigned long> desc;
        for (size_t i = 0; i < pool.size(); ++i)
            if (mask >> i & 1) desc.push_back(pool[i]);
        std::sort(desc.rbegin(), desc.rend());
        w.plus[mask] = lambda_sorted(desc, D, beta, Sign::plus);
        w.minus[mask] = lambda_sorted(desc, D, beta, Sign::minus);
    }
    w.sum_plus = w.plus;
    w.sum_minus = w.minus;
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t mask = 0; mask < n; ++mask)
            if (mask >> i & 1) {
                w.sum_plus[mask] += w.sum_plus[mask ^ (size_t(1) << i)];
                w.sum_minus[mask] += w.sum_minus[mask ^ (size_t(1) << i)];
            }
    return w;
}

void check_pool(const ProblemInstance& inst, const std::vector<unsigned long>& pool,
                const std::set<unsigned long>& inner) {
    Integer two_prod = 2 * inst.alpha.product();
    std::set<unsigned long> seen;
    for (auto p : pool) {
        if (!is_prime(Integer(p))) throw UsageError("pool entries must be prime");
        if (mpz_divisible_ui_p(two_prod.get_mpz_t(), p)) throw UsageError("pool prime divides 2*prod(alpha)");
        if (inner.count(p)) throw UsageError("pool must be disjoint from the inner prime set");
        if (!seen.insert(p).second) throw UsageError("duplicate pool prime");
    }
}

unsigned pool_mask(long y, const std::vector<unsigned long>& pool) {
    unsigned m = 0;
    for (size_t i = 0; i < pool.size(); ++i)
        if (y % static_cast<long>(pool[i]) == 0) m |= 1u << i;
    return m;
}

std::vector<Quad> inner_solutions(const ProblemInstance& inst, const Quad& d, const ConstraintSpec& inner,
                                  int threads) {
    auto rs = count_representations(inst, d, threads);
    std::vector<Quad> keep;
    for (auto& y : rs.solutions)
        if (inner.passes_P(y) && inner.passes_caps(y)) keep.push_back(y);
    return keep;
}

}  // namespace

int rosser_lambda(const Integer& d, const Rational& D, const Rational& beta, Sign sign) {
    check_params(D, beta);
    return lambda_sorted(odd_squarefree_primes(d), D, beta, sign);
}

int capital_lambda_minus(const Integer& d, const Rational& D, const Rational& beta) {
    return 4 * rosser_lambda(d, D, beta, Sign::minus) - 3 * rosser_lambda(d, D, beta, Sign::plus);
}

int SieveWeightTable::lambda(const Integer& d, Sign s) const {
    auto& m = s == Sign::plus ? plus : minus;
    auto it = m.find(d);
    return it == m.end() ? 0 : it->second;
}

SieveWeightTable weight_table(const std::vector<unsigned long>& pool, const Rational& D, const Rational& beta) {
    for (auto p : pool)
        if (p == 2 || !is_prime(Integer(p))) throw UsageError("pool must hold odd primes");
    auto w = mask_weights(pool, D, beta);
    SieveWeightTable t{D, beta, pool, {}, {}};
    for (size_t mask = 0; mask < w.plus.size(); ++mask) {
        Integer d = 1;
        for (size_t i = 0; i < pool.size(); ++i)
            if (mask >> i & 1) d *= pool[i];
        if (w.plus[mask]) t.plus[d] = w.plus[mask];
        if (w.minus[mask]) t.minus[d] = w.minus[mask];
    }
    return t;
}

SandwichReport weight_sandwich_check(const Integer& c, const Rational& D, const Rational& beta) {
    auto ps = odd_squarefree_primes(c);
    auto w = mask_weights(ps, D, beta);
    size_t full = w.plus.size() - 1;
    SandwichReport r{c, w.sum_minus[full], c == 1 ? 1 : 0, w.sum_plus[full], false};
    r.holds = r.sum_minus <= r.sum_mu && r.sum_mu <= r.sum_plus;
    return r;
}

QuadSandwich quad_sandwich_check(const std::array<Integer, 4>& c, const Rational& D, const Rational& beta) {
    std::array<int, 4> L{}, U{};
    int lhs = 1;
    for (int j = 0; j < 4; ++j) {
        auto s = weight_sandwich_check(c[j], D, beta);
        L[j] = s.sum_minus;
        U[j] = s.sum_plus;
        lhs *= s.sum_mu;
    }
    int rhs = -3 * U[0] * U[1] * U[2] * U[3];
    for (int k = 0; k < 4; ++k) {
        int t = L[k];
        for (int j = 0; j < 4; ++j)
            if (j != k) t *= U[j];
        rhs += t;
    }
    return {lhs, rhs, rhs <= lhs};
}

WeightedSieveResult weighted_sieve_sum(const ProblemInstance& inst, const WeightedSieveSpec& spec, int threads) {
    check_pool(inst, spec.pool, spec.inner.P);
    if (spec.pool.size() > kPoolCap) throw BudgetExceeded("pool capped at 12 primes");
    auto w = mask_weights(spec.pool, spec.D, spec.beta);
    unsigned full = (1u << spec.pool.size()) - 1;
    auto sols = inner_solutions(inst, spec.ell, spec.inner, threads);
    WeightedSieveResult r{0, 0, 0, Integer(static_cast<unsigned long>(sols.size()))};
    ConstraintSpec outer = spec.inner;
    outer.P.insert(spec.pool.begin(), spec.pool.end());
    long lower = 0, upper = 0, truth = 0;
    for (auto& y : sols) {
        std::array<long, 4> L{}, U{};
        for (int j = 0; j < 4; ++j) {
            // y_j = 0 is divisible by every pool prime
            unsigned g = y[j] == 0 ? full : pool_mask(y[j], spec.pool);
            L[j] = w.sum_minus[g];
            U[j] = w.sum_plus[g];
        }
        long pu = U[0] * U[1] * U[2] * U[3];
        upper += pu;
        if (spec.layout == LowerLayout::slot_one) {
            lower += (4 * L[0] - 3 * U[0]) * U[1] * U[2] * U[3];
        } else {
            long t = -3 * pu;
            for (int k = 0; k < 4; ++k) {
                long s = L[k];
                for (int j = 0; j < 4; ++j)
                    if (j != k) s *= U[j];
                t += s;
            }
            lower += t;
        }
        if (outer.passes_P(y)) ++truth;
    }
    r.lower = Integer(lower);
    r.upper = Integer(upper);
    r.truth = Integer(truth);
    return r;
}

Integer weighted_sieve_sum_literal(const ProblemInstance& inst, const WeightedSieveSpec& spec, Sign which,
                                   int threads) {
    check_pool(inst, spec.pool, spec.inner.P);
    if (spec.pool.size() > kPoolCap) throw BudgetExceeded("pool capped at 12 primes");
    auto w = mask_weights(spec.pool, spec.D, spec.beta);
    std::vector<unsigned> sp, sm;
    for (unsigned mask = 0; mask < w.plus.size(); ++mask) {
        if (w.plus[mask]) sp.push_back(mask);
        if (w.minus[mask]) sm.push_back(mask);
    }
    double terms = double(sp.size()) * sp.size() * sp.size() * std::max(sp.size(), sm.size());
    if (terms > 2e5) throw BudgetExceeded("literal quadruple sum exceeds 200000 coset enumerations");
    auto val = [&](unsigned mask) {
        long d = 1;
        for (size_t i = 0; i < spec.pool.size(); ++i)
            if (mask >> i & 1) d *= static_cast<long>(spec.pool[i]);
        return d;
    };
    std::map<std::array<unsigned, 4>, long> cache;
    // S_{c,h}(A_{d ell}, P1) from the rescaled coset
    auto S = [&](const std::array<unsigned, 4>& m) {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        Quad d{};
        for (int j = 0; j < 4; ++j) d[j] = spec.ell[j] * val(m[j]);
        long c = static_cast<long>(inner_solutions(inst, d, spec.inner, threads).size());
        cache[m] = c;
        return c;
    };
    // sum over d of f1(d1) f2(d2) f3(d3) f4(d4) S
    auto quad = [&](const std::array<const std::vector<int>*, 4>& f) {
        std::array<const std::vector<unsigned>*, 4> sup;
        for (int j = 0; j < 4; ++j) sup[j] = f[j] == &w.plus ? &sp : &sm;
        long total = 0;
        for (auto a : *sup[0])
            for (auto b : *sup[1])
                for (auto c : *sup[2])
                    for (auto d : *sup[3])
                        total += long((*f[0])[a]) * (*f[1])[b] * (*f[2])[c] * (*f[3])[d] * S({a, b, c, d});
        return total;
    };
    const auto* P = &w.plus;
    const auto* M = &w.minus;
    if (which == Sign::plus) return Integer(quad({P, P, P, P}));
    long allplus = quad({P, P, P, P});
    if (spec.layout == LowerLayout::slot_one) return Integer(4 * quad({M, P, P, P}) - 3 * allplus);
    long t = -3 * allplus;
    t += quad({M, P, P, P}) + quad({P, M, P, P}) + quad({P, P, M, P}) + quad({P, P, P, M});
    return Integer(t);
}

Real harmonic_H(const Integer& n) {
    if (n < 1) throw UsageError("H(n) needs n >= 1");
    Real r = 1;
    if (n == 1) return r;
    for (auto& [p, e] : factor(n)) r *= 1 + 1 / sqrt(to_real(p));
    return r;
}

Rational local_C(unsigned long p, int c_p, const ProblemInstance& inst, const Quad& base) {
    if (c_p < 1) throw UsageError("exponent caps must be >= 1");
    Rational b1 = local_density(inst, base, p).value;
    if (b1 == 0) throw ObstructionError("density zero at p = " + std::to_string(p));
    long pc = 1;
    for (int e = 0; e < c_p; ++e) pc *= static_cast<long>(p);
    Rational total = 0;
    for (int mask = 0; mask < 16; ++mask) {
        Quad d = base;
        int k = 0;
        for (int j = 0; j < 4; ++j)
            if (mask >> j & 1) {
                d[j] *= pc;
                ++k;
            }
        Rational term = rpow(Rational(static_cast<long>(p)), -c_p * k) * local_density(inst, d, p).value / b1;
        total += (k % 2 ? -term : term);
    }
    return total;
}

std::vector<unsigned long> sieve_pool(const CoefficientVector& alpha, const Rational& z0) {
    std::vector<unsigned long> ps;
    if (z0 <= 2) return ps;
    Integer fl = z0.get_num() / z0.get_den();
    if (fl > 100000000) throw BudgetExceeded("z0 too large for a prime pool");
    Integer two_prod = 2 * alpha.product();
    for (auto p : primes_up_to(fl.get_ui())) {
        if (Rational(static_cast<long>(p)) >= z0) break;
        if (!mpz_divisible_ui_p(two_prod.get_mpz_t(), p)) ps.push_back(p);
    }
    return ps;
}

MainTermW main_term_W(const ProblemInstance& inst, const Rational& z0, const std::map<unsigned long, int>& caps) {
    if (z0 < 3) throw UsageError("z0 must be >= 3");
    MainTermW r{1, 1, 0, sieve_pool(inst.alpha, z0), {}};
    try {
        for (auto p : prime_divisors(2 * inst.alpha.product())) {
            auto it = caps.find(p);
            if (it == caps.end()) throw UsageError("missing exponent cap for p = " + std::to_string(p));
            r.prod_C *= local_C(p, it->second, inst);
        }
        for (auto p : r.pool) r.sieve_product *= 1 - beta_ratio(p, {1, 0, 0, 0}, inst);
    } catch (const ObstructionError& e) {
        r.diagnostic = e.what();
        r.W = 0;
        return r;
    }
    r.W = r.prod_C * r.sieve_product;
    return r;
}

Rational m_pm_sums(const ProblemInstance& inst, const std::vector<unsigned long>& pool, int eps,
                   const MSumOptions& opt, const Quad& base) {
    if (eps != 1 && eps != -1) throw UsageError("eps must be +1 or -1");
    check_pool(inst, pool, {});
    if (pool.size() > kPoolCap) throw BudgetExceeded("pool capped at 12 primes");
    auto w = mask_weights(pool, opt.D, opt.beta);
    const size_t k = pool.size();
    // beta_p(c) on a common denominator per prime
    std::vector<std::array<Integer, 16>> num(k);
    Integer den = 1;
    for (size_t i = 0; i < k; ++i) {
        std::array<Rational, 16> b;
        Integer l = 1;
        for (int mask = 0; mask < 16; ++mask) {
            b[mask] = beta_ratio(pool[i], {mask & 1, mask >> 1 & 1, mask >> 2 & 1, mask >> 3 & 1}, inst, base);
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b[mask].get_den().get_mpz_t());
        }
        for (int mask = 0; mask < 16; ++mask) num[i][mask] = b[mask].get_num() * (l / b[mask].get_den());
        den *= l;
    }
    std::vector<unsigned> sp, sm;
    for (unsigned mask = 0; mask < w.plus.size(); ++mask) {
        if (w.plus[mask]) sp.push_back(mask);
        if (w.minus[mask]) sm.push_back(mask);
    }
    // one quadruple sum with slot j drawing from minus when use_minus[j]
    auto quad = [&](std::array<bool, 4> use_minus) {
        std::array<const std::vector<unsigned>*, 4> sup;
        std::array<const std::vector<int>*, 4> wt;
        for (int j = 0; j < 4; ++j) {
            sup[j] = use_minus[j] ? &sm : &sp;
            wt[j] = use_minus[j] ? &w.minus : &w.plus;
        }
        std::vector<Integer> part(std::max<size_t>(1, sup[0]->size()));
        int threads = default_threads();
        parallel_chunks(static_cast<long>(sup[0]->size()), threads, [&](long b, long e, int) {
            Integer prod;
            for (long ia = b; ia < e; ++ia) {
                unsigned a = (*sup[0])[ia];
                Integer acc = 0;
                for (auto bb : *sup[1])
                    for (auto c : *sup[2])
                        for (auto d : *sup[3]) {
                            prod = (*wt[0])[a] * (*wt[1])[bb] * (*wt[2])[c] * (*wt[3])[d];
                            for (size_t i = 0; i < k; ++i) {
                                int pat = (a >> i & 1) | (bb >> i & 1) << 1 | (c >> i & 1) << 2 | (d >> i & 1) << 3;
                                prod *= num[i][pat];
                            }
                            acc += prod;
                        }
                part[ia] = acc;
            }
        });
        Integer total = 0;
        for (auto& x : part) total += x;
        return total;
    };
    double n3 = double(sp.size()) * sp.size() * sp.size();
    double terms = eps == 1 ? n3 * sp.size()
                   : opt.layout == LowerLayout::slot_one ? n3 * (sp.size() + sm.size())
                                                         : n3 * (sp.size() + 4.0 * sm.size());
    if (terms > opt.term_budget) throw BudgetExceeded("M-sum term count exceeds the budget");
    Integer total;
    if (eps == 1) {
        total = quad({false, false, false, false});
    } else if (opt.layout == LowerLayout::slot_one) {
        total = 4 * quad({true, false, false, false}) - 3 * quad({false, false, false, false});
    } else {
        total = -3 * quad({false, false, false, false});
        for (int j = 0; j < 4; ++j) {
            std::array<bool, 4> u{};
            u[j] = true;
            total += quad(u);
        }
    }
    Rational r(total, den);
    r.canonicalize();
    return r;
}

Real weighted_sieve_main_term(const ProblemInstance& inst, const WeightedSieveSpec& spec, Sign which) {
    if (!spec.inner.P.empty()) throw UsageError("main-term mode needs an empty inner prime set");
    auto ec = assemble_eisenstein(inst, spec.ell);
    Rational c = 1;
    for (auto& [p, cp] : spec.inner.caps) c *= local_C(p, cp, inst, spec.ell);
    MSumOptions mo;
    mo.D = spec.D;
    mo.beta = spec.beta;
    mo.layout = spec.layout;
    Rational M = m_pm_sums(inst, spec.pool, which == Sign::plus ? 1 : -1, mo, spec.ell);
    return to_real(ec.rational_part * c * M) * ec.transcendental;
}

GateReport theta_gate(const Rational& theta) {
    if (theta <= 0) throw UsageError("theta must be positive");
    Rational lhs = 988 * theta + Rational(1, 2);
    return {theta, lhs < 1, theta < Rational(1, 1977), 1 - lhs};
}

Real s_gate(const Real& s) { return 1 - exp(Real(37) - s) * pow(Real("1.083"), 10); }

Real K_constant(const Real& z, const Real& z0) {
    Real lz = log(z), lz0 = log(z0);
    Real zeta4 = boost::math::zeta(Real(4));
    return zeta4 * pow(1 + 1 / (2 * lz * lz), 4) * pow(1 + 1 / (lz0 * lz0), 4);
}

Real z0_policy(const Real& z) { return pow(log(z), 33); }

Real positivity_expression(const Real& z, const Real& z0, const Real& s, const Real& eps, const Real& C_err) {
    Real lz = log(z);
    Real main = pow(Real("1.083"), -4) * s_gate(s) * pow(log(z0) / lz, 16);
    return main - C_err * pow(z0, eps - 1) * pow(lz, 16);
}

Real delta_policy(const Integer& n, const Integer& h, const Real& B) {
    if (B <= 0) throw UsageError("B must be positive");
    Real e = std::max(Real(62), Real(23) / B);
    return pow(harmonic_H(n), 10) * pow(log(to_real(h)), e);
}

DriverReport theorem_driver(long m, const CoefficientVector& alpha, long n_lo, long n_hi, const SieveConfig& cfg,
                            int threads) {
    PolygonalFamily fam(m);
    if (!fam.theorem_mode())
        throw UsageError("theorem mode needs m odd with m-4 prime to 3 and 5; otherwise a congruence "
                         "mod 3 or mod 5 can obstruct the almost-prime statement");
    if (n_lo < 1 || n_hi < n_lo) throw UsageError("bad n-range");
    DriverReport rep;
    rep.gate = theta_gate(cfg.theta);
    rep.s_gate_value = s_gate(cfg.s);
    double th = mpq_get_d(cfg.theta.get_mpq_t());
    for (long n = n_lo; n <= n_hi; ++n) {
        ProblemInstance inst(fam, alpha, Integer(n));
        WitnessOptions wo;
        wo.factor_bound = cfg.factor_bound;
        wo.allow_zero = cfg.allow_zero;
        wo.mode = cfg.mode;
        // primes <= n^theta away from 2 prod(alpha)
        unsigned long bound = static_cast<unsigned long>(std::floor(std::pow(double(n), th) + 1e-9));
        for (auto p : primes_up_to(bound))
            if (!mpz_divisible_ui_p(Integer(2 * alpha.product()).get_mpz_t(), p)) wo.exclude_P.insert(p);
        auto ws = witness_search(inst, wo, threads);
        auto all = count_representations(inst, {1, 1, 1, 1}, threads, false);
        DriverRow row{inst.n, inst.h, ws.solutions.size(), all.count.get_ui(),
                      std::vector<unsigned long>(wo.exclude_P.begin(), wo.exclude_P.end())};
        if (row.witnesses > 0) ++rep.covered;
        rep.rows.push_back(std::move(row));
    }
    rep.coverage = double(rep.covered) / double(rep.rows.size());
    Real hmax = to_real(rep.rows.back().h);
    Real z = cfg.z > 0 ? cfg.z : pow(hmax, Real(mpq_get_d(cfg.theta.get_mpq_t())));
    rep.z0 = z0_policy(z);
    rep.K = K_constant(z, rep.z0);
    rep.positivity = positivity_expression(z, rep.z0, cfg.s, cfg.eps, cfg.C_err);
    return rep;
}

std::pair<Rational, Rational> size_threshold_exponents() {
    // alpha^{-1/2} h >> M^{11/2} (4 (m-2)^2 prod alpha)^{5/2} h^{1/2}, M = 2(m-2)
    Rational eM(11, 2), eN(5, 2);
    Rational exp_M = 2 * (eM + 2 * eN);
    Rational exp_alpha = 2 * (eN + Rational(1, 2));
    return {exp_M, exp_alpha};
}

namespace {

Real threshold_real(long m, const CoefficientVector& alpha, const Rational& eps, const Rational& C) {
    auto [eM, eA] = size_threshold_exponents();
    Real e = to_real(eps);
    return to_real(C) * pow(Real(2 * (m - 2)), to_real(eM) + e) * pow(to_real(alpha.product()), to_real(eA) + e);
}

Rational threshold_exact(long m, const CoefficientVector& alpha, const Rational& C) {
    auto [eM, eA] = size_threshold_exponents();
    if (eM.get_den() != 1 || eA.get_den() != 1) throw std::logic_error("non-integral threshold exponents");
    return C * Rational(ipow(Integer(2 * (m - 2)), eM.get_num().get_ui()) *
                        ipow(alpha.product(), eA.get_num().get_ui()));
}

}  // namespace

ThresholdRow size_threshold(long m, const CoefficientVector& alpha, const Rational& eps, const Rational& C) {
    if (C <= 0) throw UsageError("implied constant must be positive");
    if (eps < 0) throw UsageError("eps must be >= 0");
    PolygonalFamily fam(m);
    auto [eM, eA] = size_threshold_exponents();
    ThresholdRow row{m, alpha.a, eM, eA, 0, 0, eps == 0};
    Integer base = target_h(m, alpha.a, Integer(0));
    Integer step = 8 * Integer(m - 2);
    if (row.exact) {
        Rational T = threshold_exact(m, alpha, C);
        row.threshold = to_real(T);
        // least integer n >= 0 with base + step n >= T
        Rational need = (T - base) / step;
        Integer c = need.get_num() / need.get_den();
        if (c * need.get_den() < need.get_num()) c += 1;
        row.min_n = c < 0 ? Integer(0) : c;
    } else {
        row.threshold = threshold_real(m, alpha, eps, C);
        Real need = (row.threshold - to_real(base)) / to_real(step);
        Real c = ceil(need);
        row.min_n = c < 0 ? Integer(0) : Integer(c.str(0, std::ios_base::fixed));
        // guard against rounding at the boundary
        while (row.min_n > 0 && size_threshold_check(m, alpha, row.min_n - 1, eps, C)) row.min_n -= 1;
        while (!size_threshold_check(m, alpha, row.min_n, eps, C)) row.min_n += 1;
    }
    return row;
}

bool size_threshold_check(long m, const CoefficientVector& alpha, const Integer& n, const Rational& eps, const Rational& C) {
    Integer h = target_h(m, alpha.a, n);
    if (eps == 0) return Rational(h) >= threshold_exact(m, alpha, C);
    return to_real(h) >= threshold_real(m, alpha, eps, C);
}

}  // namespace polyrep
