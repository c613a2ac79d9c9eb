#include "polyrep/eisenstein.hpp"

#include <mutex>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "polyrep/enum_engine.hpp"
#include "polyrep/parallel.hpp"

namespace polyrep {

int psi_mod4(const Integer& n) {
    Integer r = n % 4;
    if (r < 0) r += 4;
    if (r == 1) return 1;
    if (r == 3) return -1;
    return 0;
}

int FormCharacter::operator()(unsigned long p) const { return kronecker(disc, Integer(p)); }

FormCharacter form_character(const CoefficientVector& alpha) {
    Integer a = alpha.product();
    Integer r = a % 4;
    return FormCharacter{r == 1 ? a : 4 * a};
}

Real hurwitz_zeta2(const Real& q) {
    // Euler-Maclaurin with N direct terms and J Bernoulli corrections
    const int N = 40, J = 30;
    Real s = 0;
    for (int k = 0; k < N; ++k) s += 1 / ((q + k) * (q + k));
    Real x = q + N;
    s += 1 / x + 1 / (2 * x * x);
    Real xp = x * x * x;
    for (int j = 1; j <= J; ++j) {
        s += boost::math::bernoulli_b2n<Real>(j) / xp;
        xp *= x * x;
    }
    return s;
}

Real l_value(const Integer& disc) {
    Integer f = abs(disc);
    if (f == 1) {
        Real pi = boost::math::constants::pi<Real>();
        return pi * pi / 6;
    }
    if (f > 100000) throw BudgetExceeded("conductor too large for the Hurwitz sum");
    long fl = f.get_si();
    Real s = 0;
    for (long a = 1; a < fl; ++a) {
        int chi = kronecker(disc, Integer(a));
        if (chi == 0) continue;
        Real z = hurwitz_zeta2(Real(a) / Real(fl));
        s += chi > 0 ? z : -z;
    }
    return s / (Real(fl) * Real(fl));
}

Real l_value_psi() { return l_value(Integer(-4)); }

std::string to_string(DensitySource s) { return s == DensitySource::oracle ? "oracle" : "closed+kane"; }

std::vector<unsigned long> support_primes(const ProblemInstance& inst, const Quad& d) {
    Integer e = 2 * Integer(inst.m() - 2) * inst.alpha.product();
    for (auto dj : d) e *= Integer(static_cast<long>(dj));
    if (inst.h != 0) e *= inst.h;
    auto ps = prime_divisors(e);
    std::sort(ps.begin(), ps.end());
    return ps;
}

Real transcendental_part(const CoefficientVector& alpha) {
    static std::mutex mu;
    static std::map<Integer, Real> cache;
    Integer prod = alpha.product();
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(prod);
        if (it != cache.end()) return it->second;
    }
    Real pi = boost::math::constants::pi<Real>();
    Real t = pi * pi / (sqrt(to_real(prod)) * l_value(form_character(alpha).disc));
    std::lock_guard<std::mutex> lk(mu);
    cache[prod] = t;
    return t;
}

EisensteinCoefficient assemble_eisenstein(const ProblemInstance& inst, const Quad& d, const AssembleOptions& opt) {
    if (inst.h <= 0) throw UsageError("Eisenstein coefficient needs h > 0");
    EisensteinCoefficient ec;
    ec.h = inst.h;
    ec.d = d;
    ec.S = support_primes(inst, d);
    for (auto p : opt.extra_primes) {
        if (!is_prime(Integer(p))) throw UsageError("extra support entries must be prime");
        if (std::find(ec.S.begin(), ec.S.end(), p) == ec.S.end()) ec.S.push_back(p);
    }
    std::sort(ec.S.begin(), ec.S.end());
    FormCharacter chi = form_character(inst.alpha);
    ec.disc = chi.disc;
    Integer m2 = inst.m() - 2;
    Integer den = 16 * m2 * m2 * m2 * m2;
    for (auto dj : d) den *= Integer(static_cast<long>(dj));
    Rational r(inst.h, den);
    r.canonicalize();
    for (auto p : ec.S) {
        LocalDensity ld;
        if (opt.source == DensitySource::oracle) {
            auto o = density_oracle_stable(p, inst, d, opt.oracle);
            ld = LocalDensity{p, o.value, DensityMethod::oracle, d};
        } else {
            ld = local_density(inst, d, p);
        }
        ec.locals.push_back(ld);
        if (ld.value == 0 && ec.obstruction_prime == 0) ec.obstruction_prime = p;
        Rational pp(static_cast<long>(p));
        r *= ld.value / (1 - Rational(chi(p)) / (pp * pp));
    }
    ec.rational_part = r;
    ec.transcendental = transcendental_part(inst.alpha);
    ec.value = to_real(r) * ec.transcendental;
    return ec;
}

Rational gamma_p_case(unsigned long p, int v, int chi, bool c_unit) {
    if (p == 2) throw UsageError("gamma_p_case needs odd p");
    if (chi == 0) throw UsageError("the psi(p) = 0 branch is evaluated through the density quotient");
    if (v < 0) throw UsageError("v must be >= 0");
    Rational ip(1, static_cast<long>(p));
    Rational q = -ip;   // -p^{1-s}
    if (c_unit) return (1 - rpow(q, v + 1)) / (1 + ip);
    // p^{2-s} = 1 at s = 2
    return (1 - rpow(q, v + 2) + (1 - rpow(q, v))) / ((1 + ip * ip) * (1 + ip));
}

Rational gamma_chi(unsigned long p, int v, int chi) {
    Rational x(chi, static_cast<long>(p));
    x.canonicalize();
    if (x == 1) return v + 1;
    return (1 - rpow(x, v + 1)) / (1 - x);
}

Rational gamma_unified(const ProblemInstance& inst, unsigned long p) {
    FormCharacter chi = form_character(inst.alpha);
    Rational pp(static_cast<long>(p));
    auto b = local_density(inst, {1, 1, 1, 1}, p).value;
    return b / (1 - Rational(chi(p)) / (pp * pp));
}

Rational beta_ratio(unsigned long p, const std::array<int, 4>& c, const ProblemInstance& inst, const Quad& base) {
    if (p == 2) throw UsageError("beta ratios are defined at odd primes");
    Quad d = base;
    int sum = 0;
    for (int j = 0; j < 4; ++j) {
        if (c[j] < 0) throw UsageError("exponents must be >= 0");
        for (int e = 0; e < c[j]; ++e) d[j] *= static_cast<long>(p);
        sum += c[j];
    }
    if (sum == 0) return 1;
    Rational b1 = local_density(inst, base, p).value;
    if (b1 == 0) throw ObstructionError("density zero at p = " + std::to_string(p));
    Rational bc = local_density(inst, d, p).value;
    return rpow(Rational(static_cast<long>(p)), -sum) * bc / b1;
}

namespace {

std::array<int, 4> bits(int mask) { return {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1}; }

int weight(int mask) { return __builtin_popcount(static_cast<unsigned>(mask)); }

bool divides(unsigned long p, long v) { return v % static_cast<long>(p) == 0; }

std::string cname(int mask) {
    std::string s = "(";
    for (int j = 0; j < 4; ++j) s += std::string(j ? "," : "") + ((mask >> j & 1) ? "p" : "1");
    return s + ")";
}

}  // namespace

std::vector<BoundCheck> check_beta_bounds(unsigned long p, const ProblemInstance& inst) {
    long m = inst.m();
    if (p < 3 || divides(p, m - 2) || divides(p, m - 4)) throw UsageError("p outside both bound classes");
    bool p_alpha = mpz_divisible_ui_p(inst.alpha.product().get_mpz_t(), p);
    if (p_alpha && p < 5) throw UsageError("the p | prod(alpha) class needs p >= 5");
    bool pn = mpz_divisible_ui_p(inst.n.get_mpz_t(), p);
    Rational P(static_cast<long>(p));
    std::vector<BoundCheck> out;
    for (int mask = 1; mask < 16; ++mask) {
        Rational v = beta_ratio(p, bits(mask), inst);
        int w = weight(mask);
        std::string nm = "beta" + cname(mask);
        if (!p_alpha) {
            Rational b;
            if (w < 4)
                b = rpow(Rational(2) / P, w);
            else
                b = pn ? 1 / (P * P * (P - 1)) : rpow(Rational(2) / P, 4);
            out.push_back({nm, v, b, v <= b});
        } else {
            Rational b = w < 4 || !pn ? rpow(Rational(4) / P, w) : 1 / ((P - 1) * (P - 1) * (P + 1));
            out.push_back({nm, v, b, v <= b});
            if (w == 2 || w == 3) {
                Rational t = (w == 2 ? 2 * P : Rational(2)) / ((P - 1) * (P - 1) * (P + 1));
                out.push_back({nm + " intermediate", v, t, v <= t, true});
            }
        }
    }
    if (!p_alpha) {
        Rational g = gamma_unified(inst, p);
        Rational b = 1 - 1 / P;
        out.push_back({"gamma >= 1-1/p", g, b, g >= b});
    }
    return out;
}

BoundCheck check_w_envelope(const Quad& d, const ProblemInstance& inst) {
    Integer prod = 1;
    for (auto dj : d) prod *= Integer(static_cast<long>(dj));
    Rational lhs = 1, rhs4 = 1;
    for (auto p : prod == 1 ? std::vector<unsigned long>{} : prime_divisors(prod)) {
        int mask = 0;
        for (int j = 0; j < 4; ++j) {
            int o = ord_p(Integer(static_cast<long>(d[j])), p);
            if (o > 1) throw UsageError("envelope check needs squarefree d");
            if (o == 1) mask |= 1 << j;
        }
        lhs *= beta_ratio(p, bits(mask), inst);
        Rational P(static_cast<long>(p));
        Rational two = rpow(Rational(2) / P, 4);
        Rational f = mpz_divisible_ui_p(inst.n.get_mpz_t(), p) ? std::max(two, Rational(1 / (P * P * (P - 1)))) : two;
        rhs4 *= rpow(f, weight(mask));
    }
    Rational l4 = rpow(lhs, 4);
    return {"w-envelope (4th powers)", l4, rhs4, l4 <= rhs4};
}

Rational g_correlation(const Quad& d, const ProblemInstance& inst) {
    Integer prod = 1;
    for (auto dj : d) prod *= Integer(static_cast<long>(dj));
    Rational g = 1;
    if (prod == 1) return g;
    for (auto p : prime_divisors(prod)) {
        int mask = 0;
        for (int j = 0; j < 4; ++j)
            if (divides(p, d[j])) mask |= 1 << j;
        Rational num = beta_ratio(p, bits(mask), inst);
        Rational den = 1;
        for (int j = 0; j < 4; ++j)
            if (mask >> j & 1) den *= beta_ratio(p, bits(1 << j), inst);
        if (den == 0) throw ObstructionError("zero single-slot beta at p = " + std::to_string(p));
        g *= num / den;
    }
    return g;
}

Rational g_bound(const Quad& d) {
    Integer b = 256;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Integer u;
            Integer a = static_cast<long>(d[i]), c = static_cast<long>(d[j]);
            mpz_gcd(u.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
            b *= u * u;
        }
    return Rational(b);
}

Real cusp_bound_simplified(const Integer& M, const Integer& N, const Integer& n, const CuspConstants& k) {
    using boost::multiprecision::pow;
    return k.C * pow(to_real(M), Real(5.5) + k.eps) * pow(to_real(N), Real(2.5) + k.eps) *
           pow(to_real(n), Real(0.5) + k.eps);
}

namespace {

Integer totient(const Integer& n) {
    if (n == 1) return 1;
    Integer r = n;
    for (auto& [p, e] : factor(n)) r = r / p * (p - 1);
    return r;
}

std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> ds{1};
    for (auto& [p, e] : factor(n)) {
        size_t sz = ds.size();
        Integer pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t t = 0; t < sz; ++t) ds.push_back(ds[t] * pk);
        }
    }
    return ds;
}

}  // namespace

Real cusp_bound_explicit(const Integer& M, const Integer& N, const Integer& n, const CuspConstants& k) {
    using boost::multiprecision::pow;
    const Real pi = boost::math::constants::pi<Real>();
    Real pre = Real(54) / (pi * pi * pow(k.delta_level, Real(1.5)));
    Real num = to_real(Integer(M * M)) * pow(to_real(N), 2 + 2 * k.delta) * sqrt(2 * pi / 3) * exp(2 * pi) *
               sqrt(boost::math::zeta(1 + 4 * k.delta)) * pow(k.c_delta, Real(2.5)) * to_real(totient(M));
    Real den = 1;
    for (auto p : prime_divisors(M)) {
        if (mpz_divisible_ui_p(N.get_mpz_t(), p)) continue;
        Real pr = Real(static_cast<long>(p));
        den *= sqrt(1 - 1 / (pr * pr));
    }
    for (auto p : prime_divisors(N)) den *= sqrt(1 - 1 / Real(static_cast<long>(p)));
    Integer L = M * M * N;
    Real sum = 0;
    Integer M2 = M * M;
    for (auto& dd : divisors(L)) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), M2.get_mpz_t(), dd.get_mpz_t());
        Real ratio = to_real(g) / to_real(M2);
        sum += to_real(Integer(totient(L / dd) * totient(dd) * (L / dd))) * pow(ratio, 4);
    }
    Real tail = sqrt(Real(27) / k.Delta_alpha * to_real(L) / (pi * k.delta_level) + 16);
    return pre * num / den * k.C_eps * pow(to_real(n), Real(0.5) + k.eps) * sqrt(sum) * tail;
}

Real cusp_bound(const ProblemInstance& inst, const Quad& d, CuspProfile profile, const CuspConstants& k) {
    Integer M = 2 * Integer(inst.m() - 2);
    Integer N = level_of_form(inst.family, inst.alpha, d);
    if (profile == CuspProfile::simplified) return cusp_bound_simplified(M, N, inst.h, k);
    return cusp_bound_explicit(M, N, inst.h, k);
}

std::vector<ResidualRow> decomposition_residual(long m, const CoefficientVector& alpha, long n_lo, long n_hi,
                                                int threads) {
    if (n_lo < 0 || n_hi < n_lo) throw UsageError("bad n range");
    PolygonalFamily fam(m);
    Integer hmax = target_h(m, alpha.a, Integer(n_hi));
    if (hmax > 50000000) throw BudgetExceeded("residual table beyond desk scale");
    auto r = theta_counts(m, alpha.a, {1, 1, 1, 1}, hmax.get_si(), threads);
    long cnt = n_hi - n_lo + 1;
    std::vector<ResidualRow> rows(cnt);
    transcendental_part(alpha);   // fill the cache before the workers start
    parallel_chunks(cnt, threads, [&](long b, long e, int) {
        for (long i = b; i < e; ++i) {
            ProblemInstance inst(fam, alpha, Integer(n_lo + i));
            auto ec = assemble_eisenstein(inst, {1, 1, 1, 1});
            ResidualRow row;
            row.n = inst.n;
            row.h = inst.h;
            row.r = Integer(static_cast<unsigned long>(r[inst.h.get_si()]));
            row.a_E = ec.value;
            row.residual = to_real(row.r) - ec.value;
            rows[i] = row;
        }
    });
    return rows;
}

}  // namespace polyrep
