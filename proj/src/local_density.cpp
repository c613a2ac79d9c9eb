#include "polyrep/local_density.hpp"

#include <algorithm>

#include "polyrep/parallel.hpp"

namespace polyrep {

std::string to_string(DensityMethod m) {
    switch (m) {
        case DensityMethod::closed2: return "closed2";
        case DensityMethod::closed_div: return "closedDiv";
        case DensityMethod::kane: return "kane";
        case DensityMethod::oracle: return "oracle";
    }
    return "?";
}

DensityMethod parse_density_method(const std::string& s) {
    if (s == "closed2") return DensityMethod::closed2;
    if (s == "closedDiv" || s == "closed-div") return DensityMethod::closed_div;
    if (s == "kane") return DensityMethod::kane;
    if (s == "oracle") return DensityMethod::oracle;
    throw UsageError("unknown density method: " + s);
}

QuadraticData quadratic_data(const ProblemInstance& inst, const Quad& d) {
    QuadraticData q;
    long m = inst.m();
    for (int j = 0; j < 4; ++j) {
        Integer a = static_cast<long>(inst.alpha.a[j]);
        Integer dj = static_cast<long>(d[j]);
        q.b[j] = 4 * Integer(m - 2) * (m - 2) * a * dj * dj;
        q.c[j] = -4 * Integer(m - 2) * (m - 4) * a * dj;
    }
    q.target = Rational(8 * Integer(m - 2) * inst.n);
    return q;
}

namespace {

int min_ord_alpha_d(const ProblemInstance& inst, const Quad& d, unsigned long p) {
    int mo = kInfiniteOrd;
    for (int j = 0; j < 4; ++j)
        mo = std::min(mo, ord_p(Integer(static_cast<long>(inst.alpha.a[j] * d[j])), p));
    return mo;
}

Rational pow_p(unsigned long p, int e) { return rpow(Rational(static_cast<long>(p)), e); }

}  // namespace

LocalDensity density_at_2(const ProblemInstance& inst, const Quad& d, Dyadic variant) {
    if (inst.m() % 2 == 0) throw UsageError("closed form at 2 needs odd m");
    int mo = min_ord_alpha_d(inst, d, 2);
    int c = variant == Dyadic::corrected ? 2 + std::max(1, mo) : 2 + mo;
    Integer target = 8 * Integer(inst.m() - 2) * inst.n;
    bool ok = ord_p(target, 2) >= c;
    LocalDensity ld{2, ok ? pow_p(2, c) : Rational(0), DensityMethod::closed2, d};
    return ld;
}

LocalDensity density_at_divisor_prime(const ProblemInstance& inst, const Quad& d, unsigned long p,
                                      DivisorCondition cond) {
    if (p == 2 || (inst.m() - 2) % static_cast<long>(p) != 0)
        throw UsageError("density_at_divisor_prime needs an odd prime dividing m-2");
    int mo = min_ord_alpha_d(inst, d, p);
    Integer lhs = cond == DivisorCondition::statement ? inst.n : 8 * Integer(inst.m() - 2) * inst.n;
    bool ok = ord_p(lhs, p) >= mo;
    int e = ord_p(Integer(inst.m() - 2), p) + mo;
    return LocalDensity{p, ok ? pow_p(p, e) : Rational(0), DensityMethod::closed_div, d};
}

int KaneData::size_N() const {
    int s = 0;
    for (bool b : in_D) s += b ? 0 : 1;
    return s;
}

int KaneData::l(int tt) const {
    int c = 0;
    for (int i = 0; i < 4; ++i)
        if (!in_D[i] && t[i] < tt && ((tt - t[i]) % 2 != 0)) ++c;
    return c;
}

int KaneData::twice_tau(int tt) const {
    int s = 2 * tt;
    for (int i = 0; i < 4; ++i)
        if (!in_D[i] && t[i] < tt) s += t[i] - tt;
    return s;
}

int KaneData::delta_sign(int tt, int extra_eps) const {
    int e = 3 * l(tt) + extra_eps;
    if (e % 2 != 0) throw std::logic_error("odd power of eps_p in a rational term");
    // eps^2 = (-1/p)
    int eps2 = (p % 4 == 1) ? 1 : -1;
    int s = ((e / 2) % 2 == 0) ? 1 : eps2;
    for (int i = 0; i < 4; ++i)
        if (!in_D[i] && t[i] < tt && ((tt - t[i]) % 2 != 0)) s *= unit_symbol[i];
    return s;
}

KaneData kane_data(unsigned long p, const QuadraticData& q) {
    if (p < 3 || !is_prime(Integer(p))) throw UsageError("Kane formula needs an odd prime");
    KaneData k;
    k.p = p;
    k.t_d = kInfiniteOrd;
    k.nn = q.target;
    for (int i = 0; i < 4; ++i) {
        if (q.b[i] == 0) throw UsageError("b_i must be nonzero");
        int ob = ord_p(q.b[i], p), oc = ord_p(q.c[i], p);
        k.t[i] = std::min(ob, oc);
        k.in_D[i] = ob > oc;
        k.unit_symbol[i] = legendre(unit_part(q.b[i], p), p);
        if (k.in_D[i])
            k.t_d = std::min(k.t_d, k.t[i]);
        else
            k.nn += Rational(q.c[i] * q.c[i], 4 * q.b[i]);
    }
    k.nn.canonicalize();
    if (k.nn == 0) {
        k.t_n = kInfiniteOrd;
        k.nn_symbol = 0;
    } else {
        k.t_n = ord_p(k.nn, p);
        Integer num = unit_part(k.nn.get_num(), p), den = unit_part(k.nn.get_den(), p);
        k.nn_symbol = legendre(num, p) * legendre(den, p);
    }
    return k;
}

LocalDensity density_kane(unsigned long p, const QuadraticData& q) {
    KaneData k = kane_data(p, q);
    const Rational one_minus = 1 - Rational(1, static_cast<long>(p));
    auto term = [&](int tt) -> Rational {
        if (k.l(tt) % 2 != 0) return 0;
        int t2 = k.twice_tau(tt);
        if (t2 % 2 != 0) throw std::logic_error("half-integral tau with even l");
        return one_minus * k.delta_sign(tt, 0) * pow_p(p, t2 / 2);
    };
    Rational res = 1;
    int top = std::min(k.t_d, k.t_n);
    if (top == kInfiniteOrd) {
        // nn = 0 and D_p empty: beyond max t_i the terms repeat with period 2, ratio p^-2
        int t0 = 0;
        for (int i = 0; i < 4; ++i) t0 = std::max(t0, k.t[i]);
        for (int tt = 1; tt <= t0; ++tt) res += term(tt);
        Rational tail = term(t0 + 1) + term(t0 + 2);
        res += tail / (1 - pow_p(p, -2));
    } else {
        for (int tt = 1; tt <= top; ++tt) res += term(tt);
        if (k.t_n < k.t_d) {
            int tt = k.t_n + 1;
            int t2 = k.twice_tau(tt);
            if (k.l(tt) % 2 == 0) {
                if (t2 % 2 != 0) throw std::logic_error("half-integral tau with even l");
                res += Rational(-k.delta_sign(tt, 0), static_cast<long>(p)) * pow_p(p, t2 / 2);
            } else {
                // eps^(3l+1) (u_n/p) p^(tau - 1/2)
                if ((t2 - 1) % 2 != 0) throw std::logic_error("boundary exponent not integral");
                res += Rational(k.delta_sign(tt, 1) * k.nn_symbol) * pow_p(p, (t2 - 1) / 2);
            }
        }
    }
    return LocalDensity{p, res, DensityMethod::kane, {1, 1, 1, 1}};
}

namespace {

using u128 = unsigned __int128;

Integer from_u128(u128 v) {
    Integer hi = static_cast<unsigned long>(v >> 64);
    Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
    return (hi << 64) + lo;
}

long mod_of(const Integer& z, long M) {
    Integer r = z % M;
    if (r < 0) r += M;
    return r.get_si();
}

}  // namespace

Rational density_count(unsigned long p, const QuadraticData& q, int k, const OracleOptions& opt) {
    if (k < 1) throw UsageError("oracle depth must be >= 1");
    Integer Mz = ipow(Integer(p), k);
    if (Mz > opt.max_modulus) throw BudgetExceeded("oracle modulus p^k = " + Mz.get_str() + " exceeds limit");
    long M = Mz.get_si();
    std::array<std::vector<std::pair<long, std::uint64_t>>, 4> supp;
    for (int i = 0; i < 4; ++i) {
        long b = mod_of(q.b[i], M), c = mod_of(q.c[i], M);
        std::vector<std::uint64_t> hist(M, 0);
        for (long x = 0; x < M; ++x) {
            long v = static_cast<long>((static_cast<__int128>(b) * x % M * x + static_cast<__int128>(c) * x) % M);
            hist[v]++;
        }
        for (long v = 0; v < M; ++v)
            if (hist[v]) supp[i].push_back({v, hist[v]});
    }
    double work = double(supp[0].size()) * supp[1].size() + double(supp[2].size()) * supp[3].size();
    if (work > opt.work_budget) throw BudgetExceeded("oracle work exceeds budget at p^k = " + Mz.get_str());
    auto pair = [&](int i, int j) {
        std::vector<std::uint64_t> acc(M, 0);
        for (auto& [u, cu] : supp[i])
            for (auto& [v, cv] : supp[j]) {
                long w = u + v;
                if (w >= M) w -= M;
                acc[w] += cu * cv;
            }
        return acc;
    };
    auto p12 = pair(0, 1);
    auto p34 = pair(2, 3);
    // target reduced mod M; its denominator is prime to p
    Integer tden = q.target.get_den();
    if (mpz_divisible_ui_p(tden.get_mpz_t(), p)) throw UsageError("target not p-integral");
    Integer inv;
    Integer tden_mod = tden % Mz;
    if (mpz_invert(inv.get_mpz_t(), tden_mod.get_mpz_t(), Mz.get_mpz_t()) == 0) inv = 1;
    long t = mod_of(Integer(q.target.get_num()) * inv, M);
    u128 total = 0;
    for (long u = 0; u < M; ++u) {
        if (!p12[u]) continue;
        long v = t - u;
        if (v < 0) v += M;
        total += static_cast<u128>(p12[u]) * p34[v];
    }
    Rational r(from_u128(total), ipow(Integer(p), 3 * k));
    r.canonicalize();
    return r;
}

int conductor_depth(unsigned long p, const ProblemInstance& inst, const Quad& d) {
    Integer g = 4 * Integer(inst.m() - 2) * (inst.m() - 2) * inst.alpha.product();
    for (auto dj : d) g *= Integer(static_cast<long>(dj)) * static_cast<long>(dj);
    int o = ord_p(g, p);
    int oh = ord_p(inst.h, p);
    if (oh == kInfiniteOrd) oh = 0;
    return o + oh + 1;
}

OracleResult density_oracle(unsigned long p, const ProblemInstance& inst, const Quad& d, int k,
                            const OracleOptions& opt) {
    auto q = quadratic_data(inst, d);
    OracleResult r;
    r.depth = k;
    r.value = density_count(p, q, k, opt);
    r.stable = k >= 2 && density_count(p, q, k - 1, opt) == r.value;
    return r;
}

OracleResult density_oracle_stable(unsigned long p, const QuadraticData& q, int min_depth, const OracleOptions& opt) {
    int k = std::max({2, opt.min_depth, min_depth});
    Rational prev = density_count(p, q, k, opt);
    for (++k; k <= opt.max_depth; ++k) {
        Rational cur = density_count(p, q, k, opt);
        if (cur == prev) return OracleResult{cur, k, true};
        prev = cur;
    }
    throw BudgetExceeded("oracle did not stabilise within max depth");
}

OracleResult density_oracle_stable(unsigned long p, const ProblemInstance& inst, const Quad& d,
                                   const OracleOptions& opt) {
    return density_oracle_stable(p, quadratic_data(inst, d), conductor_depth(p, inst, d), opt);
}

int tau_factor(unsigned long p, long m, long alpha_j, const Integer& s, const Rational& sigma) {
    Integer base = 2 * Integer(m - 2) * alpha_j * s;
    if (!mpz_divisible_ui_p(base.get_mpz_t(), p)) throw UsageError("tau_factor needs p | 2(m-2) alpha_j s");
    Rational v = Rational(2 * base) * sigma;
    v.canonicalize();
    return ord_p(v, p) >= 0 ? 1 : 0;
}

LocalDensity local_density(const ProblemInstance& inst, const Quad& d, unsigned long p) {
    if (p == 2) {
        if (inst.m() % 2 != 0) return density_at_2(inst, d);
        auto o = density_oracle_stable(2, inst, d);
        return LocalDensity{2, o.value, DensityMethod::oracle, d};
    }
    if ((inst.m() - 2) % static_cast<long>(p) == 0) return density_at_divisor_prime(inst, d, p);
    auto ld = density_kane(p, quadratic_data(inst, d));
    ld.d = d;
    return ld;
}

CaseBound case_bound(const ProblemInstance& inst, const Quad& d, unsigned long p, const Rational& value) {
    CaseBound cb;
    long m = inst.m();
    Integer pz = static_cast<long>(p);
    if (p == 2 || (m - 2) % static_cast<long>(p) == 0 || (m - 4) % static_cast<long>(p) == 0) return cb;
    if (mpz_divisible_ui_p(inst.alpha.product().get_mpz_t(), p)) return cb;
    bool divides = false;
    for (auto dj : d) {
        int o = ord_p(Integer(static_cast<long>(dj)), p);
        if (o > 1) return cb;
        divides = divides || o == 1;
    }
    if (!divides) return cb;
    KaneData k = kane_data(p, quadratic_data(inst, d));
    cb.applicable = true;
    cb.size_N = k.size_N();
    Rational ip(1, static_cast<long>(p));
    switch (cb.size_N) {
        case 0: {
            bool pn = mpz_divisible_ui_p(Integer(8 * Integer(m - 2) * inst.n).get_mpz_t(), p);
            cb.lo = cb.hi = pn ? Rational(static_cast<long>(p)) : Rational(0);
            break;
        }
        case 1: cb.lo = 0; cb.hi = 2; break;
        case 2: cb.lo = ip; cb.hi = 2 - ip; break;
        case 3: cb.lo = 1 - ip; cb.hi = 1 + ip; break;
        default: cb.applicable = false; return cb;
    }
    cb.holds = cb.lo <= value && value <= cb.hi;
    return cb;
}

}  // namespace polyrep
