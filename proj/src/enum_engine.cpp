#include "polyrep/enum_engine.hpp"

#include <cmath>

#include "polyrep/parallel.hpp"

namespace polyrep {

namespace {

using ll = long;

constexpr ll kMaxH = 1LL << 60;

ll isqrt_ll(ll v) {
    if (v <= 0) return 0;
    ll r = static_cast<ll>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

ll floor_div(ll a, ll b) {
    ll q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

ll ceil_div(ll a, ll b) { return -floor_div(-a, b); }

struct Axis {
    ll A, s, a;
    // y with a*(A y + s)^2 <= R
    std::pair<ll, ll> range(ll R) const {
        ll r = isqrt_ll(R / a);
        return {ceil_div(-r - s, A), floor_div(r - s, A)};
    }
    ll val(ll y) const {
        ll X = A * y + s;
        return a * X * X;
    }
};

std::array<Axis, 4> axes(long m, const Quad& alpha, const Quad& d) {
    std::array<Axis, 4> ax;
    for (int j = 0; j < 4; ++j) ax[j] = Axis{2 * (m - 2) * d[j], 4 - m, alpha[j]};
    return ax;
}

ll to_ll(const Integer& z, const char* what) {
    if (z < 0 || z > kMaxH) throw BudgetExceeded(std::string(what) + " outside the enumeration range");
    return z.get_si();
}

template <class Emit>
void enumerate_from(const std::array<Axis, 4>& ax, ll y1, ll h, Emit&& emit) {
    ll r1 = h - ax[0].val(y1);
    if (r1 < 0) return;
    auto [lo2, hi2] = ax[1].range(r1);
    for (ll y2 = lo2; y2 <= hi2; ++y2) {
        ll r2 = r1 - ax[1].val(y2);
        if (r2 < 0) continue;
        auto [lo3, hi3] = ax[2].range(r2);
        for (ll y3 = lo3; y3 <= hi3; ++y3) {
            ll r3 = r2 - ax[2].val(y3);
            if (r3 < 0 || r3 % ax[3].a != 0) continue;
            ll q = r3 / ax[3].a;
            ll X = isqrt_ll(q);
            if (X * X != q) continue;
            for (ll X4 : {-X, X}) {
                if ((X4 - ax[3].s) % ax[3].A == 0) emit(Quad{y1, y2, y3, (X4 - ax[3].s) / ax[3].A});
                if (X == 0) break;
            }
        }
    }
}

}  // namespace

void ConstraintSpec::validate(const CoefficientVector& alpha) const {
    if (mode == ConstraintMode::plain) return;
    Integer two_prod = 2 * alpha.product();
    for (auto p : P) {
        if (!is_prime(Integer(p))) throw UsageError("P must contain primes only");
        if (mpz_divisible_ui_p(two_prod.get_mpz_t(), p))
            throw UsageError("sieve prime set may not contain divisors of 2*prod(alpha): " + std::to_string(p));
    }
    if (mode == ConstraintMode::sieve_Fc) {
        for (auto p : prime_divisors(two_prod))
            if (!caps.count(p)) throw UsageError("missing exponent cap for p = " + std::to_string(p));
    }
}

bool ConstraintSpec::passes_P(const Quad& x) const {
    if (P.empty()) return true;
    for (auto xj : x) {
        if (xj == 0) {
            if (zero_divisible) return false;
            continue;
        }
        for (auto p : P)
            if (xj % static_cast<ll>(p) == 0) return false;
    }
    return true;
}

bool ConstraintSpec::passes_caps(const Quad& x) const {
    for (auto& [p, c] : caps) {
        for (auto xj : x) {
            if (xj == 0) return false;
            ll v = xj;
            int o = 0;
            while (v % static_cast<ll>(p) == 0 && o < c) {
                v /= static_cast<ll>(p);
                ++o;
            }
            if (o >= c) return false;
        }
    }
    return true;
}

RepresentationSet count_representations(const ProblemInstance& inst, const Quad& d, int threads, bool materialize) {
    for (auto dj : d)
        if (dj <= 0) throw UsageError("scaling entries must be positive");
    RepresentationSet rs{inst.m(), inst.alpha.a, inst.n, inst.h, d, {}, 0};
    ll h = to_ll(inst.h, "h");
    auto ax = axes(inst.m(), inst.alpha.a, d);
    auto [lo, hi] = ax[0].range(h);
    long span = hi >= lo ? static_cast<long>(hi - lo + 1) : 0;
    if (span == 0) return rs;
    int k = std::max(1, std::min<int>(threads > 0 ? threads : default_threads(), static_cast<int>(span)));
    std::vector<std::vector<Quad>> parts(k);
    std::vector<std::uint64_t> counts(k, 0);
    parallel_chunks(span, k, [&](long b, long e, int c) {
        for (long i = b; i < e; ++i) {
            enumerate_from(ax, lo + i, h, [&](const Quad& y) {
                ++counts[c];
                if (materialize) parts[c].push_back(y);
            });
        }
    });
    std::uint64_t total = 0;
    for (int c = 0; c < k; ++c) {
        total += counts[c];
        rs.solutions.insert(rs.solutions.end(), parts[c].begin(), parts[c].end());
    }
    rs.count = Integer(static_cast<unsigned long>(total));
    return rs;
}

std::vector<std::uint64_t> theta_counts(long m, const Quad& alpha, const Quad& d, long h_max, int threads) {
    if (h_max < 0) return {};
    auto ax = axes(m, alpha, d);
    // per-axis value lists, then two pair convolutions, then a sparse product
    std::array<std::vector<ll>, 4> vals;
    for (int j = 0; j < 4; ++j) {
        auto [lo, hi] = ax[j].range(h_max);
        for (ll y = lo; y <= hi; ++y) vals[j].push_back(ax[j].val(y));
    }
    auto pair = [&](int i, int j) {
        std::map<ll, std::uint64_t> acc;
        for (ll u : vals[i])
            for (ll v : vals[j])
                if (u + v <= h_max) acc[u + v]++;
        return std::vector<std::pair<ll, std::uint64_t>>(acc.begin(), acc.end());
    };
    auto p12 = pair(0, 1);
    auto p34 = pair(2, 3);
    int k = std::max(1, std::min<int>(threads > 0 ? threads : default_threads(), static_cast<int>(p12.size())));
    std::vector<std::vector<std::uint64_t>> part(k, std::vector<std::uint64_t>(h_max + 1, 0));
    parallel_chunks(static_cast<long>(p12.size()), k, [&](long b, long e, int c) {
        auto& out = part[c];
        for (long i = b; i < e; ++i) {
            auto [u, cu] = p12[i];
            for (auto& [v, cv] : p34) {
                if (u + v > h_max) break;
                out[u + v] += cu * cv;
            }
        }
    });
    std::vector<std::uint64_t> r(h_max + 1, 0);
    for (auto& pc : part)
        for (long i = 0; i <= h_max; ++i) r[i] += pc[i];
    return r;
}

Integer direct_sieve_count(const ProblemInstance& inst, const Quad& ell, const std::set<unsigned long>& P,
                           bool zero_divisible, int threads) {
    ConstraintSpec spec;
    spec.P = P;
    spec.zero_divisible = zero_divisible;
    auto rs = count_representations(inst, ell, threads);
    unsigned long c = 0;
    for (auto& y : rs.solutions)
        if (spec.passes_P(y)) ++c;
    return Integer(c);
}

Integer filtered_count_c(const ProblemInstance& inst, const Quad& ell, const ConstraintSpec& spec, int threads) {
    auto rs = count_representations(inst, ell, threads);
    unsigned long c = 0;
    for (auto& y : rs.solutions)
        if (spec.passes_P(y) && spec.passes_caps(y)) ++c;
    return Integer(c);
}

Integer direct_sieve_count_c(const ProblemInstance& inst, const Quad& ell, const ConstraintSpec& spec, int threads) {
    std::vector<std::pair<unsigned long, int>> caps(spec.caps.begin(), spec.caps.end());
    if (caps.size() > 3) throw BudgetExceeded("signed sum over more than 3 cap primes");
    ConstraintSpec ponly = spec;
    ponly.caps.clear();
    Integer total = 0;
    // one nibble of b-bits per cap prime
    const unsigned long combos = 1UL << (4 * caps.size());
    for (unsigned long mask = 0; mask < combos; ++mask) {
        Quad t{1, 1, 1, 1};
        int sign = 1;
        for (size_t i = 0; i < caps.size(); ++i) {
            ll pc = 1;
            for (int e = 0; e < caps[i].second; ++e) pc *= static_cast<ll>(caps[i].first);
            for (int j = 0; j < 4; ++j) {
                if (mask >> (4 * i + j) & 1) {
                    t[j] *= pc;
                    sign = -sign;
                }
            }
        }
        Quad td{};
        for (int j = 0; j < 4; ++j) td[j] = t[j] * ell[j];
        auto rs = count_representations(inst, td, threads);
        long c = 0;
        for (auto& y : rs.solutions)
            if (ponly.passes_P(y)) ++c;
        total += sign * c;
    }
    return total;
}

RepresentationSet witness_search(const ProblemInstance& inst, const WitnessOptions& opt, int threads) {
    if (opt.factor_bound < 0) throw UsageError("factor bound must be >= 0");
    auto rs = count_representations(inst, Quad{1, 1, 1, 1}, threads);
    std::vector<Quad> keep;
    for (auto& y : rs.solutions) {
        bool ok = true;
        for (auto yj : y) {
            if (yj == 0) {
                if (!opt.allow_zero) ok = false;
                continue;
            }
            for (auto p : opt.exclude_P)
                if (yj % static_cast<ll>(p) == 0) ok = false;
            if (ok && prime_factor_count(Integer(static_cast<long>(yj)), opt.mode) > opt.factor_bound) ok = false;
            if (!ok) break;
        }
        if (ok) keep.push_back(y);
    }
    rs.solutions = std::move(keep);
    rs.count = Integer(static_cast<unsigned long>(rs.solutions.size()));
    return rs;
}

}  // namespace polyrep
