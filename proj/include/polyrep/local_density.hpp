#pragma once

#include <optional>

#include "polyrep/poly_core.hpp"

namespace polyrep {

enum class DensityMethod { closed2, closed_div, kane, oracle };
std::string to_string(DensityMethod m);
DensityMethod parse_density_method(const std::string& s);

struct LocalDensity {
    unsigned long p = 0;
    Rational value;
    DensityMethod method = DensityMethod::oracle;
    Quad d{1, 1, 1, 1};
};

// Coordinatewise data sum b_i x_i^2 + c_i x_i = target over Z_p
struct QuadraticData {
    std::array<Integer, 4> b;
    std::array<Integer, 4> c;
    Rational target;
};

QuadraticData quadratic_data(const ProblemInstance& inst, const Quad& d);

// p = 2. corrected: exponent 2 + max(1, min ord_2(alpha_j d_j)); as_stated drops the max.
enum class Dyadic { corrected, as_stated };
LocalDensity density_at_2(const ProblemInstance& inst, const Quad& d, Dyadic variant = Dyadic::corrected);

// odd p | m-2. statement: n in gcd Z_p; proof_display: 8(m-2)n in gcd Z_p
enum class DivisorCondition { statement, proof_display };
LocalDensity density_at_divisor_prime(const ProblemInstance& inst, const Quad& d, unsigned long p,
                                      DivisorCondition cond = DivisorCondition::statement);

struct KaneData {
    unsigned long p;
    std::array<int, 4> t;
    std::array<bool, 4> in_D;
    std::array<int, 4> unit_symbol;   // (u_i / p), u_i unit part of b_i
    int t_d;                          // kInfiniteOrd when D_p is empty
    Rational nn;                      // target + sum over N_p of c_i^2/(4 b_i)
    int t_n;                          // kInfiniteOrd when nn == 0
    int nn_symbol;                    // (u_n / p), 0 when nn == 0

    int size_N() const;
    int l(int t) const;
    int twice_tau(int t) const;
    int delta_sign(int t, int extra_eps) const;   // eps^(3l+extra) * prod (u_i/p), exponent even
};

KaneData kane_data(unsigned long p, const QuadraticData& q);
LocalDensity density_kane(unsigned long p, const QuadraticData& q);

struct OracleResult {
    Rational value;
    int depth = 0;
    bool stable = false;   // equal at depth-1 and depth
};

struct OracleOptions {
    int min_depth = 2;
    int max_depth = 40;
    long max_modulus = 1L << 17;
    double work_budget = 4e8;   // pair-convolution steps per depth
    int threads = 1;
};

// count{x mod p^k : Q(x) = target mod p^k} / p^{3k} at one depth
Rational density_count(unsigned long p, const QuadraticData& q, int k, const OracleOptions& opt = {});
OracleResult density_oracle(unsigned long p, const ProblemInstance& inst, const Quad& d, int k,
                            const OracleOptions& opt = {});
// stability search from the conductor bound upward
OracleResult density_oracle_stable(unsigned long p, const ProblemInstance& inst, const Quad& d,
                                   const OracleOptions& opt = {});
OracleResult density_oracle_stable(unsigned long p, const QuadraticData& q, int min_depth,
                                   const OracleOptions& opt = {});
int conductor_depth(unsigned long p, const ProblemInstance& inst, const Quad& d);

// 1 if 4(m-2) alpha_j s sigma lies in Z_p; needs p | 2(m-2) alpha_j s
int tau_factor(unsigned long p, long m, long alpha_j, const Integer& s, const Rational& sigma);

// dispatch: closed2 at 2 (odd m), closed_div at odd p | m-2, Kane otherwise
LocalDensity local_density(const ProblemInstance& inst, const Quad& d, unsigned long p);

// Bounds by |N_p| for odd p with p not dividing (m-2)(m-4) prod(alpha), p | prod(d).
// applicable only when every ord_p(d_j) <= 1.
struct CaseBound {
    bool applicable = false;
    int size_N = -1;
    bool holds = true;
    Rational lo, hi;
};
CaseBound case_bound(const ProblemInstance& inst, const Quad& d, unsigned long p, const Rational& value);

}  // namespace polyrep
