#pragma once

#include <set>

#include "polyrep/eisenstein.hpp"
#include "polyrep/enum_engine.hpp"

namespace polyrep {

enum class Sign { plus, minus };

// exact comparisons throughout: D and beta are rationals
int rosser_lambda(const Integer& d, const Rational& D, const Rational& beta, Sign sign);
int capital_lambda_minus(const Integer& d, const Rational& D, const Rational& beta);

struct SieveWeightTable {
    Rational D, beta;
    std::vector<unsigned long> pool;
    std::map<Integer, int> plus, minus;   // nonzero weights only

    int lambda(const Integer& d, Sign s) const;
    int cap_minus(const Integer& d) const { return 4 * lambda(d, Sign::minus) - 3 * lambda(d, Sign::plus); }
};
SieveWeightTable weight_table(const std::vector<unsigned long>& pool, const Rational& D, const Rational& beta);

struct SandwichReport {
    Integer c;
    int sum_minus, sum_mu, sum_plus;
    bool holds;
};
SandwichReport weight_sandwich_check(const Integer& c, const Rational& D, const Rational& beta);

struct QuadSandwich {
    int lhs;   // prod of Moebius sums
    int rhs;   // sum_k L_k prod_{j != k} U_j - 3 prod U
    bool holds;
};
QuadSandwich quad_sandwich_check(const std::array<Integer, 4>& c, const Rational& D, const Rational& beta);

// slot_one: Lambda^- on the first coordinate only; symmetric: averaged over the slot
enum class LowerLayout { slot_one, symmetric };

struct WeightedSieveSpec {
    Quad ell{1, 1, 1, 1};
    ConstraintSpec inner;                 // F_{c,h}(A_ell, P1) with P1 = inner.P
    std::vector<unsigned long> pool;      // P2, disjoint from P1 and from primes of 2 prod(alpha)
    Rational D = 100, beta = 2;
    LowerLayout layout = LowerLayout::symmetric;
};

struct WeightedSieveResult {
    Integer lower;       // weighted lower sum
    Integer upper;       // all lambda^+ weights
    Integer truth;       // S_{c,h}(A_ell, P1 u P2)
    Integer base;        // S_{c,h}(A_ell, P1)
};

// exact, per-solution evaluation of the divisor sums
WeightedSieveResult weighted_sieve_sum(const ProblemInstance& inst, const WeightedSieveSpec& spec, int threads = 0);
// exact, literal quadruple sum over divisors of R with S_{c,h}(A_{d ell}, P1) counts
Integer weighted_sieve_sum_literal(const ProblemInstance& inst, const WeightedSieveSpec& spec, Sign which,
                                   int threads = 0);

Real harmonic_H(const Integer& n);

// sum_b (-1)^{|b|} p^{-c|b|} b_p(p^{c b}) / b_p(1)
Rational local_C(unsigned long p, int c_p, const ProblemInstance& inst, const Quad& base = {1, 1, 1, 1});

struct MainTermW {
    Rational prod_C;
    Rational sieve_product;   // prod over P_{z0} of (1 - beta_{(p,1,1,1)})
    Rational W;
    std::vector<unsigned long> pool;
    std::string diagnostic;   // set when a density vanishes; W is then 0
};
// caps must cover every prime of 2 prod(alpha)
MainTermW main_term_W(const ProblemInstance& inst, const Rational& z0, const std::map<unsigned long, int>& caps);

// primes p < z0 prime to 2 prod(alpha)
std::vector<unsigned long> sieve_pool(const CoefficientVector& alpha, const Rational& z0);
constexpr std::size_t kPoolCap = 12;

struct MSumOptions {
    Rational D = 100, beta = 2;
    LowerLayout layout = LowerLayout::slot_one;
    double term_budget = 5e7;
};
// eps = -1 uses Lambda^- (layout as configured), eps = +1 all lambda^+
Rational m_pm_sums(const ProblemInstance& inst, const std::vector<unsigned long>& pool, int eps,
                   const MSumOptions& opt = {}, const Quad& base = {1, 1, 1, 1});

// a_E(X^ell) * prod C_p * M^{-+} with pool = P2; needs P1 empty
Real weighted_sieve_main_term(const ProblemInstance& inst, const WeightedSieveSpec& spec, Sign which);

struct SieveConfig {
    Rational theta = Rational(1, 2000);
    Real s = 38;
    Real z = 0;     // 0 means h^theta per n
    Real eps = 0.05;
    Real C_err = 1;
    Real B = 1, C = 1;
    int factor_bound = 3;
    bool allow_zero = true;
    FactorCountMode mode = FactorCountMode::with_multiplicity;
};

struct GateReport {
    Rational theta;
    bool arithmetic_gate;   // 988 theta + 1/2 < 1
    bool hypothesis_gate;   // theta < 1/1977
    Rational slack;         // 1 - (988 theta + 1/2)
};
GateReport theta_gate(const Rational& theta);

Real s_gate(const Real& s);   // 1 - e^{37-s} 1.083^10
Real K_constant(const Real& z, const Real& z0);
Real z0_policy(const Real& z);   // log(z)^33
Real positivity_expression(const Real& z, const Real& z0, const Real& s, const Real& eps, const Real& C_err);
Real delta_policy(const Integer& n, const Integer& h, const Real& B);

struct DriverRow {
    Integer n, h;
    std::size_t witnesses;
    std::size_t solutions;
    std::vector<unsigned long> excluded;
};

struct DriverReport {
    GateReport gate;
    Real s_gate_value;
    std::vector<DriverRow> rows;
    std::size_t covered = 0;
    double coverage = 0;
    Real K, z0, positivity;   // evaluated at the largest h of the range
};

DriverReport theorem_driver(long m, const CoefficientVector& alpha, long n_lo, long n_hi, const SieveConfig& cfg,
                            int threads = 0);

struct ThresholdRow {
    long m;
    Quad alpha;
    Rational exp_M, exp_alpha;
    Real threshold;
    Integer min_n;   // least n with h(n) >= threshold
    bool exact;
};
// exponents derived from the cusp bound exponents 11/2 and 5/2 with level 4(m-2)^2 prod(alpha)
std::pair<Rational, Rational> size_threshold_exponents();
ThresholdRow size_threshold(long m, const CoefficientVector& alpha, const Rational& eps, const Rational& C);
bool size_threshold_check(long m, const CoefficientVector& alpha, const Integer& n, const Rational& eps, const Rational& C);

}  // namespace polyrep
