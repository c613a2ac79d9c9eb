#pragma once

#include "polyrep/local_density.hpp"

namespace polyrep {

// the primitive character mod 4
int psi_mod4(const Integer& n);

// Kronecker character of the fundamental discriminant attached to prod(alpha):
// disc = prod if prod = 1 mod 4, else 4 prod
struct FormCharacter {
    Integer disc;
    int operator()(unsigned long p) const;
};
FormCharacter form_character(const CoefficientVector& alpha);

Real hurwitz_zeta2(const Real& q);
Real l_value(const Integer& disc);   // L(2, chi_disc), disc = 1 gives zeta(2)
Real l_value_psi();                   // disc -4: Catalan's constant

enum class DensitySource { closed_kane, oracle };
std::string to_string(DensitySource s);

struct EisensteinCoefficient {
    Integer h;
    Quad d{1, 1, 1, 1};
    std::vector<unsigned long> S;
    std::vector<LocalDensity> locals;
    Integer disc;               // character discriminant
    Rational rational_part;     // h/(16 (m-2)^4 prod d) * prod_S b_p / (1 - chi(p) p^-2)
    Real transcendental;        // pi^2 / (sqrt(prod alpha) L(2, chi))
    Real value;
    unsigned long obstruction_prime = 0;   // nonzero when some b_p = 0
};

std::vector<unsigned long> support_primes(const ProblemInstance& inst, const Quad& d);

struct AssembleOptions {
    DensitySource source = DensitySource::closed_kane;
    std::vector<unsigned long> extra_primes;   // S-enlargement
    OracleOptions oracle;
};

EisensteinCoefficient assemble_eisenstein(const ProblemInstance& inst, const Quad& d, const AssembleOptions& opt = {});
Real transcendental_part(const CoefficientVector& alpha);

// three-case display at s = 2; chi = psi(p) in {+1,-1}; the psi(p) = 0 branch is
// only reachable through gamma_unified
Rational gamma_p_case(unsigned long p, int v, int chi, bool c_unit);
// (1 - (chi/p)^{v+1}) / (1 - chi/p); equals the first case at chi = -1
Rational gamma_chi(unsigned long p, int v, int chi);
// b_p(X^1, h) / (1 - chi(p) p^-2)
Rational gamma_unified(const ProblemInstance& inst, unsigned long p);

// p^{-sum c} b_p(p^c) / b_p(1) for odd p
Rational beta_ratio(unsigned long p, const std::array<int, 4>& c, const ProblemInstance& inst,
                    const Quad& base = {1, 1, 1, 1});

struct BoundCheck {
    std::string name;
    Rational value;
    Rational bound;
    bool holds;
    bool informational = false;
};

// class by p: p prime to (m-2)(m-4) and either prime to prod(alpha)
// (good class) or dividing it with p >= 5 (alpha class)
std::vector<BoundCheck> check_beta_bounds(unsigned long p, const ProblemInstance& inst);
// prod_{p|d} beta <= prod w~(d_j)/d_j for squarefree d at good primes; compared as fourth powers
BoundCheck check_w_envelope(const Quad& d, const ProblemInstance& inst);

Rational g_correlation(const Quad& d, const ProblemInstance& inst);
Rational g_bound(const Quad& d);   // 4^4 prod_{i<j} gcd(d_i, d_j)^2

enum class CuspProfile { simplified, explicit_display };
struct CuspConstants {
    Real C = 1, eps = 0.05;
    // explicit display inputs
    Real delta = 1, c_delta = 1, C_eps = 1, delta_level = 1, Delta_alpha = 1;
};
Real cusp_bound(const ProblemInstance& inst, const Quad& d, CuspProfile profile, const CuspConstants& k);
Real cusp_bound_simplified(const Integer& M, const Integer& N, const Integer& n, const CuspConstants& k);
Real cusp_bound_explicit(const Integer& M, const Integer& N, const Integer& n, const CuspConstants& k);

struct ResidualRow {
    Integer n, h;
    Integer r;
    Real a_E;
    Real residual;
};
std::vector<ResidualRow> decomposition_residual(long m, const CoefficientVector& alpha, long n_lo, long n_hi,
                                                int threads = 0);

}  // namespace polyrep
