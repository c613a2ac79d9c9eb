#pragma once

#include <set>

#include "polyrep/poly_core.hpp"

namespace polyrep {

struct RepresentationSet {
    long m;
    Quad alpha;
    Integer n;
    Integer h;
    Quad d;
    std::vector<Quad> solutions;   // lexicographic
    Integer count = 0;
};

enum class ConstraintMode { plain, sieve_F, sieve_Fc };

// zero_divisible: x_j = 0 counts as divisible by every prime (p | 0).
// Exponent caps always read ord_p(0) as infinite.
struct ConstraintSpec {
    std::set<unsigned long> P;
    std::map<unsigned long, int> caps;
    ConstraintMode mode = ConstraintMode::plain;
    bool zero_divisible = true;

    void validate(const CoefficientVector& alpha) const;
    bool passes_P(const Quad& x) const;
    bool passes_caps(const Quad& x) const;
};

RepresentationSet count_representations(const ProblemInstance& inst, const Quad& d, int threads = 0,
                                        bool materialize = true);

// r(h) for every h <= h_max on the d-coset; index = h
std::vector<std::uint64_t> theta_counts(long m, const Quad& alpha, const Quad& d, long h_max, int threads = 0);

Integer direct_sieve_count(const ProblemInstance& inst, const Quad& ell, const std::set<unsigned long>& P,
                           bool zero_divisible = true, int threads = 0);

// |F_{c,h}| by direct filtering of the ell-coset solutions
Integer filtered_count_c(const ProblemInstance& inst, const Quad& ell, const ConstraintSpec& spec, int threads = 0);

// the same set size as an inclusion-exclusion over b(p) in {0,1}^4, each term a
// separate enumeration of the rescaled coset
Integer direct_sieve_count_c(const ProblemInstance& inst, const Quad& ell, const ConstraintSpec& spec,
                             int threads = 0);

struct WitnessOptions {
    int factor_bound = 3;
    std::set<unsigned long> exclude_P;
    bool allow_zero = true;
    FactorCountMode mode = FactorCountMode::with_multiplicity;
};

RepresentationSet witness_search(const ProblemInstance& inst, const WitnessOptions& opt, int threads = 0);

}  // namespace polyrep
