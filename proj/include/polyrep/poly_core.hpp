#pragma once

#include "polyrep/arith.hpp"

namespace polyrep {

struct PolygonalFamily {
    long m = 5;

    explicit PolygonalFamily(long m_);
    // m odd and m-4 prime to 15
    bool theorem_mode() const;
};

struct CoefficientVector {
    Quad a{1, 1, 1, 1};

    // rejects a_j <= 0 and products that are even or not squarefree
    explicit CoefficientVector(const Quad& a_);
    Integer product() const;
};

struct ProblemInstance {
    PolygonalFamily family;
    CoefficientVector alpha;
    Integer n;
    Integer h;

    ProblemInstance(const PolygonalFamily& f, const CoefficientVector& a, const Integer& n_);
    long m() const { return family.m; }
};

struct LatticeCoset {
    long m;
    Quad alpha;
    Quad d;
    std::array<Integer, 4> gram_diag;
    long shift_num;   // 4 - m
    long shift_den;   // 2(m - 2)

    Integer discriminant() const;
    long conductor() const;
    // Q(v + x), x in d-scaled coordinates
    Integer q_value(const Quad& x) const;
};

Integer eval_polygonal(const PolygonalFamily& f, const Integer& x);
Integer shifted_square_coordinate(const PolygonalFamily& f, long d_j, const Integer& x);
Integer target_h(long m, const Quad& alpha, const Integer& n);
LatticeCoset build_coset(const PolygonalFamily& f, const CoefficientVector& alpha, const Quad& d);

// standard level: smallest N with N*(2G)^-1 integral with even diagonal
Integer level_of_diagonal(const std::array<Integer, 4>& gram_diag);
Integer level_of_form(const PolygonalFamily& f, const CoefficientVector& alpha, const Quad& d);

Quad parse_quad(const std::string& s);
std::string quad_to_string(const Quad& q);

}  // namespace polyrep
