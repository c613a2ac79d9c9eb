#include "polyrep/poly_core.hpp"

#include <sstream>

namespace polyrep {

PolygonalFamily::PolygonalFamily(long m_) : m(m_) {
    if (m < 3) throw UsageError("polygon order m must be >= 3, got " + std::to_string(m));
}

bool PolygonalFamily::theorem_mode() const {
    return (m % 2 != 0) && ((m - 4) % 3 != 0) && ((m - 4) % 5 != 0);
}

CoefficientVector::CoefficientVector(const Quad& a_) : a(a_) {
    for (auto x : a)
        if (x <= 0) throw UsageError("coefficients must be positive");
    Integer p = product();
    if (mpz_even_p(p.get_mpz_t())) throw UsageError("product of coefficients must be odd");
    if (!is_squarefree(p)) throw UsageError("product of coefficients must be squarefree");
}

Integer CoefficientVector::product() const {
    Integer p = 1;
    for (auto x : a) p *= Integer(static_cast<long>(x));
    return p;
}

ProblemInstance::ProblemInstance(const PolygonalFamily& f, const CoefficientVector& a, const Integer& n_)
    : family(f), alpha(a), n(n_) {
    if (n < 0) throw UsageError("target n must be nonnegative");
    h = target_h(f.m, a.a, n);
}

Integer eval_polygonal(const PolygonalFamily& f, const Integer& x) {
    Integer num = (f.m - 2) * x * x - (f.m - 4) * x;
    // always even: x^2 + x when m odd
    return num / 2;
}

Integer shifted_square_coordinate(const PolygonalFamily& f, long d_j, const Integer& x) {
    return 2 * (f.m - 2) * Integer(d_j) * x + (4 - f.m);
}

Integer target_h(long m, const Quad& alpha, const Integer& n) {
    Integer s = 0;
    for (auto a : alpha) s += Integer(static_cast<long>(a)) * (m - 4) * (m - 4);
    return 8 * (m - 2) * n + s;
}

Integer LatticeCoset::discriminant() const {
    Integer p = 1;
    for (auto& g : gram_diag) p *= g;
    return p;
}

long LatticeCoset::conductor() const {
    Integer num = shift_num, den = shift_den;
    Integer g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Integer(den / g).get_si();
}

Integer LatticeCoset::q_value(const Quad& x) const {
    Integer s = 0;
    for (int j = 0; j < 4; ++j) {
        Integer X = Integer(shift_den) * Integer(static_cast<long>(d[j])) * Integer(static_cast<long>(x[j])) + shift_num;
        s += Integer(static_cast<long>(alpha[j])) * X * X;
    }
    return s;
}

LatticeCoset build_coset(const PolygonalFamily& f, const CoefficientVector& alpha, const Quad& d) {
    LatticeCoset c;
    c.m = f.m;
    c.alpha = alpha.a;
    c.d = d;
    for (int j = 0; j < 4; ++j) {
        if (d[j] <= 0) throw UsageError("scaling entries must be positive");
        Integer dj = static_cast<long>(d[j]);
        c.gram_diag[j] = 4 * Integer(f.m - 2) * (f.m - 2) * static_cast<long>(alpha.a[j]) * dj * dj;
    }
    c.shift_num = 4 - f.m;
    c.shift_den = 2 * (f.m - 2);
    return c;
}

Integer level_of_diagonal(const std::array<Integer, 4>& gram_diag) {
    // (2G)^-1 = diag(1/(2g)); N/(2g) must be even, so N = lcm(4g)
    Integer n = 1;
    for (auto& g : gram_diag) {
        if (g <= 0) throw UsageError("gram entries must be positive");
        Integer need = 4 * g;
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), need.get_mpz_t());
    }
    return n;
}

Integer level_of_form(const PolygonalFamily& f, const CoefficientVector& alpha, const Quad& d) {
    return level_of_diagonal(build_coset(f, alpha, d).gram_diag);
}

Quad parse_quad(const std::string& s) {
    Quad q{};
    std::stringstream ss(s);
    std::string tok;
    int i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i >= 4) throw UsageError("expected 4 comma-separated integers: " + s);
        try {
            size_t pos = 0;
            q[i++] = std::stol(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("bad integer in tuple: " + s);
        }
    }
    if (i != 4) throw UsageError("expected 4 comma-separated integers: " + s);
    return q;
}

std::string quad_to_string(const Quad& q) {
    return std::to_string(q[0]) + "," + std::to_string(q[1]) + "," + std::to_string(q[2]) + "," +
           std::to_string(q[3]);
}

}  // namespace polyrep
