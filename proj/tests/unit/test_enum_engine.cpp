#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polyrep/enum_engine.hpp"

using namespace polyrep;

namespace {

ProblemInstance inst(long m, Quad a, long n) { return ProblemInstance{PolygonalFamily(m), CoefficientVector(a), n}; }

// plain loops over x_j with d_j | x_j, no completed square
long naive_count(long m, const Quad& a, long n, const Quad& d) {
    PolygonalFamily f(m);
    std::vector<long> xs;
    for (long x = -60; x <= 60; ++x)
        if (eval_polygonal(f, x) <= n) xs.push_back(x);
    long c = 0;
    for (long x1 : xs) {
        if (x1 % d[0]) continue;
        Integer v1 = a[0] * eval_polygonal(f, x1);
        if (v1 > n) continue;
        for (long x2 : xs) {
            if (x2 % d[1]) continue;
            Integer v2 = v1 + a[1] * eval_polygonal(f, x2);
            if (v2 > n) continue;
            for (long x3 : xs) {
                if (x3 % d[2]) continue;
                Integer v3 = v2 + a[2] * eval_polygonal(f, x3);
                if (v3 > n) continue;
                for (long x4 : xs) {
                    if (x4 % d[3]) continue;
                    if (v3 + a[3] * eval_polygonal(f, x4) == n) ++c;
                }
            }
        }
    }
    return c;
}

}  // namespace

TEST_CASE("small counts") {
    auto r1 = count_representations(inst(5, {1, 1, 1, 1}, 1), {1, 1, 1, 1}, 1);
    CHECK(r1.count == 4);
    CHECK(r1.solutions.size() == 4);
    CHECK(r1.h == 28);
    auto r0 = count_representations(inst(5, {1, 1, 1, 1}, 0), {1, 1, 1, 1}, 1);
    CHECK(r0.count == 1);
    CHECK(r0.solutions[0] == Quad{0, 0, 0, 0});
    for (auto& y : r1.solutions) {
        long s = 0;
        for (auto v : y) s += v * v;
        CHECK(s == 1);
    }
}

TEST_CASE("against naive loops") {
    struct C { long m; Quad a; Quad d; };
    std::vector<C> cases{{5, {1, 1, 1, 1}, {1, 1, 1, 1}}, {5, {1, 1, 1, 3}, {1, 1, 1, 1}},
                         {7, {1, 3, 5, 7}, {1, 1, 1, 1}}, {5, {1, 1, 1, 1}, {2, 1, 1, 1}},
                         {11, {1, 1, 3, 5}, {1, 3, 1, 1}}, {6, {1, 1, 1, 1}, {1, 1, 1, 1}},
                         {3, {1, 1, 1, 1}, {1, 1, 2, 1}}};
    for (auto& c : cases)
        for (long n = 0; n <= 40; n += 3) {
            auto rs = count_representations(inst(c.m, c.a, n), c.d, 1);
            CHECK(rs.count == naive_count(c.m, c.a, n, c.d));
        }
}

TEST_CASE("solutions evaluate back to n") {
    auto I = inst(9, {1, 1, 3, 5}, 321);
    auto rs = count_representations(I, {1, 2, 1, 1}, 1);
    PolygonalFamily f(9);
    Quad d{1, 2, 1, 1};
    REQUIRE(rs.count > 0);
    for (auto& y : rs.solutions) {
        Integer s = 0;
        for (int j = 0; j < 4; ++j) s += I.alpha.a[j] * eval_polygonal(f, y[j] * d[j]);
        CHECK(s == 321);
    }
}

TEST_CASE("thread count does not change results") {
    auto I = inst(5, {1, 1, 1, 3}, 2345);
    auto a = count_representations(I, {1, 1, 1, 1}, 1);
    auto b = count_representations(I, {1, 1, 1, 1}, 3);
    CHECK(a.count == b.count);
    CHECK(a.solutions == b.solutions);
    auto ta = theta_counts(5, {1, 1, 1, 3}, {1, 1, 1, 1}, 3000, 1);
    auto tb = theta_counts(5, {1, 1, 1, 3}, {1, 1, 1, 1}, 3000, 4);
    CHECK(ta == tb);
}

TEST_CASE("theta series coefficients match enumeration") {
    Quad a{1, 1, 3, 5};
    long m = 7;
    auto t = theta_counts(m, a, {1, 1, 1, 1}, 5000, 1);
    long h0 = target_h(m, a, 0).get_si();
    for (long n = 0; n < 100; ++n) {
        long h = h0 + 8 * (m - 2) * n;
        CHECK(t[h] == count_representations(inst(m, a, n), {1, 1, 1, 1}, 1).count.get_ui());
    }
    // h outside the residue class has no representations
    CHECK(t[h0 + 1] == 0);
}

TEST_CASE("direct sieve counts") {
    auto I = inst(5, {1, 1, 1, 1}, 1);
    CHECK(direct_sieve_count(I, {1, 1, 1, 1}, {3, 5}, false, 1) == 4);
    // zero coordinates count as divisible by default
    CHECK(direct_sieve_count(I, {1, 1, 1, 1}, {3, 5}, true, 1) == 0);
    auto J = inst(5, {1, 1, 1, 1}, 25);
    CHECK(direct_sieve_count(J, {1, 1, 1, 1}, {}, true, 1) == count_representations(J, {1, 1, 1, 1}, 1).count);
    auto big = primes_up_to(97);
    big.erase(big.begin());
    std::set<unsigned long> P(big.begin(), big.end());
    long expect = 0;
    for (auto& y : count_representations(J, {1, 1, 1, 1}, 1).solutions) {
        bool ok = true;
        for (auto v : y)
            for (auto p : P)
                if (v % static_cast<long>(p) == 0) ok = false;
        expect += ok;
    }
    CHECK(direct_sieve_count(J, {1, 1, 1, 1}, P, true, 1) == expect);
}

TEST_CASE("capped counts: inclusion-exclusion equals filtering") {
    // all caps 1 at 2 leaves only odd coordinates
    auto I = inst(5, {1, 1, 1, 1}, 60);
    ConstraintSpec odd;
    odd.mode = ConstraintMode::sieve_Fc;
    odd.caps = {{2, 1}};
    long expect = 0;
    for (auto& y : count_representations(I, {1, 1, 1, 1}, 1).solutions) {
        bool ok = true;
        for (auto v : y) ok = ok && (v % 2 != 0);
        expect += ok;
    }
    CHECK(filtered_count_c(I, {1, 1, 1, 1}, odd, 1) == expect);
    CHECK(direct_sieve_count_c(I, {1, 1, 1, 1}, odd, 1) == expect);

    std::mt19937_64 rng(11);
    // at most three cap primes for the signed sum
    std::vector<Quad> alphas{{1, 1, 1, 1}, {1, 1, 1, 3}, {1, 1, 3, 5}, {1, 1, 1, 7}};
    for (int t = 0; t < 25; ++t) {
        long m = std::vector<long>{5, 7, 11, 13}[rng() % 4];
        Quad a = alphas[rng() % alphas.size()];
        long n = static_cast<long>(rng() % 400);
        auto J = inst(m, a, n);
        ConstraintSpec s;
        s.mode = ConstraintMode::sieve_Fc;
        for (auto p : prime_divisors(J.alpha.product() * 2)) s.caps[p] = 1 + static_cast<int>(rng() % 2);
        if (rng() % 2) {
            for (unsigned long p : {11UL, 13UL})
                if (J.alpha.product() % p != 0) s.P.insert(p);
        }
        s.zero_divisible = rng() % 2;
        s.validate(J.alpha);
        Quad ell{1, 1, 1, 1};
        if (rng() % 3 == 0) ell[rng() % 4] = 3;
        CHECK(filtered_count_c(J, ell, s, 1) == direct_sieve_count_c(J, ell, s, 1));
    }
    ConstraintSpec four;
    four.mode = ConstraintMode::sieve_Fc;
    four.caps = {{2, 1}, {3, 1}, {5, 1}, {7, 1}};
    CHECK_THROWS_AS(direct_sieve_count_c(inst(5, {1, 3, 5, 7}, 10), {1, 1, 1, 1}, four, 1), BudgetExceeded);
}

TEST_CASE("constraint validation") {
    ConstraintSpec s;
    s.mode = ConstraintMode::sieve_F;
    s.P = {3};
    CHECK_THROWS_AS(s.validate(CoefficientVector({1, 1, 1, 3})), UsageError);
    s.P = {2};
    CHECK_THROWS_AS(s.validate(CoefficientVector({1, 1, 1, 1})), UsageError);
    s.P = {9};
    CHECK_THROWS_AS(s.validate(CoefficientVector({1, 1, 1, 1})), UsageError);
    s.P = {5};
    s.mode = ConstraintMode::sieve_Fc;
    CHECK_THROWS_AS(s.validate(CoefficientVector({1, 1, 1, 3})), UsageError);   // no caps for 2 and 3
    s.caps = {{2, 1}, {3, 2}};
    CHECK_NOTHROW(s.validate(CoefficientVector({1, 1, 1, 3})));
}

TEST_CASE("prime factor counts") {
    CHECK(prime_factor_count(12) == 3);
    CHECK(prime_factor_count(12, FactorCountMode::distinct) == 2);
    CHECK(prime_factor_count(1) == 0);
    CHECK(prime_factor_count(-1) == 0);
    CHECK(prime_factor_count(-30) == 3);
    CHECK(prime_factor_count(-30, FactorCountMode::distinct) == 3);
    CHECK(prime_factor_count(0) < 0);
    CHECK(prime_factor_count(Integer("1152921504606846976")) == 60);
}

TEST_CASE("witnesses") {
    WitnessOptions o;
    o.factor_bound = 1;
    CHECK(witness_search(inst(5, {1, 1, 1, 1}, 1), o, 1).count > 0);
    o.factor_bound = 0;
    auto I = inst(5, {1, 1, 1, 1}, 40);
    auto w = witness_search(I, o, 1);
    for (auto& y : w.solutions)
        for (auto v : y) CHECK(std::abs(v) <= 1);
    long expect = 0;
    for (auto& y : count_representations(I, {1, 1, 1, 1}, 1).solutions) {
        bool ok = true;
        for (auto v : y) ok = ok && std::abs(v) <= 1;
        expect += ok;
    }
    CHECK(w.count == expect);
    o.factor_bound = 3;
    CHECK(witness_search(inst(5, {1, 1, 1, 1}, 10000), o, 1).count > 0);
    o.allow_zero = false;
    for (auto& y : witness_search(inst(5, {1, 1, 1, 1}, 300), o, 1).solutions)
        for (auto v : y) CHECK(v != 0);
    o.factor_bound = -1;
    CHECK_THROWS_AS(witness_search(I, o, 1), UsageError);
}

TEST_CASE("residue classes of one coordinate partition the count") {
    auto I = inst(7, {1, 1, 3, 5}, 222);
    auto all = count_representations(I, {1, 1, 1, 1}, 1);
    for (long q : {2L, 3L, 5L}) {
        std::vector<long> byclass(q, 0);
        for (auto& y : all.solutions) byclass[((y[0] % q) + q) % q]++;
        long sum = 0;
        for (auto c : byclass) sum += c;
        CHECK(sum == all.count);
        // class 0 is the q-scaled coset
        Quad d{q, 1, 1, 1};
        CHECK(byclass[0] == count_representations(I, d, 1).count);
    }
}
