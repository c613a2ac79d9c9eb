#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyrep/poly_core.hpp"

using namespace polyrep;

TEST_CASE("polygonal values") {
    PolygonalFamily f5(5), f7(7);
    CHECK(eval_polygonal(f5, 3) == 12);
    CHECK(eval_polygonal(f7, 0) == 0);
    CHECK(eval_polygonal(f7, 1) == 1);
    CHECK(eval_polygonal(f5, -1) == 2);
    // triangular numbers
    PolygonalFamily f3(3);
    for (long x = 0; x < 20; ++x) CHECK(eval_polygonal(f3, x) == x * (x + 1) / 2);
    // p_m(1) = 1 for every m
    for (long m = 3; m < 40; ++m) CHECK(eval_polygonal(PolygonalFamily(m), 1) == 1);
    CHECK_THROWS_AS(PolygonalFamily(2), UsageError);
}

TEST_CASE("completed square") {
    PolygonalFamily f5(5), f9(9);
    CHECK(shifted_square_coordinate(f5, 1, 2) == 11);
    CHECK(shifted_square_coordinate(f5, 1, 0) == -1);
    CHECK(shifted_square_coordinate(f9, 3, 1) == 37);
    // 8(m-2) p_m(x) + (m-4)^2 = X^2
    for (long m = 3; m < 30; ++m) {
        PolygonalFamily f(m);
        for (long x = -15; x <= 15; ++x) {
            Integer X = shifted_square_coordinate(f, 1, x);
            CHECK(8 * (m - 2) * eval_polygonal(f, x) + (m - 4) * (m - 4) == X * X);
        }
    }
}

TEST_CASE("target h") {
    CHECK(target_h(5, {1, 1, 1, 1}, 1) == 28);
    CHECK(target_h(5, {1, 1, 1, 3}, 2) == 54);
    CHECK(target_h(7, {1, 1, 1, 1}, 0) == 36);
    CHECK(ProblemInstance(PolygonalFamily(5), CoefficientVector({1, 1, 1, 1}), 1000).h == 24004);
    CHECK_THROWS_AS(ProblemInstance(PolygonalFamily(5), CoefficientVector({1, 1, 1, 1}), -1), UsageError);
}

TEST_CASE("coefficient validation") {
    CHECK_NOTHROW(CoefficientVector({1, 3, 5, 7}));
    CHECK_THROWS_AS(CoefficientVector({1, 1, 1, 2}), UsageError);
    CHECK_THROWS_AS(CoefficientVector({3, 3, 1, 1}), UsageError);
    CHECK_THROWS_AS(CoefficientVector({0, 1, 1, 1}), UsageError);
    CHECK_THROWS_AS(CoefficientVector({9, 1, 1, 1}), UsageError);
    CHECK(CoefficientVector({1, 3, 5, 7}).product() == 105);
}

TEST_CASE("theorem mode") {
    CHECK(PolygonalFamily(5).theorem_mode());
    CHECK(PolygonalFamily(11).theorem_mode());
    CHECK_FALSE(PolygonalFamily(7).theorem_mode());   // 3 | m-4
    CHECK_FALSE(PolygonalFamily(9).theorem_mode());   // 5 | m-4
    CHECK_FALSE(PolygonalFamily(6).theorem_mode());
    CHECK_FALSE(PolygonalFamily(19).theorem_mode());  // 15 | m-4
}

TEST_CASE("coset construction") {
    auto c = build_coset(PolygonalFamily(5), CoefficientVector({1, 1, 1, 1}), {1, 1, 1, 1});
    for (auto& g : c.gram_diag) CHECK(g == 36);
    CHECK(c.shift_num == -1);
    CHECK(c.shift_den == 6);
    CHECK(c.discriminant() == 1679616);
    CHECK(c.conductor() == 6);
    // alpha_j (2(m-2) d_j)^2
    auto c2 = build_coset(PolygonalFamily(5), CoefficientVector({1, 3, 5, 7}), {2, 1, 1, 1});
    CHECK(c2.gram_diag[0] == 144);
    CHECK(c2.gram_diag[1] == 108);
    CHECK(c2.gram_diag[2] == 180);
    CHECK(c2.gram_diag[3] == 252);
    // Q(v + x) = sum alpha_j (2(m-2) d_j x_j + 4 - m)^2 = 8(m-2) n + ... when x solves
    CHECK(c.q_value({1, 0, 0, 0}) == 28);
}

TEST_CASE("levels") {
    CHECK(level_of_diagonal({1, 1, 1, 1}) == 4);
    CHECK(level_of_diagonal({1, 1, 1, 3}) == 12);
    Integer N = level_of_form(PolygonalFamily(5), CoefficientVector({1, 1, 1, 1}), {1, 1, 1, 1});
    CHECK(144 % N == 0);
    // scaling one d_j by c multiplies N by at most c^2
    for (long cfac : {2L, 3L, 5L}) {
        Integer Nc = level_of_form(PolygonalFamily(5), CoefficientVector({1, 3, 5, 7}), {cfac, 1, 1, 1});
        Integer N1 = level_of_form(PolygonalFamily(5), CoefficientVector({1, 3, 5, 7}), {1, 1, 1, 1});
        CHECK(Nc % N1 == 0);
        CHECK(Nc <= N1 * cfac * cfac);
    }
}

TEST_CASE("tuple parsing") {
    CHECK(parse_quad("1,3,5,7") == Quad{1, 3, 5, 7});
    CHECK(quad_to_string({1, 3, 5, 7}) == "1,3,5,7");
    CHECK_THROWS_AS(parse_quad("1,2,3"), UsageError);
    CHECK_THROWS_AS(parse_quad("1,2,3,4,5"), UsageError);
    CHECK_THROWS_AS(parse_quad("1,x,3,4"), UsageError);
}

TEST_CASE("exact doubled values over a wide box") {
    for (long m = 3; m <= 30; ++m) {
        PolygonalFamily f(m);
        for (long x = -200; x <= 200; ++x) CHECK(2 * eval_polygonal(f, x) == (m - 2) * x * x - (m - 4) * x);
    }
}

TEST_CASE("transform identity and residue class") {
    std::vector<Quad> alphas{{1, 1, 1, 1}, {1, 1, 1, 3}, {1, 3, 5, 7}, {1, 1, 5, 11}};
    unsigned long state = 12345;
    auto next = [&](long mod) {
        state = state * 6364136223846793005UL + 1442695040888963407UL;
        return static_cast<long>((state >> 33) % static_cast<unsigned long>(mod));
    };
    for (int t = 0; t < 500; ++t) {
        long m = 3 + next(28);
        PolygonalFamily f(m);
        CoefficientVector a(alphas[next(4)]);
        Quad x{next(41) - 20, next(41) - 20, next(41) - 20, next(41) - 20};
        Integer n = 0, q = 0;
        for (int j = 0; j < 4; ++j) {
            n += a.a[j] * eval_polygonal(f, x[j]);
            Integer X = shifted_square_coordinate(f, 1, x[j]);
            q += a.a[j] * X * X;
        }
        CHECK(q == target_h(m, a.a, n));
        Integer base = target_h(m, a.a, 0);
        Integer diff = q - base;
        CHECK(diff % (8 * (m - 2)) == 0);
        auto c = build_coset(f, a, {1, 1, 1, 1});
        CHECK(c.q_value(x) == q);
        // a wrong n misses the identity
        CHECK(q != target_h(m, a.a, n + 1));
    }
}
