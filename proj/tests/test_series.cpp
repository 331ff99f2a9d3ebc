#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "weylheat/dd.hpp"
#include "weylheat/series.hpp"

using namespace weylheat;

namespace {

double dd_to_double(dd v) { return static_cast<double>(v); }

}  // namespace

TEST_CASE("claim1 series: printed block constant and leading weight") {
    // the unweighted m=1 pair product is the constant 16
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        double s = u(rng), A = 2.0 * u(rng) - 1.0, B = 2.0 * u(rng) - 1.0;
        CHECK(series_claim1_I4_pair(1, 0, s, A, B) == 16.0);
    }
    // with the factorial weight 1/(1! 3!) the m=1 block is 16/6
    CHECK(series_claim1_I4_block(1, 0.3, 0.5, 0.2) == Catch::Approx(16.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("claim1 series: factorization S = s A B P") {
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double s = 0.001 + 0.998 * u(rng);
        double A = 0.01 + 0.99 * u(rng);
        double B = A * (0.01 + 0.98 * u(rng));  // 0 < B < A <= 1
        auto res = series_claim1_I4(s, A, B, 1e-14);
        double S = dd_to_double(series_claim1_I4_direct(s, A, B));
        double recon = s * A * B * res.value;
        CHECK(std::abs(S - recon) <= 1e-12 * std::max(1.0, std::abs(S)));
        CHECK(res.tail_bound < 1e-14);
    }
    // the worked example point
    auto res = series_claim1_I4(0.5, 0.4, 0.2, 1e-14);
    double S = dd_to_double(series_claim1_I4_direct(0.5, 0.4, 0.2));
    CHECK(std::abs(S - 0.5 * 0.4 * 0.2 * res.value) <= 1e-12);
}

TEST_CASE("claim1 series: S vanishes linearly in s") {
    double A = 0.7, B = 0.3;
    double p0 = series_claim1_I4(1e-9, A, B, 1e-14).value;
    for (double s : {1e-6, 1e-4, 1e-2}) {
        double S = dd_to_double(series_claim1_I4_direct(s, A, B));
        CHECK(S / (s * A * B) == Catch::Approx(p0).epsilon(1e-3));
    }
}

TEST_CASE("claim1 series: block positivity and tail majorant") {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double s = 0.01 + 0.98 * u(rng);
        double A = 0.05 + 1.9 * u(rng);
        double B = A * (0.02 + 0.96 * u(rng));
        double r = std::max(std::abs(A), std::abs(B));
        for (int m = 1; m <= 12; ++m) {
            double block = series_claim1_I4_block(m, s, A, B);
            CHECK(block >= 0.0);
            CHECK(std::abs(block) <= series_claim1_I4_tail_term(m, r) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("claim1 series: tolerance unreachable raises") {
    CHECK_THROWS_AS(series_claim1_I4(0.5, 30.0, 10.0, 1e-12, 40), SeriesToleranceError);
}

TEST_CASE("small_I3 series: printed blocks P3 and P4") {
    std::mt19937_64 rng(104);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        double s = 2.0 * u(rng) - 1.0, X = u(rng), Y = u(rng);
        CHECK(series_small_I3_block(3, s, X, Y) == Catch::Approx(0.5).epsilon(1e-15));
        CHECK(series_small_I3_block(4, s, X, Y) ==
              Catch::Approx(s * (X - Y) / 6.0).margin(1e-17).epsilon(1e-14));
    }
}

TEST_CASE("small_I3 series: factorization S = (1-s^2) X Y (X+Y) P") {
    std::mt19937_64 rng(105);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double s = -0.999 + 1.998 * u(rng);
        double X = 0.005 + 0.99 * u(rng);
        double Y = (1.0 - X) * (0.005 + 0.99 * u(rng));  // X + Y < 1
        auto res = series_small_I3(s, X, Y, 1e-14);
        double S = dd_to_double(series_small_I3_direct(s, X, Y));
        double recon = (1.0 - s * s) * X * Y * (X + Y) * res.value;
        CHECK(std::abs(S - recon) <= 1e-12 * std::max(1.0, std::abs(S)));
    }
    auto res = series_small_I3(0.3, 0.2, 0.1, 1e-14);
    double S = dd_to_double(series_small_I3_direct(0.3, 0.2, 0.1));
    CHECK(std::abs(S - (1.0 - 0.09) * 0.2 * 0.1 * 0.3 * res.value) <= 1e-12);
}

TEST_CASE("small_I3 series: block tail majorant") {
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double s = 2.0 * u(rng) - 1.0;
        double X = 2.0 * u(rng), Y = 2.0 * u(rng);
        double r = std::max({std::abs(s), X, Y});
        for (int m = 3; m <= 15; m += 2) {
            CHECK(std::abs(series_small_I3_block(m, s, X, Y)) <=
                  series_small_I3_tail_term(m, r) * (1.0 + 1e-12));
            CHECK(std::abs(series_small_I3_block(m + 1, s, X, Y)) <=
                  series_small_I3_tail_term(m + 1, r) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("small_I3 series: boundary consistency with closed forms") {
    // P(s,0,0) = 1/2
    for (double s : {-1.0, -0.4, 0.0, 0.7, 1.0})
        CHECK(series_small_I3(s, 0.0, 0.0, 1e-13).value == Catch::Approx(0.5).epsilon(1e-13));

    // P(+-1, X, 0) equals the hyperbolic closed form
    for (double X : {1e-3, 0.1, 0.5, 1.0}) {
        for (double sgn : {1.0, -1.0}) {
            double series = series_small_I3(sgn, X, 0.0, 1e-13).value;
            double closed = boundary_values_I3("P_pm1_X0", {sgn, X});
            CHECK(series == Catch::Approx(closed).epsilon(1e-8));
            CHECK(closed > 0.4);  // strictly positive on 0 < X <= 1
        }
    }

    // limits approached from the interior converge to the boundary values
    double inner = series_small_I3(1.0 - 1e-7, 0.5, 1e-7, 1e-13).value;
    CHECK(inner == Catch::Approx(boundary_values_I3("P_pm1_X0", {1.0, 0.5})).epsilon(1e-5));
}

TEST_CASE("caseA series: printed constants") {
    CHECK(series_caseA_Q(3, 1, 0.37) == 8.0);
    CHECK(series_caseA_Q(3, 2, -0.9) == 8.0);
    for (double s : {-0.8, 0.0, 0.6}) {
        CHECK(series_caseA_Q(4, 1, s) == Catch::Approx(-8.0 * (3.0 + s)).epsilon(1e-15));
        CHECK(series_caseA_Q(4, 3, s) == Catch::Approx(-8.0 * (3.0 - s)).epsilon(1e-15));
    }
    CHECK(series_caseA_Q(4, 2, 0.5) == -32.0);

    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        double s = 2.0 * u(rng) - 1.0, A = 2.0 * u(rng), B = 2.0 * u(rng);
        CHECK(series_caseA_block(3, s, A, B) == Catch::Approx(4.0 * (A + B)).epsilon(1e-14));
    }
}

TEST_CASE("caseA series: factorization S = (1-s^2) X Y P(s,X/2,Y/2)/16") {
    std::mt19937_64 rng(108);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double s = -0.998 + 1.996 * u(rng);
        double X = 0.01 + 3.99 * u(rng);
        double Y = 0.01 + 3.99 * u(rng);
        auto res = series_caseA_I3(s, X, Y, 1e-14);
        double S = dd_to_double(series_caseA_direct(s, X, Y));
        double recon = (1.0 - s * s) * X * Y * res.value / 16.0;
        CHECK(std::abs(S - recon) <= 1e-12 * std::max(1.0, std::abs(S)));
    }
    auto res = series_caseA_I3(0.2, 0.5, 0.7, 1e-14);
    double S = dd_to_double(series_caseA_direct(0.2, 0.5, 0.7));
    CHECK(std::abs(S - (1.0 - 0.04) * 0.5 * 0.7 * res.value / 16.0) <= 1e-12);
}

TEST_CASE("caseA series: compactified corner values") {
    CHECK(boundary_values_I3("Pstar_100") == 0.25);
    CHECK(boundary_values_I3("Pstar_1T0", {1.0}) ==
          Catch::Approx((1.0 - std::exp(-1.0)) / 4.0).epsilon(1e-15));
    CHECK(boundary_values_I3("Pstar_1T0", {0.0}) == 0.25);

    // P*(s,T,U) = S*(s,T,U)/(4TU) approaches the printed corner values
    auto pstar = [](double s, double T, double U) {
        double X = 2.0 * T / (1.0 - s);
        double Y = 2.0 * U / (1.0 + s);
        double S = dd_to_double(series_caseA_direct(s, X, Y));
        return S / (4.0 * T * U);
    };
    for (double T : {0.2, 0.6, 1.0}) {
        double approx = pstar(1.0 - 1e-6, T, 1e-7);
        CHECK(approx == Catch::Approx(boundary_values_I3("Pstar_1T0", {T})).epsilon(1e-4));
    }

    // the corner value 1/4 is the iterated limit along the s=1 face, where
    // S* extends continuously to (1-e^{-T})(1-e^{-U})
    auto face = [](double T, double U) {
        return -std::expm1(-T) * -std::expm1(-U) / (4.0 * T * U);
    };
    CHECK(face(1e-8, 1e-8) == Catch::Approx(0.25).epsilon(1e-7));
    CHECK(face(1.0, 1e-9) == Catch::Approx(boundary_values_I3("Pstar_1T0", {1.0})).epsilon(1e-8));

    // measured fact: along interior paths with T comparable to 1-s the
    // limit differs, P* -> (1 + e^{-2})/8; this pins the s=1 block values
    double interior = pstar(1.0 - 1e-6, 1e-6, 1e-7);
    CHECK(interior == Catch::Approx((1.0 + std::exp(-2.0)) / 8.0).epsilon(1e-3));
}

TEST_CASE("boundary values: diagnostics") {
    CHECK(boundary_values_I3("P_s00") == 0.5);
    CHECK_THROWS_AS(boundary_values_I3("nope"), std::invalid_argument);
    CHECK_THROWS_AS(boundary_values_I3("P_pm1_X0", {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(boundary_values_I3("Pstar_1T0", {-1.0}), std::invalid_argument);

    // small-X Taylor branch agrees with the direct expression
    double a = boundary_values_I3("P_pm1_X0", {1.0, 9e-5});
    double b = std::sinh(9e-5) / (2.0 * 9e-5) +
               (9e-5 * std::cosh(9e-5) - std::sinh(9e-5)) / (2.0 * 9e-5 * 9e-5);
    CHECK(a == Catch::Approx(b).epsilon(1e-10));
}
