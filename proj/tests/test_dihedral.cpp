#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "weylheat/dd.hpp"
#include "weylheat/dihedral.hpp"
#include "weylheat/orthogonal.hpp"
#include "weylheat/gauss.hpp"

using namespace weylheat;

namespace {

struct PointGen {
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> u{0.0, 1.0};
    explicit PointGen(std::uint64_t seed) : rng(seed) {}

    // interior point of the cone, log-uniform radius over `decades`
    Vec interior(std::size_t m, double decades = 2.0) {
        const double pi = std::numbers::pi;
        double lo = m % 2 == 0 ? 0.0 : -pi / (2.0 * static_cast<double>(m));
        double hi = m % 2 == 0 ? pi / static_cast<double>(m) : pi / (2.0 * static_cast<double>(m));
        double th = lo + (hi - lo) * (0.02 + 0.96 * u(rng));
        double rho = std::pow(10.0, decades * (u(rng) - 0.5));
        return {rho * std::cos(th), rho * std::sin(th)};
    }
};

double g4_direct_dd(double s, double X, double Y) {
    dd num = dd_mul(dd_sinh(dd_mul(dd(s), X)), dd_sinh(dd(Y)));
    dd den = dd_mul(dd_sinh(dd(X)), dd_sinh(dd_mul(dd(s), Y)));
    return static_cast<double>(dd_sub(dd(1.0), dd_div(num, den)));
}

double g3_direct_dd(double s, double X, double Y) {
    dd num = dd_add(dd_mul(dd_exp(dd_mul(dd(s), X)), dd_sinh(dd(Y))),
                    dd_mul(dd_exp(dd_mul(dd(-s), Y)), dd_sinh(dd(X))));
    return static_cast<double>(dd_sub(dd(1.0), dd_div(num, dd_sinh(dd_add(dd(X), Y)))));
}

}  // namespace

TEST_CASE("change of variables") {
    auto v = change_variables(4, {2.0, 1.0}, {3.0, 1.0});
    CHECK(v.X == 6.0);
    CHECK(v.Y == 3.0);
    CHECK(v.s == Catch::Approx(1.0 / 3.0));
    CHECK_FALSE(v.degenerate);

    auto w = change_variables(3, {2.0, 0.0}, {1.0, 0.0});
    CHECK(w.X == Catch::Approx(1.0));
    CHECK(w.Y == Catch::Approx(1.0));
    CHECK(w.s == 0.0);

    CHECK(change_variables(4, {1.0, 1.0}, {2.0, 1.0}).degenerate);  // on the diagonal facet
    CHECK_THROWS_AS(change_variables(5, {1.0, 0.0}, {1.0, 0.0}), std::invalid_argument);

    PointGen gen(21);
    for (int i = 0; i < 200; ++i) {
        Vec x = gen.interior(4), y = gen.interior(4);
        auto r = change_variables(4, x, y);
        CHECK(r.s > 0.0);
        CHECK(r.s < 1.0);
        CHECK(r.Y > 0.0);
        CHECK(r.Y < r.X);
        double lhs = (x[0] - x[1]) * (y[0] - y[1]);
        double rhs = (1.0 - r.s) * (r.X - r.Y);
        CHECK(lhs == Catch::Approx(rhs).epsilon(1e-14));

        Vec a = gen.interior(3), b = gen.interior(3);
        auto q = change_variables(3, a, b);
        CHECK(q.X > 0.0);
        CHECK(q.Y > 0.0);
        CHECK(std::abs(q.s) < 1.0);
        CHECK(q.X + q.Y == Catch::Approx(a[0] * b[0]).epsilon(1e-14));
    }
}

TEST_CASE("G4: boundary zeros, limits and range") {
    CHECK(g_function_I4(0.5, 2.0, 2.0) == 0.0);
    CHECK(g_function_I4(1.0, 2.0, 1.0) == 0.0);
    CHECK(g_function_I4(0.5, 0.0, 0.0) == 0.0);
    CHECK_THROWS_AS(g_function_I4(1.5, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(g_function_I4(0.5, 1.0, 2.0), std::domain_error);

    // Y -> 0 limit equals 1 - sinh(sX)/(s sinh X)
    for (double s : {0.2, 0.5, 0.9}) {
        for (double X : {0.3, 1.0, 1.9, 5.0, 12.0}) {
            double lim = 1.0 - std::sinh(s * X) / (s * std::sinh(X));
            CHECK(g_function_I4(s, X, 0.0) == Catch::Approx(lim).epsilon(1e-12));
            CHECK(g_function_I4(s, X, 1e-14) == Catch::Approx(lim).epsilon(1e-9));
        }
    }

    // increasing in X at fixed (s, Y), from 0 towards 1; decreasing in Y
    double prev = 0.0;
    for (double X = 0.51; X < 40.0; X *= 1.7) {
        double g = g_function_I4(0.4, X, 0.5);
        CHECK(g > prev);
        CHECK(g < 1.0);
        prev = g;
    }
    prev = 1.0;
    for (double Y = 0.01; Y < 3.0; Y *= 2.0) {
        double g = g_function_I4(0.4, 3.0, Y);
        CHECK(g < prev);
        CHECK(g > 0.0);
        prev = g;
    }
}

TEST_CASE("G4 agrees with a direct double-double evaluation") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        double s = 0.02 + 0.96 * u(rng);
        double X = std::pow(10.0, -2.0 + 3.5 * u(rng));  // 1e-2 .. ~3e1
        double Y = X * (0.02 + 0.96 * u(rng));
        double direct = g4_direct_dd(s, X, Y);
        // keep the reference trustworthy: direct dd loses ~digits(1/G)
        if (direct < 1e-12) continue;
        CHECK(g_function_I4(s, X, Y) == Catch::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("G3: symmetry, zeros, direct comparison") {
    CHECK(g_function_I3(0.3, 0.0, 1.0) == 0.0);
    CHECK(g_function_I3(1.0, 1.0, 1.0) == 0.0);
    CHECK(g_function_I3(-1.0, 1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(g_function_I3(1.5, 1.0, 1.0), std::domain_error);

    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        double s = -0.98 + 1.96 * u(rng);
        double X = std::pow(10.0, -2.5 + 4.0 * u(rng));
        double Y = std::pow(10.0, -2.5 + 4.0 * u(rng));
        double g = g_function_I3(s, X, Y);
        CHECK(g > 0.0);
        CHECK(g < 1.0);
        CHECK(g_function_I3(-s, Y, X) == Catch::Approx(g).epsilon(1e-12));
        double direct = g3_direct_dd(s, X, Y);
        if (direct > 1e-12) CHECK(g == Catch::Approx(direct).epsilon(1e-12));
    }

    // case-D corner: G3 >= 1 - 1/cosh(1) on (1-s)X >= 1, (1+s)Y >= 1
    for (int i = 0; i < 500; ++i) {
        double s = -0.9 + 1.8 * u(rng);
        double X = (1.0 + 4.0 * u(rng)) / (1.0 - s);
        double Y = (1.0 + 4.0 * u(rng)) / (1.0 + s);
        CHECK(g_function_I3(s, X, Y) >= 1.0 - 1.0 / std::cosh(1.0) - 1e-12);
    }
}

TEST_CASE("psi_I4: positive rearrangements match the raw formulas") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        double x1 = 0.2 + 2.0 * u(rng);
        Vec x = {x1, x1 * (0.05 + 0.9 * u(rng))};
        double y1 = 0.2 + 2.0 * u(rng);
        Vec y = {y1, y1 * (0.05 + 0.9 * u(rng))};
        double t = 0.3 + 2.0 * u(rng);

        // the raw hyperbolic forms lose digits where the value is small
        // relative to the cosh scale; compare only with headroom to spare
        double scale = std::cosh(x[0] * y[0] / (2 * t)) * std::cosh(x[1] * y[1] / (2 * t));
        for (const char* eta : {"triv", "N1", "N2", "det"}) {
            double raw = psi_I4_raw(eta, t, x, y);
            double stable = psi_I4(eta, t, x, y);
            if (std::abs(raw) > 1e-4 * scale)
                CHECK(stable == Catch::Approx(raw).epsilon(1e-11));
        }

        // pointwise ordering of the boundary labels
        double psgn = psi_I4("det", t, x, y);
        double pn1 = psi_I4("N1", t, x, y);
        double pn2 = psi_I4("N2", t, x, y);
        double ptriv = psi_I4("triv", t, x, y);
        CHECK(psgn <= pn1 * (1.0 + 1e-13));
        CHECK(psgn <= pn2 * (1.0 + 1e-13));
        CHECK(pn1 <= ptriv * (1.0 + 1e-13));
        CHECK(pn2 <= ptriv * (1.0 + 1e-13));
    }
    // sgn vanishes when x2 = 0
    CHECK(psi_I4("det", 0.5, {1.5, 0.0}, {2.0, 1.0}) == 0.0);
}

TEST_CASE("closed forms match the reflection sum") {
    auto i4 = ReflectionContext::dihedral(4);
    auto i3 = ReflectionContext::dihedral(3);

    // the worked point: det, x = y = (2,1), t = 1/2
    {
        KernelSpec spec{&i4, &i4.eta("det"), Precision::extended};
        EvalPoint p{{2.0, 1.0}, {2.0, 1.0}, 0.5};
        double sum = kernel_reflection_sum(spec, p).value;
        double closed = kernel_I4("det", p);
        CHECK(closed == Catch::Approx(sum).epsilon(1e-12));
    }

    PointGen gen(34);
    int checked_i4 = 0, checked_i3 = 0;
    for (int i = 0; i < 400; ++i) {
        EvalPoint p{gen.interior(4), gen.interior(4),
                    std::pow(10.0, 2.0 * (gen.u(gen.rng) - 0.5))};
        for (const char* eta : {"triv", "N1", "N2", "det"}) {
            KernelSpec spec{&i4, &i4.eta(eta), Precision::extended};
            auto diag = cancellation_diagnostic(spec, p);
            if (diag.digits_lost > 6.0) continue;
            double sum = kernel_reflection_sum(spec, p).value;
            double closed = kernel_I4(eta, p);
            CHECK(std::abs(closed - sum) <= 1e-11 * std::abs(sum));
            ++checked_i4;
        }
        EvalPoint q{gen.interior(3), gen.interior(3),
                    std::pow(10.0, 2.0 * (gen.u(gen.rng) - 0.5))};
        for (const char* eta : {"triv", "det"}) {
            KernelSpec spec{&i3, &i3.eta(eta), Precision::extended};
            auto diag = cancellation_diagnostic(spec, q);
            if (diag.digits_lost > 6.0) continue;
            double sum = kernel_reflection_sum(spec, q).value;
            double closed = kernel_I3(eta, q);
            CHECK(std::abs(closed - sum) <= 1e-11 * std::abs(sum));
            ++checked_i3;
        }
    }
    CHECK(checked_i4 > 800);
    CHECK(checked_i3 > 400);
}

TEST_CASE("closed form stays positive where the naive sum collapses") {
    auto i4 = ReflectionContext::dihedral(4);
    KernelSpec naive{&i4, &i4.eta("det"), Precision::standard};
    KernelSpec ext{&i4, &i4.eta("det"), Precision::extended};
    EvalPoint p{{0.1, 0.05}, {0.1, 0.05}, 100.0};
    auto d = cancellation_diagnostic(naive, p);
    CHECK(d.digits_lost > 16.0);
    double closed = kernel_I4("det", p);
    CHECK(closed > 0.0);
    double extended = kernel_reflection_sum(ext, p).value;
    CHECK(closed == Catch::Approx(extended).epsilon(1e-6));
}

TEST_CASE("frozen reference values from an independent 60-digit evaluation") {
    // signed image sums evaluated with 60-digit arithmetic, frozen here
    EvalPoint p{{1.7, 0.6}, {2.3, 1.0}, 0.37};
    CHECK(kernel_I4("triv", p) == Catch::Approx(0.2039331729907691162).epsilon(1e-14));
    CHECK(kernel_I4("det", p) == Catch::Approx(0.1002744340504516252).epsilon(1e-14));
    CHECK(kernel_I4("N1", p) == Catch::Approx(0.1585964142035552907).epsilon(1e-14));
    CHECK(kernel_I4("N2", p) == Catch::Approx(0.1426214083042290845).epsilon(1e-14));

    EvalPoint q{{1.4, -0.3}, {2.1, 0.5}, 0.82};
    CHECK(kernel_I3("triv", q) == Catch::Approx(0.1485579932450012424).epsilon(1e-13));
    CHECK(kernel_I3("det", q) == Catch::Approx(0.01591394306170650785).epsilon(1e-14));

    OrthogonalSpec spec(3, 2, 0b01);
    EvalPoint r{{0.4, 1.2, 0.7}, {-0.2, 0.9, 1.5}, 0.66};
    CHECK(kernel_orthogonal(spec, r) ==
          Catch::Approx(0.02685690681633599375).epsilon(1e-14));
}

TEST_CASE("closed forms are symmetric in x and y") {
    PointGen gen(37);
    for (int i = 0; i < 300; ++i) {
        Vec x = gen.interior(4), y = gen.interior(4);
        double t = std::pow(10.0, 2.0 * (gen.u(gen.rng) - 0.5));
        for (const char* eta : {"triv", "N1", "N2", "det"}) {
            double a = kernel_I4_vs_gauss(eta, {x, y, t});
            double b = kernel_I4_vs_gauss(eta, {y, x, t});
            CHECK(a == Catch::Approx(b).epsilon(1e-12));
        }
        Vec p = gen.interior(3), q = gen.interior(3);
        double a = kernel_I3_vs_gauss("det", {p, q, t});
        double b = kernel_I3_vs_gauss("det", {q, p, t});
        CHECK(a == Catch::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("kernel boundary behavior") {
    // det: linear vanishing towards the flat facet
    Vec y = {2.0, 1.0};
    double prev_ratio = -1.0;
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        EvalPoint p{{1.5, eps}, y, 0.5};
        double val = kernel_I4("det", p);
        CHECK(val > 0.0);
        double ratio = val / eps;
        if (prev_ratio > 0.0) CHECK(ratio == Catch::Approx(prev_ratio).epsilon(2e-2));
        prev_ratio = ratio;
    }

    // N2 vanishes on {(s,0)}, positive on {(s,s)}
    CHECK(kernel_I4("N2", {{1.5, 0.0}, y, 0.5}) == 0.0);
    CHECK(kernel_I4("N2", {{1.5, 1.5}, y, 0.5}) > 0.0);
    // N1 the other way round
    CHECK(kernel_I4("N1", {{1.5, 1.5}, y, 0.5}) == 0.0);
    CHECK(kernel_I4("N1", {{1.5, 0.0}, y, 0.5}) > 0.0);

    // I3 det vanishes on both facets, positive inside
    const double r3 = std::numbers::sqrt3;
    Vec y3 = {2.0, 0.3};
    CHECK(kernel_I3("det", {{1.0, 1.0 / r3}, y3, 0.5}) == Catch::Approx(0.0).margin(1e-18));
    CHECK(kernel_I3("det", {{1.0, -1.0 / r3}, y3, 0.5}) == Catch::Approx(0.0).margin(1e-18));
    CHECK(kernel_I3("det", {{1.0, 0.0}, y3, 0.5}) > 0.0);

    CHECK_THROWS_AS(kernel_I4("det", {{-1.0, 0.5}, y, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(kernel_I3("det", {{1.0, 0.9}, y3, 0.5}), std::invalid_argument);
}

TEST_CASE("bound expressions") {
    EvalPoint p{{2.0, 1.0}, {3.0, 1.0}, 0.7};
    CHECK(bound_dihedral(4, "triv", p) == gauss_kernel_displaced(2, p.t, p.x, p.y));

    // m=3 bound vanishes on the upper facet ray
    const double r3 = std::numbers::sqrt3;
    EvalPoint q{{1.0, 1.0 / r3}, {2.0, 0.1}, 0.5};
    CHECK(bound_dihedral(3, "det", q) == Catch::Approx(0.0).margin(1e-300));

    // the (x1+x2)(y1+y2) factor is within [1,4] of x1 y1 on the chamber
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double x1 = 0.1 + 3.0 * u(rng), y1 = 0.1 + 3.0 * u(rng);
        Vec x = {x1, x1 * u(rng)}, yy = {y1, y1 * u(rng)};
        double f1 = x[0] * yy[0];
        double f4 = (x[0] + x[1]) * (yy[0] + yy[1]);
        CHECK(f4 >= f1);
        CHECK(f4 <= 4.0 * f1);
    }

    CHECK_THROWS_AS(bound_dihedral(4, "bogus", p), std::invalid_argument);
    CHECK_THROWS_AS(bound_dihedral(3, "N1", p), std::invalid_argument);
    CHECK_THROWS_AS(bound_dihedral(5, "det", p), std::invalid_argument);
}

TEST_CASE("reduced factorization identity for the pi/4 Dirichlet kernel") {
    // e^{-<x,y>} Psi_{1/2,det} = (1/4)(1-e^{-2X})(1-e^{-2sY}) G(s,X,Y)
    PointGen gen(36);
    for (int i = 0; i < 300; ++i) {
        Vec x = gen.interior(4, 1.0), y = gen.interior(4, 1.0);
        dd psi = dd_sub(dd_mul(dd_sinh(detail::two_prod(x[0], y[0])),
                               dd_sinh(detail::two_prod(x[1], y[1]))),
                        dd_mul(dd_sinh(detail::two_prod(x[1], y[0])),
                               dd_sinh(detail::two_prod(x[0], y[1]))));
        dd lhs = dd_mul(dd_exp(dd(-dot(x, y))), psi);
        auto v = change_variables(4, x, y);
        double G = g_function_I4(v.s, v.X, v.Y);
        double rhs = 0.25 * -std::expm1(-2.0 * v.X) * -std::expm1(-2.0 * v.s * v.Y) * G;
        if (std::abs(static_cast<double>(lhs)) > 1e-13 * std::cosh(dot(x, y)))
            CHECK(rhs == Catch::Approx(static_cast<double>(lhs)).epsilon(1e-12));
    }
}
