#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "weylheat/orthogonal.hpp"

using namespace weylheat;

TEST_CASE("orthogonal spec validation and labels") {
    CHECK_THROWS_AS(OrthogonalSpec(2, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(OrthogonalSpec(3, 2, 0b100), std::invalid_argument);
    CHECK(OrthogonalSpec(3, 2, 0).eta_label() == "triv");
    CHECK(OrthogonalSpec(3, 2, 0b11).eta_label() == "det");
    CHECK(OrthogonalSpec(3, 2, 0b01).eta_label() == "eta10");
    CHECK(OrthogonalSpec(4, 3, 0b101).card_J() == 2);
}

TEST_CASE("half-line kernels") {
    // Dirichlet on (0,inf): x = y = 1, t = 1/4
    OrthogonalSpec dir(1, 1, 1);
    EvalPoint p{{1.0}, {1.0}, 0.25};
    double expect = (1.0 - std::exp(-4.0)) / std::sqrt(std::numbers::pi);
    CHECK(kernel_orthogonal(dir, p) == Catch::Approx(expect).epsilon(1e-12));
    CHECK(kernel_orthogonal(dir, p) == Catch::Approx(0.5539).epsilon(1e-4));

    // matches the two-image difference
    double img = gauss_kernel(1, p.t, {0.0}) - gauss_kernel(1, p.t, {2.0});
    CHECK(kernel_orthogonal(dir, p) == Catch::Approx(img).epsilon(1e-13));

    // Neumann dominates the free Gaussian
    OrthogonalSpec neu(1, 1, 0);
    CHECK(kernel_orthogonal(neu, p) >= gauss_kernel(1, p.t, {0.0}));

    // boundary behavior
    CHECK(kernel_orthogonal(dir, {{0.0}, {1.0}, 0.5}) == 0.0);
    CHECK(kernel_orthogonal(neu, {{0.0}, {1.0}, 0.5}) > 0.0);
    CHECK_THROWS_AS(kernel_orthogonal(dir, {{-0.1}, {1.0}, 0.5}), std::invalid_argument);
}

TEST_CASE("tensorization against the reflection sum") {
    auto ctx = ReflectionContext::orthogonal(3, 2);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        EvalPoint p{{2.0 * u(rng) - 1.0, 0.02 + 3.0 * u(rng), 0.02 + 3.0 * u(rng)},
                    {2.0 * u(rng) - 1.0, 0.02 + 3.0 * u(rng), 0.02 + 3.0 * u(rng)},
                    std::pow(10.0, 2.0 * u(rng) - 1.0)};
        for (unsigned eta = 0; eta < 4; ++eta) {
            OrthogonalSpec spec(3, 2, eta);
            KernelSpec ks{&ctx, &ctx.eta(spec.eta_label()), Precision::extended};
            if (cancellation_diagnostic(ks, p).digits_lost > 6.0) continue;
            double sum = kernel_reflection_sum(ks, p).value;
            double closed = kernel_orthogonal(spec, p);
            CHECK(std::abs(closed - sum) <= 1e-12 * std::abs(sum));
            ++checked;
        }
    }
    CHECK(checked > 600);
}

TEST_CASE("product bound properties") {
    OrthogonalSpec spec(3, 2, 0b11);
    EvalPoint p{{0.3, 1.0, 2.0}, {-0.2, 1.5, 0.7}, 0.8};

    // empty index set -> free Gaussian
    OrthogonalSpec triv(3, 2, 0);
    CHECK(bound_orthogonal(triv, p) == gauss_kernel_displaced(3, p.t, p.x, p.y));

    // vanishes exactly on Dirichlet-signed facets
    EvalPoint facet{{0.3, 0.0, 2.0}, {-0.2, 1.5, 0.7}, 0.8};
    CHECK(bound_orthogonal(spec, facet) == 0.0);

    // long-time decay exponent d/2 + #J: value * t^{d/2+#J} stabilizes
    double t1 = 64.0, t2 = 256.0;
    double v1 = bound_orthogonal(spec, {p.x, p.y, t1}) * std::pow(t1, 1.5 + 2.0);
    double v2 = bound_orthogonal(spec, {p.x, p.y, t2}) * std::pow(t2, 1.5 + 2.0);
    CHECK(v1 == Catch::Approx(v2).epsilon(0.05));

    // kernel/bound stays in a two-sided band on random draws
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 2000; ++i) {
        EvalPoint q{{2.0 * u(rng) - 1.0, std::pow(10.0, 3.0 * u(rng) - 1.5),
                     std::pow(10.0, 3.0 * u(rng) - 1.5)},
                    {2.0 * u(rng) - 1.0, std::pow(10.0, 3.0 * u(rng) - 1.5),
                     std::pow(10.0, 3.0 * u(rng) - 1.5)},
                    std::pow(10.0, 3.0 * u(rng) - 1.5)};
        double r = kernel_orthogonal(spec, q) / bound_orthogonal(spec, q);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(lo > 0.1);
    CHECK(hi < 10.0);
}

TEST_CASE("half-space bound comparison") {
    // the forced point: t=1, x_d=100, y_d=0.01
    auto c = halfspace_bound_compare(100.0, 0.01, 1.0);
    CHECK(c.ratio_literature / c.ratio_paper == Catch::Approx(51.005).epsilon(1e-6));
    CHECK(c.ratio_literature > 50.0);
    CHECK(c.ratio_paper < 2.0);

    // both order one at x_d = y_d = 1
    auto b = halfspace_bound_compare(1.0, 1.0, 1.0);
    CHECK(b.ratio_paper > 0.5);
    CHECK(b.ratio_paper < 2.0);
    CHECK(b.ratio_literature > 0.5);
    CHECK(b.ratio_literature < 6.0);

    // ratio_paper = em(u)(u+1)/u is globally bounded in (0, 2]; the
    // literature shape grows without bound along x = N, y = 1/N
    double prev = 0.0;
    for (double N : {10.0, 100.0, 1000.0, 10000.0}) {
        auto r = halfspace_bound_compare(N, 1.0 / N, 1.0);
        CHECK(r.ratio_paper <= 2.0);
        CHECK(r.ratio_paper >= 1.0);
        CHECK(r.ratio_literature > prev);
        prev = r.ratio_literature;
    }
    CHECK(prev > 2500.0);

    CHECK_THROWS_AS(halfspace_bound_compare(1.0, 1.0, 0.0), std::invalid_argument);
}
