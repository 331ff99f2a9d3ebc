#pragma once

// Second half of the named-check registry: oracle comparisons, decay
// exponents, series identities, appendix material, PDE checks, and the
// dispatcher.  Included at the end of checks.hpp.

namespace weylheat {
namespace checks {

// --- closed forms against the signed image sum -----------------------------

inline CheckRecord closed_vs_sum_check(const GridSpec& grid, SampleTable* table) {
    CheckRecord rec;
    rec.name = "closed-vs-sum";
    rec.anchor = "closed-form-vs-image-sum";
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(grid.seed);
    std::size_t per_system = std::max<std::size_t>(100, grid.n / 10);
    if (table) table->columns = {"system_id", "rel_diff"};

    struct System {
        std::string label;
        std::function<double(std::mt19937_64&, double&)> draw_and_compare;
    };
    double worst_all = 0.0;
    int sys_id = 0;
    auto run_dihedral = [&](std::size_t m, const std::string& eta) {
        const ReflectionContext& ctx = m == 3 ? check_detail::ctx_i3() : check_detail::ctx_i4();
        KernelSpec spec{&ctx, &ctx.eta(eta), Precision::extended};
        double worst = 0.0;
        std::size_t got = 0, attempts = 0;
        while (got < per_system && attempts < 40 * per_system) {
            ++attempts;
            EvalPoint p{check_detail::cone_point(rng, m, 4.0),
                        check_detail::cone_point(rng, m, 4.0),
                        check_detail::logu(rng, -2.0, 2.0)};
            if (cancellation_diagnostic(spec, p).digits_lost > 6.0) continue;
            double sum = kernel_reflection_sum(spec, p).value;
            if (!(std::abs(sum) > 1e-280)) continue;  // below the double range
            double closed = m == 3 ? kernel_I3(eta, p) : kernel_I4(eta, p);
            double rd = std::abs(closed - sum) / std::abs(sum);
            worst = std::max(worst, rd);
            if (table) table->rows.push_back({static_cast<double>(sys_id), rd});
            ++got;
        }
        rec.value("i2" + std::to_string(m) + "-" + eta + "-worst", worst);
        rec.value("i2" + std::to_string(m) + "-" + eta + "-n", static_cast<double>(got));
        worst_all = std::max(worst_all, worst);
        ++sys_id;
    };
    auto run_orth = [&](std::size_t d, std::size_t k, unsigned eta) {
        OrthogonalSpec ospec(d, k, eta);
        const ReflectionContext& ctx = check_detail::ctx_orth(d, k);
        KernelSpec spec{&ctx, &ctx.eta(ospec.eta_label()), Precision::extended};
        double worst = 0.0;
        std::size_t got = 0, attempts = 0;
        while (got < per_system && attempts < 40 * per_system) {
            ++attempts;
            Vec v = check_detail::orth_plan(d, k, grid).sample(rng);
            EvalPoint p = check_detail::unpack_orth(v, d);
            if (cancellation_diagnostic(spec, p).digits_lost > 6.0) continue;
            double sum = kernel_reflection_sum(spec, p).value;
            if (!(std::abs(sum) > 1e-280)) continue;
            double closed = kernel_orthogonal(ospec, p);
            double rd = std::abs(closed - sum) / std::abs(sum);
            worst = std::max(worst, rd);
            if (table) table->rows.push_back({static_cast<double>(sys_id), rd});
            ++got;
        }
        rec.value("orth-d" + std::to_string(d) + "k" + std::to_string(k) + "-" +
                      ospec.eta_label() + "-worst",
                  worst);
        worst_all = std::max(worst_all, worst);
        ++sys_id;
    };

    for (const char* eta : {"triv", "N1", "N2", "det"}) run_dihedral(4, eta);
    for (const char* eta : {"triv", "det"}) run_dihedral(3, eta);
    for (unsigned eta : {0u, 1u}) run_orth(1, 1, eta);
    for (unsigned eta : {0u, 1u, 2u, 3u}) run_orth(3, 2, eta);

    rec.value("worst_rel_diff", worst_all);
    rec.status = worst_all < 1e-11 ? "pass" : "fail";
    rec.note = "closed forms vs extended-precision image sums, cancellation < 6 digits";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline CheckRecord deep_cancellation_check(const GridSpec& grid, SampleTable* table) {
    CheckRecord rec;
    rec.name = "deep-cancellation";
    rec.anchor = "cancellation-demonstration";
    auto t0 = std::chrono::steady_clock::now();
    const ReflectionContext& i4 = check_detail::ctx_i4();
    KernelSpec naive{&i4, &i4.eta("det"), Precision::standard};
    KernelSpec ext{&i4, &i4.eta("det"), Precision::extended};
    if (table) table->columns = {"x1", "x2", "t", "naive", "closed", "extended"};

    std::size_t exhibited = 0;
    double worst_confirm = 0.0;
    std::mt19937_64 rng(grid.seed);
    for (int i = 0; i < 400 && exhibited < 24; ++i) {
        double a = check_detail::logu(rng, -1.3, -0.3);
        Vec x = {a, a * check_detail::uni(rng, 0.3, 0.7)};
        double t = check_detail::logu(rng, 1.5, 3.2);
        EvalPoint p{x, x, t};
        auto d = cancellation_diagnostic(naive, p);
        if (d.digits_lost < 15.5 || d.digits_lost > 24.0) continue;
        double nv = kernel_reflection_sum(naive, p).value;
        if (!(nv <= 0.0)) continue;
        double closed = kernel_I4("det", p);
        double extv = kernel_reflection_sum(ext, p).value;
        if (!(closed > 0.0) || !(extv > 0.0)) continue;
        double confirm = std::abs(closed - extv) / extv;
        if (confirm > 1e-6) continue;
        worst_confirm = std::max(worst_confirm, confirm);
        if (exhibited < 3) rec.witnesses.emplace_back("witness", Vec{x[0], x[1], t});
        if (table) table->rows.push_back({x[0], x[1], t, nv, closed, extv});
        ++exhibited;
    }
    rec.value("points_exhibited", static_cast<double>(exhibited));
    rec.value("worst_confirmation_rel_diff", worst_confirm);
    rec.status = exhibited >= 10 ? "pass" : "fail";
    rec.note = "naive signed sum returns <= 0; stable closed form stays positive and matches "
               "the extended-precision sum";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// --- long-time decay exponents ---------------------------------------------

inline CheckRecord long_time_slopes_check(const GridSpec&, SampleTable*) {
    CheckRecord rec;
    rec.name = "long-time-slopes";
    rec.anchor = "long-time-decay";
    auto t0 = std::chrono::steady_clock::now();
    struct Item {
        std::string label;
        double expect;
        std::function<double(double)> f;
    };
    Vec x4 = {2.0, 1.0}, y4 = {3.0, 1.2};
    Vec x3 = {2.0, 0.4}, y3 = {1.5, -0.3};
    std::vector<Item> items;
    items.push_back({"i24-triv", -1.0, [=](double t) { return kernel_I4("triv", {x4, y4, t}); }});
    items.push_back({"i24-N1", -3.0, [=](double t) { return kernel_I4("N1", {x4, y4, t}); }});
    items.push_back({"i24-N2", -3.0, [=](double t) { return kernel_I4("N2", {x4, y4, t}); }});
    items.push_back({"i24-det", -5.0, [=](double t) { return kernel_I4("det", {x4, y4, t}); }});
    items.push_back({"i23-det", -4.0, [=](double t) { return kernel_I3("det", {x3, y3, t}); }});
    items.push_back({"orth-d3k2-det", -3.5, [](double t) {
                         OrthogonalSpec s(3, 2, 0b11);
                         return kernel_orthogonal(s, {{0.3, 1.0, 2.0}, {-0.2, 1.5, 0.7}, t});
                     }});
    items.push_back({"orth-d1k1-det", -1.5, [](double t) {
                         OrthogonalSpec s(1, 1, 1);
                         return kernel_orthogonal(s, {{1.0}, {2.0}, t});
                     }});
    items.push_back({"orth-d4k2-eta10", -3.0, [](double t) {
                         OrthogonalSpec s(4, 2, 0b01);
                         return kernel_orthogonal(s,
                                                  {{0.1, -0.4, 1.0, 2.0}, {0.5, 0.2, 1.5, 0.7}, t});
                     }});
    bool all = true;
    for (const auto& it : items) {
        double slope = long_time_slope(it.f, 1e2, 1e5);
        rec.value("slope-" + it.label, slope);
        if (std::abs(slope - it.expect) > 0.05) all = false;
    }
    rec.status = all ? "pass" : "fail";
    rec.note = "least-squares slopes of log kernel vs log t over t in [1e2, 1e5]";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// --- semigroup property -----------------------------------------------------

inline CheckRecord semigroup_check_all(const GridSpec&, SampleTable*) {
    CheckRecord rec;
    rec.name = "semigroup";
    rec.anchor = "chapman-kolmogorov";
    auto t0 = std::chrono::steady_clock::now();
    auto k4 = [](const std::string& eta) {
        return [eta](const Vec& a, const Vec& b, double t) { return kernel_I4(eta, {a, b, t}); };
    };
    auto k3 = [](const std::string& eta) {
        return [eta](const Vec& a, const Vec& b, double t) { return kernel_I3(eta, {a, b, t}); };
    };
    auto k1 = [](unsigned eta) {
        return [eta](const Vec& a, const Vec& b, double t) {
            OrthogonalSpec s(1, 1, eta);
            return kernel_orthogonal(s, {a, b, t});
        };
    };
    struct Combo {
        std::string label;
        double defect;
    };
    std::vector<Combo> combos;
    combos.push_back({"i24-triv-t.25-s.25",
                      semigroup_defect(SemigroupDomain::cone_i24, k4("triv"), {2.0, 1.0},
                                       {2.0, 1.0}, 0.25, 0.25)});
    combos.push_back({"i24-det-t.3-s.4",
                      semigroup_defect(SemigroupDomain::cone_i24, k4("det"), {2.0, 0.8},
                                       {1.5, 0.6}, 0.3, 0.4)});
    combos.push_back({"i24-N1-t.2-s.5",
                      semigroup_defect(SemigroupDomain::cone_i24, k4("N1"), {1.8, 0.7},
                                       {1.2, 0.3}, 0.2, 0.5)});
    combos.push_back({"i23-det-t.5-s.5",
                      semigroup_defect(SemigroupDomain::cone_i23, k3("det"), {1.5, 0.2},
                                       {2.0, -0.3}, 0.5, 0.5)});
    combos.push_back({"i23-triv-t.4-s.3",
                      semigroup_defect(SemigroupDomain::cone_i23, k3("triv"), {1.5, 0.2},
                                       {1.0, 0.1}, 0.4, 0.3)});
    combos.push_back({"halfline-dirichlet-t.3-s.5",
                      semigroup_defect(SemigroupDomain::halfline, k1(1), {0.7}, {1.4}, 0.3, 0.5)});
    combos.push_back({"halfline-neumann-t.3-s.5",
                      semigroup_defect(SemigroupDomain::halfline, k1(0), {0.7}, {1.4}, 0.3, 0.5)});
    bool all = true;
    for (const auto& c : combos) {
        rec.value("defect-" + c.label, c.defect);
        if (!(c.defect < 1e-6)) all = false;
    }
    double thresh_1d = combos[5].defect;
    if (!(thresh_1d < 1e-8)) all = false;  // 1D quadrature is effectively exact
    rec.status = all ? "pass" : "fail";
    rec.note = "relative Chapman-Kolmogorov defect by adaptive quadrature";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// --- series identities -------------------------------------------------------

inline CheckRecord series_identities_check(const GridSpec& grid, SampleTable*) {
    CheckRecord rec;
    rec.name = "series-identities";
    rec.anchor = "series-factorizations";
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(grid.seed);
    std::size_t n = std::max<std::size_t>(100, grid.n / 10);
    bool all = true;

    // printed block constants
    all &= series_claim1_I4_pair(1, 0, 0.37, 0.8, 0.1) == 16.0;
    all &= std::abs(series_small_I3_block(3, 0.4, 0.3, 0.2) - 0.5) < 1e-15;
    all &= std::abs(series_small_I3_block(4, 0.4, 0.3, 0.2) - 0.4 * 0.1 / 6.0) < 1e-15;
    all &= std::abs(series_caseA_block(3, -0.2, 0.7, 0.4) - 4.0 * 1.1) < 1e-13;
    all &= series_caseA_Q(4, 2, 0.9) == -32.0;
    all &= boundary_values_I3("Pstar_100") == 0.25;
    rec.value("printed_constants_ok", all ? 1.0 : 0.0);

    double w1 = 0.0, w2 = 0.0, w3 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = check_detail::uni(rng, 1e-3, 1.0 - 1e-3);
        double A = check_detail::uni(rng, 0.01, 1.0);
        double B = A * check_detail::uni(rng, 0.01, 0.99);
        double S = static_cast<double>(series_claim1_I4_direct(s, A, B));
        double recon = s * A * B * series_claim1_I4(s, A, B, 1e-14).value;
        w1 = std::max(w1, std::abs(S - recon) / std::max(1.0, std::abs(S)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = check_detail::uni(rng, -1.0 + 1e-3, 1.0 - 1e-3);
        double X = check_detail::uni(rng, 0.005, 0.99);
        double Y = (1.0 - X) * check_detail::uni(rng, 0.01, 0.99);
        double S = static_cast<double>(series_small_I3_direct(s, X, Y));
        double recon = (1.0 - s * s) * X * Y * (X + Y) * series_small_I3(s, X, Y, 1e-14).value;
        w2 = std::max(w2, std::abs(S - recon) / std::max(1.0, std::abs(S)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = check_detail::uni(rng, -1.0 + 1e-3, 1.0 - 1e-3);
        double X = check_detail::uni(rng, 0.01, 4.0);
        double Y = check_detail::uni(rng, 0.01, 4.0);
        double S = static_cast<double>(series_caseA_direct(s, X, Y));
        double recon = (1.0 - s * s) * X * Y * series_caseA_I3(s, X, Y, 1e-14).value / 16.0;
        w3 = std::max(w3, std::abs(S - recon) / std::max(1.0, std::abs(S)));
    }
    rec.value("claim1-worst", w1);
    rec.value("i3-small-worst", w2);
    rec.value("caseA-worst", w3);
    rec.value("n_per_identity", static_cast<double>(n));
    all = all && w1 < 1e-12 && w2 < 1e-12 && w3 < 1e-12;
    rec.status = all ? "pass" : "fail";
    rec.note = "direct double-double expressions vs prefactor times series value";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// --- profiles and appendix material ------------------------------------------

inline CheckRecord profiles_forms_check(const GridSpec& grid, SampleTable*) {
    CheckRecord rec;
    rec.name = "profiles-forms";
    rec.anchor = "harmonic-profile";
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(grid.seed);
    bool all = true;
    double worst = 0.0;
    for (std::size_t m = 1; m <= 8; ++m) {
        Profile p = profile(m);
        for (std::size_t j = 1; j < p.roots.size(); ++j)
            if (!(p.roots[j] < p.roots[j - 1])) all = false;
        for (int i = 0; i < 400; ++i) {
            Vec x = {check_detail::uni(rng, -2.0, 2.0), check_detail::uni(rng, -2.0, 2.0)};
            double scale = std::pow(norm(x) + 0.1, static_cast<double>(m));
            double rd = std::abs(p.eval_factored(x) - p.eval_coefficient(x)) / scale;
            worst = std::max(worst, rd);
        }
    }
    rec.value("worst_form_diff", worst);
    rec.status = (all && worst < 1e-12) ? "pass" : "fail";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline CheckRecord profiles_harmonicity_check(const GridSpec& grid, SampleTable*) {
    CheckRecord rec;
    rec.name = "profiles-harmonicity";
    rec.anchor = "harmonic-profile";
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(grid.seed);
    double worst = 0.0;
    for (std::size_t m = 1; m <= 8; ++m) {
        Profile p = profile(m);
        for (int i = 0; i < 200; ++i) {
            Vec x = {check_detail::uni(rng, -2.0, 2.0), check_detail::uni(rng, -2.0, 2.0)};
            if (norm(x) < 0.3) continue;
            double h = 1e-3 * norm(x);
            double e = p.eval_factored({x[0] + h, x[1]});
            double w = p.eval_factored({x[0] - h, x[1]});
            double nn = p.eval_factored({x[0], x[1] + h});
            double ss = p.eval_factored({x[0], x[1] - h});
            double c = p.eval_factored(x);
            double lap = e + w + nn + ss - 4.0 * c;
            double scale =
                std::abs(e) + std::abs(w) + std::abs(nn) + std::abs(ss) + 4.0 * std::abs(c);
            worst = std::max(worst, std::abs(lap) / (scale + 1e-300));
        }
        rec.value("m" + std::to_string(m) + "-worst", worst);
    }
    rec.status = worst < 1e-8 ? "pass" : "fail";
    rec.note = "five-point stencil residual, normalized by the stencil magnitude";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline CheckRecord conjecture_exact_check(const GridSpec& grid, SampleTable*) {
    CheckRecord rec;
    rec.name = "conjecture-exact-m34";
    rec.anchor = "product-bound-conjecture";
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(grid.seed);
    bool all = true;
    for (int i = 0; i < 500; ++i) {
        double t = check_detail::logu(rng, -1.5, 1.5);
        EvalPoint p4{check_detail::cone_point(rng, 4, 3.0), check_detail::cone_point(rng, 4, 3.0),
                     t};
        if (conjecture_bound(4, p4) != bound_dihedral(4, "det", p4)) all = false;
        EvalPoint p3{check_detail::cone_point(rng, 3, 3.0), check_detail::cone_point(rng, 3, 3.0),
                     t};
        if (conjecture_bound(3, p3) != bound_dihedral(3, "det", p3)) all = false;
        EvalPoint p2{check_detail::cone_point(rng, 2, 3.0), check_detail::cone_point(rng, 2, 3.0),
                     t};
        OrthogonalSpec o22(2, 2, 0b11);
        double a = conjecture_bound(2, p2), b = bound_orthogonal(o22, p2);
        if (std::abs(a - b) > 1e-15 * b) all = false;
    }
    rec.status = all ? "pass" : "fail";
    rec.note = "factor-product bound coincides with the proven bounds for m <= 4";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline CheckRecord hip2_factors_check(std::size_t m, const GridSpec& grid, SampleTable* table) {
    // for even m, the j >= 2 factors (both signs) and the j = 1 plus-sign
    // factor are comparable to x1 y1/(x1 y1 + t)
    SamplingPlan plan;
    plan.names = {"x1", "x2", "y1", "y2", "t", "root", "sign"};
    plan.seed = grid.seed;
    plan.n0 = std::max<std::size_t>(1, grid.n / 4);
    Profile pr = profile(m);
    std::vector<std::pair<double, double>> combos;  // (u, sign)
    combos.emplace_back(pr.roots[0], +1.0);
    for (std::size_t j = 1; j < pr.roots.size(); ++j) {
        combos.emplace_back(pr.roots[j], +1.0);
        combos.emplace_back(pr.roots[j], -1.0);
    }
    double dec = grid.decades;
    plan.sample = [m, dec, combos](std::mt19937_64& rng) {
        Vec x = check_detail::cone_point(rng, m, dec);
        Vec y = check_detail::cone_point(rng, m, dec);
        const auto& c =
            combos[static_cast<std::size_t>(check_detail::uni(rng, 0.0, 1.0) * 0.999 *
                                            static_cast<double>(combos.size()))];
        return Vec{x[0], x[1], y[0], y[1], check_detail::logu(rng, -dec / 2.0, dec / 2.0),
                   c.first, c.second};
    };
    auto num = [](const Vec& v) {
        double u = v[5], sg = v[6];
        double A = (v[0] + sg * u * v[1]) * (v[2] + sg * u * v[3]);
        return A / (A + v[4]);
    };
    auto den = [](const Vec& v) {
        double A = v[0] * v[2];
        return A / (A + v[4]);
    };
    return from_ratio_scan("hip2-factors-m" + std::to_string(m), "factor-comparability", num,
                           den, plan, table);
}

inline CheckRecord uuu_check(std::size_t m, const GridSpec& grid, SampleTable* table) {
    // the left ratio carries e^{-eps |x-y|^2/t} and legitimately underflows
    // at far separation, so maxima are tracked by hand (zeros allowed)
    CheckRecord rec;
    rec.name = "uuu-m" + std::to_string(m);
    rec.anchor = "adjusted-point-shape";
    auto t0 = std::chrono::steady_clock::now();
    const double eps = 0.1;
    SamplingPlan plan = cone_plan(m, grid);
    if (table) table->columns = plan.names;
    std::mt19937_64 rng(plan.seed);
    std::size_t total = plan.n0 * 7;  // three doubling stages
    double right_min = std::numeric_limits<double>::infinity(), right_max = 0.0;
    double left_max = 0.0, stage_right_max = 0.0;
    Vec right_argmax, left_argmax;
    std::size_t stage_end = plan.n0;
    bool last_two_stable = true;
    double prev_stage_max = -1.0;
    for (std::size_t i = 0; i < total; ++i) {
        Vec v = plan.sample(rng);
        if (table) table->rows.push_back(v);
        auto c = gsc_compare(m, unpack_cone(v), eps);
        if (!(c.uuu_right_ratio > 0.0) || !std::isfinite(c.uuu_right_ratio) ||
            !std::isfinite(c.uuu_left_ratio) || c.uuu_left_ratio < 0.0) {
            rec.status = "fail";
            rec.witnesses.emplace_back("violation", v);
            rec.runtime_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
            return rec;
        }
        right_min = std::min(right_min, c.uuu_right_ratio);
        if (c.uuu_right_ratio > right_max) {
            right_max = c.uuu_right_ratio;
            right_argmax = v;
        }
        if (c.uuu_left_ratio > left_max) {
            left_max = c.uuu_left_ratio;
            left_argmax = v;
        }
        if (i + 1 == stage_end) {
            rec.refinement_history.push_back(
                {static_cast<double>(i + 1), right_min, right_max});
            if (prev_stage_max > 0.0)
                last_two_stable = std::abs(right_max - prev_stage_max) <= 0.05 * prev_stage_max;
            prev_stage_max = right_max;
            stage_end = std::min(total, stage_end * 2 + plan.n0);
            stage_right_max = right_max;
        }
    }
    (void)stage_right_max;
    rec.value("right_min", right_min);
    rec.value("right_max", right_max);
    rec.value("left_max", left_max);
    rec.value("epsilon", eps);
    rec.value("n_samples", static_cast<double>(total));
    rec.witnesses.emplace_back("right_argmax", right_argmax);
    rec.witnesses.emplace_back("left_argmax", left_argmax);
    rec.status = (std::isfinite(right_max) && std::isfinite(left_max) && last_two_stable)
                     ? "pass"
                     : "fail";
    rec.note = "denominator product vs profile at sqrt(t)-adjusted points, two-sided";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline CheckRecord hip222_check(std::size_t m, const GridSpec& grid, SampleTable* table) {
    // kernel/bound for the half-space intersection: the free coordinates and
    // the shared Gaussian cancel exactly, leaving the cone ratio against the
    // three distance factors
    SamplingPlan plan;
    plan.names = {"x1", "x2", "y1", "y2", "t"};
    plan.seed = grid.seed;
    plan.n0 = std::max<std::size_t>(1, grid.n / 8);
    double dec = std::min(grid.decades, 6.0);
    plan.sample = [m, dec](std::mt19937_64& rng) {
        Vec xc = check_detail::cone_point(rng, m, dec);
        Vec yc = check_detail::cone_point(rng, m, dec);
        return Vec{xc[0], xc[1], yc[0], yc[1], check_detail::logu(rng, -dec / 2.0, dec / 2.0)};
    };
    auto num = [m](const Vec& v) {
        EvalPoint p = unpack_cone(v);
        return m == 3 ? kernel_I3_vs_gauss("det", p) : kernel_I4_vs_gauss("det", p);
    };
    auto den = [m](const Vec& v) {
        EvalPoint p = unpack_cone(v);
        RootSystem cone = build_dihedral(m);
        auto gx = chamber_geometry(cone, p.x);
        auto gy = chamber_geometry(cone, p.y);
        double b = std::pow(std::min(1.0, gx.vertex_distance * gy.vertex_distance / p.t),
                            static_cast<double>(m - 2));
        for (std::size_t f = 0; f < 2; ++f)
            b *= std::min(1.0, gx.facet_distances[f] * gy.facet_distances[f] / p.t);
        return b;
    };
    CheckRecord rec =
        from_ratio_scan("hip222-d3-m" + std::to_string(m), "halfspace-intersection-bound", num,
                        den, plan, table, /*require_stable=*/false);
    rec.note = "boundedness check; extremes live at deep distance-factor crossovers, so the "
               "refinement history is reported without a drift gate";
    return rec;
}

inline CheckRecord conjecture_scan_check(std::size_t m, const GridSpec& grid,
                                         SampleTable* table) {
    const ReflectionContext& ctx = check_detail::ctx_dihedral(m);
    KernelSpec comp{&ctx, &ctx.eta("det"), Precision::compensated};
    KernelSpec ext{&ctx, &ctx.eta("det"), Precision::extended};

    SamplingPlan plan;
    plan.names = {"x1", "x2", "y1", "y2", "t"};
    plan.seed = grid.seed;
    plan.n0 = std::max<std::size_t>(1, grid.n / 8);
    double dec = std::min(grid.decades, 3.0);  // keep the image sum resolvable
    plan.sample = [m, dec, comp](std::mt19937_64& rng) {
        while (true) {
            Vec x = check_detail::cone_point(rng, m, dec);
            Vec y = check_detail::cone_point(rng, m, dec);
            double t = check_detail::logu(rng, -dec / 2.0, dec / 2.0);
            EvalPoint p{x, y, t};
            if (cancellation_diagnostic(comp, p).digits_lost > 20.0) continue;
            return Vec{x[0], x[1], y[0], y[1], t};
        }
    };
    auto num = [ext](const Vec& v) { return reflection_sum_vs_gauss(ext, unpack_cone(v)); };
    auto den = [m](const Vec& v) { return conjecture_bound_vs_gauss(m, unpack_cone(v)); };
    CheckRecord rec =
        from_ratio_scan("conjecture-m" + std::to_string(m), "product-bound-conjecture", num,
                        den, plan, table, /*require_stable=*/false);
    if (rec.status == "pass") rec.status = "measured";  // never a verdict
    rec.value("grid_decades", dec);
    rec.value("grid_seed", static_cast<double>(grid.seed));
    rec.value("conjectural", 1.0);
    rec.note = "conjectural: measured equivalence constants on a finite grid, m = " +
               std::to_string(m) + ", samples capped to cancellation depth 20";
    return rec;
}

// --- PDE oracle ---------------------------------------------------------------

inline CheckRecord pde_i24_check(const GridSpec&, SampleTable*) {
    CheckRecord rec;
    rec.name = "pde-i24";
    rec.anchor = "finite-difference-oracle";
    auto t0 = std::chrono::steady_clock::now();
    double t = 0.18, h = 0.035, R = 5.0;
    Vec y = {1.3, 0.55};
    bool all = true;
    for (const char* eta : {"det", "triv"}) {
        auto sol = solve_heat_i24(eta, y, t, h, R);
        double peak = 0.0;
        for (std::size_t i = 0; i <= sol.N; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                peak = std::max(peak, kernel_I4(eta, {sol.node(i, j), y, t}));
        double worst = 0.0;
        for (std::size_t i = 1; i < sol.N; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                double ref = kernel_I4(eta, {sol.node(i, j), y, t});
                if (ref < 1e-3 * peak) continue;
                worst = std::max(worst, std::abs(sol.value(i, j) - ref) / ref);
            }
        rec.value(std::string("rel-err-") + eta, worst);
        if (!(worst < 0.02)) all = false;
    }
    {
        auto triv = solve_heat_i24("triv", y, 0.12, 0.05, 5.0);
        double drift = std::abs(triv.mass_final - triv.mass_initial) / triv.mass_initial;
        rec.value("neumann-mass-drift", drift);
        if (!(drift < 1e-10)) all = false;
    }
    {
        double t0c = 25.0 * 0.08 * 0.08;
        auto sa = solve_heat_i24("det", {1.2, 0.5}, 0.36, 0.08, 4.0, t0c);
        auto sb = solve_heat_i24("det", {1.2, 0.5}, 0.36, 0.04, 4.0, t0c);
        auto sc = solve_heat_i24("det", {1.2, 0.5}, 0.36, 0.02, 4.0, t0c);
        double dab = 0.0, dbc = 0.0;
        for (std::size_t i = 1; i + 1 < sa.N; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                dab = std::max(dab, std::abs(sa.value(i, j) - sb.value(2 * i, 2 * j)));
                dbc = std::max(dbc, std::abs(sb.value(2 * i, 2 * j) - sc.value(4 * i, 4 * j)));
            }
        double order = std::log2(dab / dbc);
        rec.value("self-convergence-order", order);
        if (!(order > 1.7 && order < 2.3)) all = false;
    }
    rec.status = all ? "pass" : "fail";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline CheckRecord pde_halfline_check(const GridSpec&, SampleTable*) {
    CheckRecord rec;
    rec.name = "pde-halfline";
    rec.anchor = "finite-difference-oracle";
    auto t0 = std::chrono::steady_clock::now();
    auto sol = solve_heat_halfline(true, 1.0, 0.2, 0.01, 6.0);
    double worst = 0.0, peak = gauss_kernel(1, 0.2, {0.0});
    for (std::size_t i = 1; i < sol.N; ++i) {
        double x = static_cast<double>(i) * 0.01;
        double ref = gauss_kernel(1, 0.2, {x - 1.0}) - gauss_kernel(1, 0.2, {x + 1.0});
        if (ref < 1e-3 * peak) continue;
        worst = std::max(worst, std::abs(sol.u[i] - ref) / ref);
    }
    rec.value("rel-err", worst);
    rec.status = worst < 0.01 ? "pass" : "fail";
    rec.note = "half-line Dirichlet solver vs the two-image kernel";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline CheckRecord residual_order_check(const GridSpec&, SampleTable*) {
    CheckRecord rec;
    rec.name = "residual-order";
    rec.anchor = "finite-difference-oracle";
    auto t0 = std::chrono::steady_clock::now();
    auto pdet = [](const Vec& x, double t) { return kernel_I4("det", {x, {1.5, 0.7}, t}); };
    double r1 = residual_check(pdet, {2.0, 1.0}, 0.5, 1e-2);
    double r2 = residual_check(pdet, {2.0, 1.0}, 0.5, 5e-3);
    double r3 = residual_check(pdet, {2.0, 1.0}, 0.5, 2.5e-3);
    rec.value("residual-h1", r1);
    rec.value("residual-h2", r2);
    rec.value("ratio-12", r1 / r2);
    rec.value("ratio-23", r2 / r3);
    bool all = r1 < 1e-3 && std::abs(r1 / r2 - 4.0) < 1.0 && std::abs(r2 / r3 - 4.0) < 1.0;
    rec.status = all ? "pass" : "fail";
    rec.note = "heat-equation residual of the cone kernel, halving the step twice";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline CheckRecord inequality_check(const std::string& name, const GridSpec& grid,
                                    SampleTable*) {
    CheckRecord rec;
    rec.name = "ineq-" + name;
    rec.anchor = "scalar-inequality-" + name;
    auto t0 = std::chrono::steady_clock::now();
    InequalityResult r = run_inequality(name, grid.n, grid.seed);
    rec.value("measured_lo", r.measured_lo);
    rec.value("measured_hi", r.measured_hi);
    rec.value("n_samples", static_cast<double>(r.n_samples));
    rec.note = r.note;
    rec.status = r.pass ? "pass" : "fail";
    if (!r.pass) rec.witnesses.emplace_back("witness", r.witness);
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

}  // namespace checks

// ---------------------------------------------------------------------------
// dispatcher
// ---------------------------------------------------------------------------

inline std::vector<std::string> check_names() {
    std::vector<std::string> names = {
        "closed-vs-sum",   "deep-cancellation", "neu-i24",          "neu-i23",
        "prop1-d1k1-det",  "prop1-d3k2-mixed",  "prop1-d3k3-det",   "thm1",
        "thm2",            "n1-product",        "n2-product",       "ort4-inconsistency",
        "long-time-slopes", "semigroup",        "g4-small",         "g4-mid",
        "g4-far",          "i3-small",          "i3-caseA",         "i3-caseB",
        "i3-caseC",        "i3-caseD",          "series-identities", "profiles-forms",
        "profiles-harmonicity", "conjecture-exact-m34", "hip2-factors-m6", "hip2-factors-m8",
        "uuu-m4",          "uuu-m6",            "hip222-d3-m3",     "hip222-d3-m4",
        "conjecture-m5",   "conjecture-m6",     "pde-i24",          "pde-halfline",
        "residual-order"};
    for (const auto& n : inequality_names()) names.push_back("ineq-" + n);
    return names;
}

inline CheckRecord run_check(const std::string& name, const GridSpec& grid,
                             SampleTable* table = nullptr) {
    using namespace checks;
    if (name == "closed-vs-sum") return closed_vs_sum_check(grid, table);
    if (name == "deep-cancellation") return deep_cancellation_check(grid, table);
    if (name == "neu-i24") return neumann_check(name, 4, grid, table);
    if (name == "neu-i23") return neumann_check(name, 3, grid, table);
    if (name == "prop1-d1k1-det") return prop1_check(name, 1, 1, 0b1, grid, table);
    if (name == "prop1-d3k2-mixed") return prop1_check(name, 3, 2, 0b01, grid, table);
    if (name == "prop1-d3k3-det") return prop1_check(name, 3, 3, 0b111, grid, table);
    if (name == "thm1") return dihedral_bound_check(name, 3, "det", grid, table);
    if (name == "thm2") return dihedral_bound_check(name, 4, "det", grid, table);
    if (name == "n1-product") return dihedral_bound_check(name, 4, "N1", grid, table);
    if (name == "n2-product") return dihedral_bound_check(name, 4, "N2", grid, table);
    if (name == "ort4-inconsistency") return ort4_check(grid, table);
    if (name == "long-time-slopes") return long_time_slopes_check(grid, table);
    if (name == "semigroup") return semigroup_check_all(grid, table);
    if (name == "g4-small") return g4_regime_check("small", grid, table);
    if (name == "g4-mid") return g4_regime_check("mid", grid, table);
    if (name == "g4-far") return g4_regime_check("far", grid, table);
    if (name == "i3-small") return i3_regime_check("small", grid, table);
    if (name == "i3-caseA") return i3_regime_check("caseA", grid, table);
    if (name == "i3-caseB") return i3_regime_check("caseB", grid, table);
    if (name == "i3-caseC") return i3_regime_check("caseC", grid, table);
    if (name == "i3-caseD") return i3_regime_check("caseD", grid, table);
    if (name == "series-identities") return series_identities_check(grid, table);
    if (name == "profiles-forms") return profiles_forms_check(grid, table);
    if (name == "profiles-harmonicity") return profiles_harmonicity_check(grid, table);
    if (name == "conjecture-exact-m34") return conjecture_exact_check(grid, table);
    if (name == "hip2-factors-m6") return hip2_factors_check(6, grid, table);
    if (name == "hip2-factors-m8") return hip2_factors_check(8, grid, table);
    if (name == "uuu-m4") return uuu_check(4, grid, table);
    if (name == "uuu-m6") return uuu_check(6, grid, table);
    if (name == "hip222-d3-m3") return hip222_check(3, grid, table);
    if (name == "hip222-d3-m4") return hip222_check(4, grid, table);
    if (name == "conjecture-m5") return conjecture_scan_check(5, grid, table);
    if (name == "conjecture-m6") return conjecture_scan_check(6, grid, table);
    if (name == "pde-i24") return pde_i24_check(grid, table);
    if (name == "pde-halfline") return pde_halfline_check(grid, table);
    if (name == "residual-order") return residual_order_check(grid, table);
    if (name.rfind("ineq-", 0) == 0) return inequality_check(name.substr(5), grid, table);
    throw std::invalid_argument("run_check: unknown check " + name);
}

inline std::vector<std::string> suite_checks(const std::string& suite) {
    if (suite == "core")
        return {"closed-vs-sum",  "deep-cancellation", "neu-i24",        "neu-i23",
                "prop1-d1k1-det", "prop1-d3k2-mixed",  "prop1-d3k3-det", "thm1",
                "thm2",           "n1-product",        "n2-product",     "ort4-inconsistency",
                "long-time-slopes", "semigroup"};
    if (suite == "claims") {
        std::vector<std::string> v = {"g4-small", "g4-mid",   "g4-far",   "i3-small",
                                      "i3-caseA", "i3-caseB", "i3-caseC", "i3-caseD"};
        for (const auto& n : inequality_names()) v.push_back("ineq-" + n);
        return v;
    }
    if (suite == "series") return {"series-identities"};
    if (suite == "appendix")
        return {"profiles-forms", "profiles-harmonicity", "conjecture-exact-m34",
                "hip2-factors-m6", "hip2-factors-m8",     "uuu-m4",
                "uuu-m6",          "hip222-d3-m3",        "hip222-d3-m4",
                "conjecture-m5",   "conjecture-m6"};
    if (suite == "pde") return {"pde-i24", "pde-halfline", "residual-order"};
    throw std::invalid_argument("suite_checks: unknown suite " + suite);
}

}  // namespace weylheat
