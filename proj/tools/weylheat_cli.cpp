// weylheat: evaluate heat kernels on reflection-group chambers and run the
// verification campaign (ratio scans, series identities, inequality suite,
// PDE and quadrature oracles).
//
// Subcommands:
//   eval        kernel / bound / ratio / cancellation at one point
//   scan        a named check over a sampling grid (JSON report or CSV rows)
//   verify      a whole suite: core | claims | series | appendix
//   pde         finite-difference comparison for the pi/4 cone
//   conjecture  product-bound scan for general aperture pi/m
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "weylheat/report.hpp"
#include "weylheat/weylheat.hpp"

namespace {

using namespace weylheat;

Vec parse_vec(const std::string& s) {
    Vec v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    return v;
}

struct Options {
    std::string out;
    std::string format = "json";
    GridSpec grid;
    bool deterministic = false;
    int threads = 0;
};

void apply_config_file(const std::string& path, Options& opt, const CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    auto unset = [&](const std::string& flag) {
        auto* o = app.get_option_no_throw(flag);
        return o == nullptr || o->count() == 0;
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "seed" && unset("--seed")) opt.grid.seed = std::stoull(val);
        else if (key == "n" && unset("--n")) opt.grid.n = std::stoull(val);
        else if (key == "decades" && unset("--decades")) opt.grid.decades = std::stod(val);
        else if (key == "format" && unset("--format")) opt.format = val;
        else if (key == "out" && unset("--out")) opt.out = val;
        else if (key == "threads" && unset("--threads")) opt.threads = std::stoi(val);
        else if (key == "deterministic" && unset("--deterministic"))
            opt.deterministic = val == "1" || val == "true";
    }
}

void write_output(const Options& opt, const std::string& payload) {
    if (opt.out.empty()) {
        std::fputs(payload.c_str(), stdout);
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    f << payload;
}

std::vector<std::pair<std::string, std::string>> config_echo(const Options& opt) {
    return {{"n", std::to_string(opt.grid.n)},
            {"decades", report_detail::json_number(opt.grid.decades)},
            {"seed", std::to_string(opt.grid.seed)},
            {"format", opt.format}};
}

int emit_records(const Options& opt, const std::string& command,
                 std::vector<CheckRecord> records, SampleTable* table) {
    bool any_fail = false;
    for (auto& r : records) {
        if (opt.deterministic) r.runtime_ms = 0.0;
        if (r.status == "fail") any_fail = true;
    }
    if (opt.format == "csv" && table) {
        write_output(opt, to_csv(*table));
    } else {
        Report rep;
        rep.command = command;
        rep.config = config_echo(opt);
        rep.records = std::move(records);
        write_output(opt, to_json(rep, !opt.deterministic));
    }
    return any_fail ? 1 : 0;
}

int run_eval(const Options& opt, const std::string& system, const std::string& params,
             const std::string& eta, const Vec& x, const Vec& y, double t) {
    CheckRecord rec;
    rec.name = "eval";
    rec.status = "measured";
    EvalPoint p{x, y, t};
    double kernel = 0.0, bound = 0.0, digits = 0.0;
    if (system == "i2") {
        std::size_t m = std::stoul(params);
        if (m == 3) {
            kernel = kernel_I3(eta, p);
            bound = bound_dihedral(3, eta, p);
        } else if (m == 4) {
            kernel = kernel_I4(eta, p);
            bound = bound_dihedral(4, eta, p);
        } else {
            const ReflectionContext& ctx = check_detail::ctx_dihedral(m);
            KernelSpec spec{&ctx, &ctx.eta(eta), Precision::extended};
            kernel = kernel_reflection_sum(spec, p).value;
            bound = conjecture_bound(m, p);
            rec.note = "kernel via signed image sum; bound is the conjectured product form";
        }
        const ReflectionContext& ctx = check_detail::ctx_dihedral(m);
        KernelSpec diag_spec{&ctx, &ctx.eta(eta), Precision::compensated};
        digits = cancellation_diagnostic(diag_spec, p).digits_lost;
        rec.anchor = m == 3 ? "i23-dirichlet-product-bound" : "i24-product-bound";
    } else if (system == "orth") {
        Vec dk = parse_vec(params);
        if (dk.size() != 2) throw CLI::ValidationError("--params", "need d,k");
        auto d = static_cast<std::size_t>(dk[0]);
        auto k = static_cast<std::size_t>(dk[1]);
        const ReflectionContext& ctx = check_detail::ctx_orth(d, k);
        const SignHomomorphism& h = ctx.eta(eta);
        unsigned mask = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (h.generator_signs[j] == -1) mask |= 1u << j;
        OrthogonalSpec spec(d, k, mask);
        kernel = kernel_orthogonal(spec, p);
        bound = bound_orthogonal(spec, p);
        KernelSpec diag_spec{&ctx, &h, Precision::compensated};
        digits = cancellation_diagnostic(diag_spec, p).digits_lost;
        rec.anchor = "orthogonal-product-bound";
    } else {
        throw CLI::ValidationError("--system", "must be orth or i2");
    }
    rec.value("kernel", kernel);
    rec.value("bound", bound);
    rec.value("ratio", bound > 0.0 ? kernel / bound : std::numeric_limits<double>::quiet_NaN());
    rec.value("cancellation_digits_lost", digits);
    std::printf("kernel                = %.17g\n", kernel);
    std::printf("bound                 = %.17g\n", bound);
    std::printf("ratio                 = %.17g\n", kernel / bound);
    std::printf("digits lost (naive)   = %.3g\n", digits);
    if (!opt.out.empty()) return emit_records(opt, "eval", {rec}, nullptr);
    return 0;
}

int run_pde(const Options& opt, const std::string& eta, double t, double h, const Vec& src) {
    auto t0 = std::chrono::steady_clock::now();
    auto sol = solve_heat_i24(eta, src, t, h, 5.0);
    double peak = 0.0, worst = 0.0;
    for (std::size_t i = 0; i <= sol.N; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            peak = std::max(peak, kernel_I4(eta, {sol.node(i, j), src, t}));
    for (std::size_t i = 1; i < sol.N; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double ref = kernel_I4(eta, {sol.node(i, j), src, t});
            if (ref < 1e-3 * peak) continue;
            worst = std::max(worst, std::abs(sol.value(i, j) - ref) / ref);
        }
    CheckRecord rec;
    rec.name = "pde";
    rec.anchor = "finite-difference-oracle";
    rec.value("worst_rel_err", worst);
    rec.value("mass_drift",
              std::abs(sol.mass_final - sol.mass_initial) / std::max(1e-300, sol.mass_initial));
    rec.value("h", h);
    rec.value("t", t);
    rec.status = worst < 0.02 ? "pass" : "fail";
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] pde eta=%s worst relative error %.4g (grid h=%.3g)\n",
                rec.status == "pass" ? "PASS" : "FAIL", eta.c_str(), worst, h);
    Options o = opt;
    if (o.out.empty()) return rec.status == "pass" ? 0 : 1;
    return emit_records(o, "pde", {rec}, nullptr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heat kernels on reflection-group chambers: evaluation and verification"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    Options opt;
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file (flags win)");
    app.add_option("--out", opt.out, "write the report to this path (default stdout)");
    app.add_option("--format", opt.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", opt.grid.seed, "sampling seed");
    app.add_option("--n", opt.grid.n, "samples in the final refinement stage");
    app.add_option("--decades", opt.grid.decades, "log-range per positive axis");
    app.add_option("--threads", opt.threads, "cap scan parallelism");
    app.add_flag("--deterministic", opt.deterministic,
                 "zero out runtimes so identical runs are byte-identical");

    auto* eval = app.add_subcommand("eval", "evaluate kernel, bound, ratio at one point");
    std::string system, params = "4", eta = "det", xs, ys;
    double t = 0.5;
    eval->add_option("--system", system, "orth | i2")->required();
    eval->add_option("--params", params, "m for i2, d,k for orth");
    eval->add_option("--eta", eta, "triv | det | N1 | N2 | eta<bits>");
    eval->add_option("--x", xs, "point x, comma separated")->required();
    eval->add_option("--y", ys, "point y, comma separated")->required();
    eval->add_option("--t", t, "time");

    auto* scan = app.add_subcommand("scan", "run one named check");
    std::string check_name;
    bool list_checks = false;
    scan->add_option("--check", check_name, "check name (see --list)");
    scan->add_flag("--list", list_checks, "list known checks");

    auto* verify = app.add_subcommand("verify", "run a suite of checks");
    std::string suite;
    verify->add_option("--suite", suite, "core | claims | series | appendix | pde")->required();

    auto* pde = app.add_subcommand("pde", "finite-difference comparison on the pi/4 cone");
    std::string pde_eta = "det";
    double pde_t = 0.18, pde_h = 0.035;
    std::string pde_src = "1.3,0.55";
    pde->add_option("--eta", pde_eta, "triv | det | N1 | N2");
    pde->add_option("--t", pde_t, "final time");
    pde->add_option("--spacing", pde_h, "grid spacing");
    pde->add_option("--source", pde_src, "source point");

    auto* conj = app.add_subcommand("conjecture", "product-bound scan for aperture pi/m");
    std::size_t conj_m = 5;
    conj->add_option("--m", conj_m, "cone parameter m >= 3")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) apply_config_file(config_path, opt, app);
        if (opt.threads > 0) setenv("WEYLHEAT_THREADS", std::to_string(opt.threads).c_str(), 1);

        std::string cmdline;  // argv echo, minus the output path
        for (int i = 1; i < argc; ++i) {
            if (std::string(argv[i]) == "--out") {
                ++i;
                continue;
            }
            if (!cmdline.empty()) cmdline += " ";
            cmdline += argv[i];
        }

        if (*eval) return run_eval(opt, system, params, eta, parse_vec(xs), parse_vec(ys), t);

        if (*scan) {
            if (list_checks) {
                for (const auto& n : check_names()) std::printf("%s\n", n.c_str());
                return 0;
            }
            if (check_name.empty()) {
                std::fprintf(stderr, "scan: --check is required (or --list)\n");
                return 2;
            }
            SampleTable table;
            bool want_csv = opt.format == "csv";
            CheckRecord rec = run_check(check_name, opt.grid, want_csv ? &table : nullptr);
            int code = emit_records(opt, cmdline, {rec}, want_csv ? &table : nullptr);
            return code;
        }

        if (*verify) {
            std::vector<CheckRecord> records;
            bool any_fail = false;
            for (const auto& name : suite_checks(suite)) {
                records.push_back(run_check(name, opt.grid));
                const CheckRecord& r = records.back();
                std::fprintf(stderr, "[%s] %s\n", r.status == "fail" ? "FAIL" : "PASS",
                             r.name.c_str());
                if (r.status == "fail") any_fail = true;
            }
            int code = emit_records(opt, cmdline, std::move(records), nullptr);
            return any_fail ? 1 : code;
        }

        if (*pde) return run_pde(opt, pde_eta, pde_t, pde_h, parse_vec(pde_src));

        if (*conj) {
            if (conj_m < 3) {
                std::fprintf(stderr, "conjecture: need m >= 3\n");
                return 2;
            }
            SampleTable table;
            bool want_csv = opt.format == "csv";
            CheckRecord rec =
                checks::conjecture_scan_check(conj_m, opt.grid, want_csv ? &table : nullptr);
            return emit_records(opt, cmdline, {rec}, want_csv ? &table : nullptr);
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
