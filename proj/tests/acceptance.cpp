// Acceptance suite: twelve criteria covering closed-form/oracle agreement,
// cancellation demonstrations, every two-sided bound scan, series identities,
// the inequality battery, decay exponents, the semigroup property, the PDE
// oracle, the half-space bound-shape discrepancy, the appendix material, and
// the conjectural scans.  One [PASS]/[FAIL] line per criterion; exit status 0
// only if all requested criteria pass.  Usage: acceptance [N]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "weylheat/weylheat.hpp"

using namespace weylheat;

namespace {

struct Criterion {
    int id;
    std::string summary;
    double budget_seconds;
    std::vector<std::string> checks;
    GridSpec grid;
    bool allow_measured = false;  // criteria that report rather than gate
};

std::vector<Criterion> criteria() {
    GridSpec full{10000, 6.0, 12345};
    GridSpec std_grid{10000, 4.0, 12345};
    std::vector<Criterion> cs;
    cs.push_back({1, "closed forms match the image sums below 6 lost digits (rel 1e-11)", 10.0,
                  {"closed-vs-sum"}, std_grid});
    cs.push_back({2, "naive sum collapses to <= 0 while the stable form stays positive", 10.0,
                  {"deep-cancellation"}, std_grid});
    cs.push_back({3, "two-sided bound scans: products vs kernels over 6-decade grids", 120.0,
                  {"neu-i24", "neu-i23", "prop1-d1k1-det", "prop1-d3k2-mixed",
                   "prop1-d3k3-det", "thm1", "thm2", "n1-product", "n2-product"},
                  full});
    cs.push_back({4, "ratio-function regime scans with region predicates", 120.0,
                  {"g4-small", "g4-mid", "g4-far", "i3-small", "i3-caseA", "i3-caseB",
                   "i3-caseC", "i3-caseD"},
                  full});
    cs.push_back({5, "series identities and printed block constants", 30.0,
                  {"series-identities"}, full});
    {
        Criterion c{6, "scalar inequality suite with zero witnesses", 30.0, {}, full};
        for (const auto& n : inequality_names()) c.checks.push_back("ineq-" + n);
        cs.push_back(std::move(c));
    }
    cs.push_back({7, "long-time decay exponents within 0.05", 10.0, {"long-time-slopes"},
                  std_grid});
    cs.push_back({8, "semigroup property by adaptive quadrature (defect < 1e-6)", 60.0,
                  {"semigroup"}, std_grid});
    cs.push_back({9, "finite-difference oracle within 2% and second-order convergence", 120.0,
                  {"pde-i24", "pde-halfline", "residual-order"}, std_grid});
    cs.push_back({10, "half-space literature shape grows unboundedly, product shape plateaus",
                  5.0, {"ort4-inconsistency"}, std_grid, true});
    cs.push_back({11, "profiles, factor comparability, adjusted-point and intersection bounds",
                  60.0,
                  {"profiles-harmonicity", "profiles-forms", "conjecture-exact-m34",
                   "hip2-factors-m6", "hip2-factors-m8", "uuu-m4", "uuu-m6", "hip222-d3-m3",
                   "hip222-d3-m4"},
                  full});
    cs.push_back({12, "conjectural scans for m = 5, 6 emit measured constants with metadata",
                  60.0, {"conjecture-m5", "conjecture-m6"}, GridSpec{4000, 3.0, 12345}, true});
    return cs;
}

bool run_criterion(const Criterion& c, bool verbose) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const auto& name : c.checks) {
        CheckRecord rec = run_check(name, c.grid);
        bool good = c.allow_measured ? rec.status != "fail" : rec.status == "pass";
        if (c.id == 12) {
            // criterion 12 additionally requires the conjectural flag and
            // grid metadata in the record
            bool has_meta = false, flagged = false;
            for (const auto& [k, v] : rec.values) {
                if (k == "grid_seed") has_meta = true;
                if (k == "conjectural" && v == 1.0) flagged = true;
            }
            good = good && rec.status == "measured" && has_meta && flagged;
        }
        if (!good) {
            ok = false;
            detail += " " + name + "=FAIL";
            if (verbose) {
                std::printf("       check %s: status=%s %s\n", rec.name.c_str(),
                            rec.status.c_str(), rec.note.c_str());
                for (const auto& [k, v] : rec.values)
                    std::printf("         %s = %.17g\n", k.c_str(), v);
            }
        }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_seconds) {
        ok = false;
        detail += " over-budget";
    }
    std::printf("[%s] criterion %2d: %s (%.2f s / budget %.0f s)%s\n", ok ? "PASS" : "FAIL",
                c.id, c.summary.c_str(), secs, c.budget_seconds, detail.c_str());
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "-v") == 0)
            verbose = true;
        else
            only = std::atoi(argv[i]);
    }
    bool all_ok = true;
    int ran = 0;
    for (const Criterion& c : criteria()) {
        if (only != 0 && c.id != only) continue;
        ++ran;
        if (!run_criterion(c, verbose)) all_ok = false;
    }
    if (ran == 0) {
        std::fprintf(stderr, "unknown criterion %d (valid: 1..12)\n", only);
        return 2;
    }
    return all_ok ? 0 : 1;
}
