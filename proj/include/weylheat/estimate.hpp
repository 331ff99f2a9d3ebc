#pragma once

// The measurement engine behind every two-sided estimate: ratio scans over
// deterministic sampling plans (min/max with argument witnesses and a
// refinement history), least-squares long-time decay exponents, and a suite
// of scalar inequalities with measured extremal constants.  "Equivalent up
// to constants" is operationalized as: finite positive min/max over a
// refinement sequence whose last two stages agree to a few percent.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "weylheat/linalg.hpp"

namespace weylheat {

struct SamplingPlan {
    std::vector<std::string> names;                    // coordinate labels
    std::function<Vec(std::mt19937_64&)> sample;       // one admissible point
    std::function<bool(const Vec&)> region;            // optional final check
    std::size_t n0 = 2500;                             // first stage size
    int refinements = 3;                               // stages n0, 2 n0, 4 n0, ...
    std::uint64_t seed = 12345;
};

struct RatioReport {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    Vec argmin;
    Vec argmax;
    std::size_t n_samples = 0;
    std::vector<std::array<double, 3>> refinement_history;  // {n, min, max}

    /// last two stages agree to `tol` relative on both ends
    bool stable(double tol = 0.05) const {
        if (refinement_history.size() < 2) return false;
        const auto& a = refinement_history[refinement_history.size() - 2];
        const auto& b = refinement_history.back();
        return std::abs(b[1] - a[1]) <= tol * std::abs(a[1]) &&
               std::abs(b[2] - a[2]) <= tol * std::abs(a[2]);
    }
};

struct ScanViolation : std::runtime_error {
    Vec witness;
    double numerator;
    double denominator;
    ScanViolation(const std::string& msg, Vec w, double num, double den)
        : std::runtime_error(msg), witness(std::move(w)), numerator(num), denominator(den) {}
};

inline unsigned scan_thread_count() {
    if (const char* env = std::getenv("WEYLHEAT_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Min/max of numerator/denominator over the plan.  Samples are drawn once,
/// deterministically from the seed; evaluation is chunked across threads and
/// merged in chunk order, so the result does not depend on the thread count.
/// A nonpositive evaluation is a hard error carrying the witness point.
inline RatioReport ratio_scan(
    const std::function<double(const Vec&)>& numerator,
    const std::function<double(const Vec&)>& denominator, const SamplingPlan& plan,
    const std::function<void(const Vec&, double, double, double)>& sample_sink = nullptr) {
    std::mt19937_64 rng(plan.seed);
    std::size_t total = 0;
    std::vector<std::size_t> checkpoints;
    for (int r = 0; r < plan.refinements; ++r) {
        total += plan.n0 << r;
        checkpoints.push_back(total);
    }
    std::vector<Vec> pts;
    pts.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        Vec p = plan.sample(rng);
        if (plan.region && !plan.region(p))
            throw std::logic_error("ratio_scan: sampler produced a point outside its region");
        pts.push_back(std::move(p));
    }

    struct Chunk {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        std::size_t ilo = 0, ihi = 0;
        std::vector<double> ratios;
        bool violated = false;
        std::size_t iviol = 0;
        double vnum = 0.0, vden = 0.0;
    };

    unsigned nthreads = std::min<std::size_t>(scan_thread_count(), pts.size());
    std::vector<Chunk> chunks(nthreads);
    std::vector<std::thread> workers;
    std::size_t per = (pts.size() + nthreads - 1) / nthreads;
    for (unsigned ti = 0; ti < nthreads; ++ti) {
        workers.emplace_back([&, ti] {
            Chunk& c = chunks[ti];
            std::size_t lo = ti * per, hi = std::min(pts.size(), lo + per);
            c.ratios.resize(hi > lo ? hi - lo : 0);
            for (std::size_t i = lo; i < hi; ++i) {
                double num = numerator(pts[i]);
                double den = denominator(pts[i]);
                if (!(num > 0.0) || !(den > 0.0) || !std::isfinite(num) || !std::isfinite(den)) {
                    if (!c.violated) {
                        c.violated = true;
                        c.iviol = i;
                        c.vnum = num;
                        c.vden = den;
                    }
                    continue;
                }
                double r = num / den;
                c.ratios[i - lo] = r;
                if (r < c.lo) {
                    c.lo = r;
                    c.ilo = i;
                }
                if (r > c.hi) {
                    c.hi = r;
                    c.ihi = i;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    for (unsigned ti = 0; ti < nthreads; ++ti)
        if (chunks[ti].violated) {
            const Chunk& c = chunks[ti];
            throw ScanViolation("ratio_scan: nonpositive or nonfinite evaluation",
                                pts[c.iviol], c.vnum, c.vden);
        }

    // deterministic merge with running checkpoints
    RatioReport rep;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    rep.max_ratio = -std::numeric_limits<double>::infinity();
    std::size_t next_cp = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double r = chunks[i / per].ratios[i % per];
        if (r < rep.min_ratio) {
            rep.min_ratio = r;
            rep.argmin = pts[i];
        }
        if (r > rep.max_ratio) {
            rep.max_ratio = r;
            rep.argmax = pts[i];
        }
        if (next_cp < checkpoints.size() && i + 1 == checkpoints[next_cp]) {
            rep.refinement_history.push_back(
                {static_cast<double>(i + 1), rep.min_ratio, rep.max_ratio});
            ++next_cp;
        }
    }
    if (sample_sink)
        for (const Vec& p : pts) {
            double num = numerator(p), den = denominator(p);
            sample_sink(p, num, den, num / den);
        }
    rep.n_samples = pts.size();
    return rep;
}

/// Least-squares slope of log f against log t over a log-uniform grid.
inline double long_time_slope(const std::function<double(double)>& f_of_t, double t_lo,
                              double t_hi, std::size_t n = 48) {
    if (!(t_hi / t_lo >= 1e3)) throw std::invalid_argument("long_time_slope: need t_hi/t_lo >= 1e3");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double u = static_cast<double>(i) / static_cast<double>(n - 1);
        double t = t_lo * std::pow(t_hi / t_lo, u);
        double v = f_of_t(t);
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::runtime_error("long_time_slope: kernel evaluation not positive");
        double lx = std::log(t), ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// scalar inequality suite
// ---------------------------------------------------------------------------

struct InequalityResult {
    std::string name;
    bool pass = false;
    std::size_t n_samples = 0;
    double measured_lo = 0.0;
    double measured_hi = 0.0;
    Vec witness;       // first violating sample, empty when pass
    std::string note;  // what the measured numbers are
};

namespace estimate_detail {

inline double lx_function(double X, double s) {
    return (std::sinh((1.0 + s) * X) - (1.0 + s) / (1.0 - s) * std::sinh((1.0 - s) * X)) /
           std::sinh(s * X);
}

inline double phi1(double x1, double x2, double y1, double y2) {
    double a = (x1 + x2) * (y1 + y2), b = (x1 + x2) * (y1 - y2);
    double c = (x1 - x2) * (y1 - y2), d = (x1 - x2) * (y1 + y2);
    return (a + 1.0) / (b + 1.0) * ((c + 1.0) / (d + 1.0)) * std::exp(-2.0 * x2 * y2);
}

inline double phi2(double x1, double x2, double y1, double y2) {
    return (x1 * y1 + 1.0) / (x2 * y1 + 1.0) * ((x2 * y2 + 1.0) / (x1 * y2 + 1.0)) *
           std::exp(-(x1 - x2) * (y1 - y2));
}

}  // namespace estimate_detail

std::vector<std::string> inequality_names();
InequalityResult run_inequality(const std::string& name, std::size_t n, std::uint64_t seed);

/// Run the selected inequalities (all when `selection` is empty).
inline std::vector<InequalityResult> inequality_suite(const std::vector<std::string>& selection,
                                                      std::size_t n = 10000,
                                                      std::uint64_t seed = 2024) {
    std::vector<std::string> names = selection.empty() ? inequality_names() : selection;
    std::vector<InequalityResult> out;
    out.reserve(names.size());
    for (const auto& name : names) out.push_back(run_inequality(name, n, seed));
    return out;
}

}  // namespace weylheat

#include "weylheat/estimate_inequalities.hpp"
