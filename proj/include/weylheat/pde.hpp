#pragma once

// Independent verification by direct numerics.
//
// * solve_heat_i24: explicit finite-volume heat solver on the pi/4 cone
//   0 < x2 < x1, on the square lattice (whose axes and main diagonal are
//   exactly the two facets), with per-facet Dirichlet (pinned zero) or
//   Neumann (mirror flux) conditions taken from the sign label.  Node
//   weights 1 / 1/2 / 1/8 (interior / facet / vertex) make the scheme
//   exactly conservative under all-Neumann conditions up to the outer
//   truncation.
// * solve_heat_halfline: the 1D analogue on (0, R).
// * semigroup_defect: adaptive Gauss-Kronrod quadrature check of
//   int p_t(x,z) p_s(z,y) dz = p_{t+s}(x,y) over the chamber.
// * residual_check: finite-difference heat-equation residual of a kernel.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "weylheat/dihedral.hpp"
#include "weylheat/gauss.hpp"
#include "weylheat/linalg.hpp"

namespace weylheat {

struct ConeGridSolution {
    double h = 0.0;
    std::size_t N = 0;          // nodes (i,j), 0 <= j <= i <= N, x = (i h, j h)
    std::vector<double> u;      // triangular layout
    double t_final = 0.0;
    double mass_initial = 0.0;  // weighted lattice mass at start/end
    double mass_final = 0.0;

    std::size_t idx(std::size_t i, std::size_t j) const { return i * (i + 1) / 2 + j; }
    double value(std::size_t i, std::size_t j) const { return u[idx(i, j)]; }
    Vec node(std::size_t i, std::size_t j) const {
        return {static_cast<double>(i) * h, static_cast<double>(j) * h};
    }
};

/// Explicit finite-volume march for the pi/4 cone under the sign label
/// `eta` (triv, N1, N2, det), seeded with the exact kernel at t0 = 25 h^2
/// (overridable so refinement studies can share one initial time).
inline ConeGridSolution solve_heat_i24(const std::string& eta, const Vec& y_source,
                                       double t_final, double h, double R,
                                       double t0_override = 0.0) {
    if (!(h > 0.0) || !(R > 4.0 * h)) throw std::invalid_argument("solve_heat_i24: bad grid");
    double t0 = t0_override > 0.0 ? t0_override : 25.0 * h * h;
    if (!(t_final > t0 + 20.0 * h * h / 5.0))
        throw std::invalid_argument("solve_heat_i24: t_final too small for the grid");
    bool dirichlet_flat, dirichlet_diag;  // facet {x2=0}, facet {x2=x1}
    if (eta == "triv") {
        dirichlet_flat = false;
        dirichlet_diag = false;
    } else if (eta == "det") {
        dirichlet_flat = true;
        dirichlet_diag = true;
    } else if (eta == "N1") {
        dirichlet_flat = false;
        dirichlet_diag = true;
    } else if (eta == "N2") {
        dirichlet_flat = true;
        dirichlet_diag = false;
    } else {
        throw std::invalid_argument("solve_heat_i24: unknown eta " + eta);
    }
    // source must sit well inside
    {
        double d_flat = y_source[1];
        double d_diag = (y_source[0] - y_source[1]) / std::sqrt(2.0);
        if (d_flat < 5.0 * h || d_diag < 5.0 * h || norm(y_source) > 0.6 * R)
            throw std::invalid_argument("solve_heat_i24: source too close to the boundary");
    }

    ConeGridSolution sol;
    sol.h = h;
    sol.N = static_cast<std::size_t>(std::floor(R / h));
    sol.t_final = t_final;
    std::size_t N = sol.N;
    sol.u.assign((N + 1) * (N + 2) / 2, 0.0);

    auto inside = [&](std::size_t i, std::size_t j) { return j <= i && i <= N; };
    auto weight = [&](std::size_t i, std::size_t j) -> double {
        if (i == 0 && j == 0) return 0.125;
        if (j == 0 || j == i) return 0.5;
        return 1.0;
    };
    auto pinned = [&](std::size_t i, std::size_t j) {
        if (i >= N) return true;  // outer truncation, Dirichlet
        if (j == 0 && dirichlet_flat) return true;
        if (j == i && dirichlet_diag) return true;
        return false;
    };

    // initial data: exact kernel at t0 (zero on pinned nodes by construction)
    for (std::size_t i = 0; i <= N; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            if (pinned(i, j)) continue;
            sol.u[sol.idx(i, j)] = kernel_I4(eta, {sol.node(i, j), y_source, t0});
        }

    double tau = h * h / 5.0;
    auto mass = [&] {
        double m = 0.0;
        for (std::size_t i = 0; i <= N; ++i)
            for (std::size_t j = 0; j <= i; ++j) m += weight(i, j) * sol.u[sol.idx(i, j)];
        return m * h * h;
    };
    sol.mass_initial = mass();

    std::vector<double> next(sol.u.size(), 0.0);
    double t = t0;
    while (t < t_final - 1e-15 * t_final) {
        double step = std::min(tau, t_final - t);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                std::size_t a = sol.idx(i, j);
                if (pinned(i, j)) {
                    next[a] = 0.0;
                    continue;
                }
                double ua = sol.u[a];
                double flux = 0.0;
                // horizontal neighbours (omega 1/2 along the flat facet)
                double wh = j == 0 ? 0.5 : 1.0;
                if (i + 1 <= N) flux += wh * (sol.u[sol.idx(i + 1, j)] - ua);
                if (i >= 1 && inside(i - 1, j)) flux += wh * (sol.u[sol.idx(i - 1, j)] - ua);
                // vertical neighbours
                if (j + 1 <= i) flux += sol.u[sol.idx(i, j + 1)] - ua;
                if (j >= 1) flux += sol.u[sol.idx(i, j - 1)] - ua;
                next[a] = ua + step / (weight(i, j) * h * h) * flux;
            }
        // outer ring stays zero
        for (std::size_t j = 0; j <= N; ++j) next[sol.idx(N, j)] = 0.0;
        sol.u.swap(next);
        t += step;
    }
    sol.mass_final = mass();
    return sol;
}

struct HalflineSolution {
    double h = 0.0;
    std::size_t N = 0;
    std::vector<double> u;  // u[i] at x = i h
    double t_final = 0.0;
};

/// 1D half-line solver, Dirichlet or Neumann endpoint at 0.
inline HalflineSolution solve_heat_halfline(bool dirichlet, double y_source, double t_final,
                                            double h, double R) {
    if (!(h > 0.0) || !(R > 4.0 * h) || y_source < 5.0 * h)
        throw std::invalid_argument("solve_heat_halfline: bad grid or source");
    double t0 = 25.0 * h * h;
    HalflineSolution sol;
    sol.h = h;
    sol.N = static_cast<std::size_t>(std::floor(R / h));
    sol.t_final = t_final;
    sol.u.assign(sol.N + 1, 0.0);
    for (std::size_t i = 0; i <= sol.N; ++i) {
        double x = static_cast<double>(i) * h;
        double v = gauss_kernel(1, t0, {x - y_source});
        double img = gauss_kernel(1, t0, {x + y_source});
        sol.u[i] = dirichlet ? v - img : v + img;
    }
    if (dirichlet) sol.u[0] = 0.0;
    sol.u[sol.N] = 0.0;

    double tau = h * h / 5.0;
    std::vector<double> next(sol.u.size(), 0.0);
    double t = t0;
    while (t < t_final - 1e-15 * t_final) {
        double step = std::min(tau, t_final - t);
        for (std::size_t i = 0; i < sol.N; ++i) {
            double ua = sol.u[i];
            double flux = 0.0;
            if (i == 0) {
                if (dirichlet) {
                    next[0] = 0.0;
                    continue;
                }
                flux = sol.u[1] - ua;           // mirror ghost, half cell
                next[0] = ua + step / (0.5 * h * h) * flux;
                continue;
            }
            flux = sol.u[i + 1] - 2.0 * ua + sol.u[i - 1];
            next[i] = ua + step / (h * h) * flux;
        }
        next[sol.N] = 0.0;
        sol.u.swap(next);
        t += step;
    }
    return sol;
}

// ---------------------------------------------------------------------------
// adaptive Gauss-Kronrod quadrature
// ---------------------------------------------------------------------------

namespace quad_detail {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule on [-1,1]
inline constexpr double xgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                                  0.741531185599394, 0.586087235467691, 0.405845151377397,
                                  0.207784955007898, 0.0};
inline constexpr double wgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                                  0.140653259715525, 0.169004726639267, 0.190350578064785,
                                  0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                 0.417959183673469};

struct GkResult {
    double value = 0.0;
    double error = 0.0;
};

inline GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    double fc = f(c);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    for (int i = 0; i < 7; ++i) {
        double x = hl * xgk[i];
        double f1 = f(c - x), f2 = f(c + x);
        resk += wgk[i] * (f1 + f2);
        if (i % 2 == 1) resg += wg[i / 2] * (f1 + f2);
    }
    return {resk * hl, std::abs((resk - resg) * hl)};
}

inline double adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                       int depth = 0) {
    GkResult r = gk15(f, a, b);
    if (r.error <= tol || depth >= 24) return r.value;
    double c = 0.5 * (a + b);
    return adaptive(f, a, c, 0.5 * tol, depth + 1) + adaptive(f, c, b, 0.5 * tol, depth + 1);
}

}  // namespace quad_detail

inline double integrate_1d(const std::function<double(double)>& f, double a, double b,
                           double tol_abs) {
    return quad_detail::adaptive(f, a, b, tol_abs);
}

enum class SemigroupDomain { halfline, cone_i23, cone_i24 };

/// Relative Chapman-Kolmogorov defect
///   | int_C p_t(x,.) p_s(.,y) - p_{t+s}(x,y) | / p_{t+s}(x,y)
/// by iterated adaptive quadrature over the truncated chamber.
inline double semigroup_defect(
    SemigroupDomain domain,
    const std::function<double(const Vec&, const Vec&, double)>& kernel, const Vec& x,
    const Vec& y, double t, double s) {
    if (!(t > 0.0) || !(s > 0.0)) throw std::invalid_argument("semigroup_defect: need t,s > 0");
    double target = kernel(x, y, t + s);
    if (!(target > 0.0)) throw std::invalid_argument("semigroup_defect: kernel not positive");
    double tmax = std::max(t, s);
    double reach = std::sqrt(4.0 * tmax * 45.0);  // e^{-45} ~ 3e-20 of peak
    double R = std::max(norm(x), norm(y)) + reach;

    if (domain == SemigroupDomain::halfline) {
        double tol = 1e-9 * target * std::max(1.0, R);
        double integral = integrate_1d(
            [&](double z) { return kernel(x, {z}, t) * kernel({z}, y, s); }, 0.0, R, tol);
        return std::abs(integral - target) / target;
    }

    double tol_outer = 1e-9 * target;
    auto inner = [&](double u) {
        double lo, hi;
        if (domain == SemigroupDomain::cone_i24) {
            lo = 0.0;
            hi = u;
        } else {
            hi = u / std::numbers::sqrt3;
            lo = -hi;
        }
        if (hi <= lo) return 0.0;
        double tol_inner = tol_outer / R;
        return integrate_1d(
            [&](double v) { return kernel(x, {u, v}, t) * kernel({u, v}, y, s); }, lo, hi,
            tol_inner);
    };
    double integral = integrate_1d(inner, 0.0, R, tol_outer * 4.0);
    return std::abs(integral - target) / target;
}

/// Heat-equation residual |d_t p - Lap_x p| / |d_t p| by central differences
/// with relative step `h` (time step h*t, space step h*sqrt(t)).
inline double residual_check(const std::function<double(const Vec&, double)>& p, const Vec& x,
                             double t, double h) {
    double dt = h * t;
    double dx = h * std::sqrt(t);
    double pt = (p(x, t + dt) - p(x, t - dt)) / (2.0 * dt);
    double c = p(x, t);
    double lap = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Vec xp = x, xm = x;
        xp[i] += dx;
        xm[i] -= dx;
        lap += (p(xp, t) - 2.0 * c + p(xm, t)) / (dx * dx);
    }
    return std::abs(pt - lap) / std::abs(pt);
}

}  // namespace weylheat
