#pragma once

// Harmonic profiles of the planar cones of aperture pi/m: the degree-m
// polynomial h_m, positive inside, vanishing on the boundary rays,
//   m even: h_m = m x1 x2 prod_{j=1}^{m/2-1} (x1 - u_j x2)(x1 + u_j x2),
//   m odd:  h_m = x1 prod_{j=0}^{(m-3)/2} (x1 - u_j x2)(x1 + u_j x2),
// with u_j = 1/tan(pi j/m) resp. 1/tan(pi (j+1/2)/m).  The monic linear
// factors drive the conjectured product bound for general m (proved for
// m <= 4, where it coincides with the theorem bounds), its reduced and
// distance-function reformulations, the half-space-intersection kernel in
// R^d, and the comparison against the profile-at-adjusted-points bound
// shape used for inner uniform domains.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "weylheat/dihedral.hpp"
#include "weylheat/gauss.hpp"
#include "weylheat/linalg.hpp"
#include "weylheat/root_system.hpp"

namespace weylheat {

struct LinearForm {
    double a = 0.0;  // coefficient of x1
    double b = 0.0;  // coefficient of x2
    double operator()(const Vec& x) const { return a * x[0] + b * x[1]; }
};

struct Profile {
    std::size_t m = 0;
    double constant = 1.0;             // m for even m, 1 for odd m
    std::vector<double> roots;         // u_{j,m}, strictly decreasing
    std::vector<LinearForm> factors;   // m monic degree-1 factors

    /// coefficient (binomial) form of h_m
    double eval_coefficient(const Vec& x) const {
        auto powi = [](double v, std::size_t n) {
            double r = 1.0;
            for (std::size_t i = 0; i < n; ++i) r *= v;
            return r;
        };
        double x1 = x[0], x2 = x[1];
        double acc = 0.0;
        if (m % 2 == 0) {
            double binom = static_cast<double>(m);  // C(m,1)
            for (std::size_t j = 0; 2 * j + 1 <= m - 1; ++j) {
                double sign = j % 2 == 0 ? 1.0 : -1.0;
                acc += sign * binom * powi(x1, m - 2 * j - 1) * powi(x2, 2 * j + 1);
                binom *= static_cast<double>(m - 2 * j - 1) * static_cast<double>(m - 2 * j - 2) /
                         (static_cast<double>(2 * j + 2) * static_cast<double>(2 * j + 3));
            }
        } else {
            double binom = 1.0;  // C(m,0)
            for (std::size_t j = 0; 2 * j <= m; ++j) {
                double sign = j % 2 == 0 ? 1.0 : -1.0;
                acc += sign * binom * powi(x1, m - 2 * j) * powi(x2, 2 * j);
                binom *= static_cast<double>(m - 2 * j) * static_cast<double>(m - 2 * j - 1) /
                         (static_cast<double>(2 * j + 1) * static_cast<double>(2 * j + 2));
            }
        }
        return acc;
    }

    /// factored form constant * prod of the linear factors; the stable
    /// evaluation near the zero rays
    double eval_factored(const Vec& x) const {
        double v = constant;
        for (const LinearForm& f : factors) v *= f(x);
        return v;
    }

    /// monic product (no leading constant); the factor set the bounds use
    double monic_product(const Vec& x) const {
        double v = 1.0;
        for (const LinearForm& f : factors) v *= f(x);
        return v;
    }
};

namespace profile_detail {

// cot(pi num/den) to correctly rounded double (the plain double route misses
// by an ulp at the algebraic angles, e.g. cot(pi/4) must land exactly on 1)
inline double cot_pi(std::size_t num, std::size_t den) {
    dd a = dd_div(dd_mul(dd_const::pi, static_cast<double>(num)), static_cast<double>(den));
    return static_cast<double>(dd_div(dd_cos(a), dd_sin(a)));
}

}  // namespace profile_detail

inline Profile profile(std::size_t m) {
    if (m < 1) throw std::invalid_argument("profile: m >= 1");
    Profile p;
    p.m = m;
    if (m % 2 == 0) {
        p.constant = static_cast<double>(m);
        p.factors.push_back({1.0, 0.0});
        p.factors.push_back({0.0, 1.0});
        for (std::size_t j = 1; j <= m / 2 - 1; ++j) {
            double u = profile_detail::cot_pi(j, m);
            p.roots.push_back(u);
            p.factors.push_back({1.0, -u});
            p.factors.push_back({1.0, u});
        }
    } else {
        p.constant = 1.0;
        p.factors.push_back({1.0, 0.0});
        for (std::size_t j = 0; m >= 3 && j <= (m - 3) / 2; ++j) {
            double u = profile_detail::cot_pi(2 * j + 1, 2 * m);
            p.roots.push_back(u);
            p.factors.push_back({1.0, -u});
            p.factors.push_back({1.0, u});
        }
    }
    return p;
}

enum class ConjectureForm { factor_product, reduced, distance };

inline ConjectureForm conjecture_form_from_string(const std::string& s) {
    if (s == "factor-product" || s == "factor_product") return ConjectureForm::factor_product;
    if (s == "reduced") return ConjectureForm::reduced;
    if (s == "distance") return ConjectureForm::distance;
    throw std::invalid_argument("unknown conjecture bound form: " + s);
}

/// true when the product bound for C_+^{(m)} is only conjectured (m >= 5);
/// m <= 4 is covered by the proven product/dihedral bounds
inline bool conjecture_is_conjectural(std::size_t m) { return m > 4; }

/// Product bound for the Dirichlet kernel of C_+^{(m)}:
///   prod_j  f_j(x) f_j(y) / (f_j(x) f_j(y) + t)  *  (free planar Gaussian)
/// over the m monic profile factors, or its reduced/distance reformulations.
inline double conjecture_bound(std::size_t m, const EvalPoint& p,
                               ConjectureForm form = ConjectureForm::factor_product) {
    if (!(p.t > 0.0)) throw std::invalid_argument("conjecture_bound: t must be positive");
    if (m < 1) throw std::invalid_argument("conjecture_bound: m >= 1");
    Profile pr = profile(m);
    double g = gauss_kernel_displaced(2, p.t, p.x, p.y);
    switch (form) {
        case ConjectureForm::factor_product: {
            double v = g;
            for (const LinearForm& f : pr.factors) {
                double A = f(p.x) * f(p.y);
                v *= A / (A + p.t);
            }
            return v;
        }
        case ConjectureForm::reduced: {
            if (m < 2)
                throw std::invalid_argument("conjecture_bound: reduced form needs m >= 2");
            double A1 = p.x[0] * p.y[0];
            double v = g * std::pow(A1 / (A1 + p.t), static_cast<double>(m - 2));
            if (m % 2 == 0) {
                double A2 = p.x[1] * p.y[1];
                v *= A2 / (A2 + p.t);
                double u = m == 2 ? 0.0 : pr.roots.front();
                if (m > 2) {
                    double A3 = (p.x[0] - u * p.x[1]) * (p.y[0] - u * p.y[1]);
                    v *= A3 / (A3 + p.t);
                } else {
                    // m = 2: the chamber is the quadrant and the two factors
                    // x1 y1, x2 y2 already say it all
                    v *= A1 / (A1 + p.t);
                }
            } else {
                double u = pr.roots.front();
                double A2 = (p.x[0] - u * p.x[1]) * (p.y[0] - u * p.y[1]);
                double A3 = (p.x[0] + u * p.x[1]) * (p.y[0] + u * p.y[1]);
                v *= A2 / (A2 + p.t) * (A3 / (A3 + p.t));
            }
            return v;
        }
        case ConjectureForm::distance: {
            if (m < 2)
                throw std::invalid_argument("conjecture_bound: distance form needs m >= 2");
            RootSystem sys = build_dihedral(m);
            auto gx = chamber_geometry(sys, p.x);
            auto gy = chamber_geometry(sys, p.y);
            double v = g * std::pow(std::min(1.0, gx.vertex_distance * gy.vertex_distance / p.t),
                                    static_cast<double>(m - 2));
            for (std::size_t f = 0; f < 2; ++f)
                v *= std::min(1.0, gx.facet_distances[f] * gy.facet_distances[f] / p.t);
            return v;
        }
    }
    throw std::invalid_argument("conjecture_bound: unknown form");
}

/// Factor product of the conjecture bound without the Gaussian.
inline double conjecture_bound_vs_gauss(std::size_t m, const EvalPoint& p) {
    if (!(p.t > 0.0)) throw std::invalid_argument("conjecture_bound: t must be positive");
    Profile pr = profile(m);
    double v = 1.0;
    for (const LinearForm& f : pr.factors) {
        double A = f(p.x) * f(p.y);
        v *= A / (A + p.t);
    }
    return v;
}

// ---------------------------------------------------------------------------
// intersection of two half-spaces in R^d, d >= 3
// ---------------------------------------------------------------------------

struct HalfspaceIntersection {
    double kernel = 0.0;
    double bound = 0.0;
    bool conjectural = false;  // bound shape proven only for m <= 4
};

/// Unit inward normals of the two supporting half-spaces (last two
/// coordinates active); their dihedral angle is pi/m.
inline std::pair<Vec, Vec> halfspace_normals(std::size_t d, std::size_t m) {
    const double pi = std::numbers::pi;
    Vec v1(d, 0.0), v2(d, 0.0);
    if (m % 2 == 0) {
        v1[d - 1] = 1.0;
        v2[d - 2] = std::sin(pi / static_cast<double>(m));
        v2[d - 1] = -std::cos(pi / static_cast<double>(m));
    } else {
        double a = pi / (2.0 * static_cast<double>(m));
        v1[d - 2] = std::sin(a);
        v1[d - 1] = std::cos(a);
        v2[d - 2] = std::sin(a);
        v2[d - 1] = -std::cos(a);
    }
    return {v1, v2};
}

/// Dirichlet heat kernel of H_m = {x : <x,v1> > 0, <x,v2> > 0} (a product of
/// a free (d-2)-dimensional Gaussian and the cone kernel in the last two
/// coordinates) together with the distance-product bound.  The kernel is
/// exact for every m (closed forms for m = 3,4, the signed image sum
/// otherwise); the bound shape is the conjectured one for m >= 5.
inline HalfspaceIntersection halfspace_intersection_kernel(std::size_t d, std::size_t m,
                                                           const EvalPoint& p) {
    if (d < 3) throw std::invalid_argument("halfspace_intersection_kernel: d >= 3");
    if (m < 2) throw std::invalid_argument("halfspace_intersection_kernel: m >= 2");
    if (p.x.size() != d || p.y.size() != d)
        throw std::invalid_argument("halfspace_intersection_kernel: dimension mismatch");

    Vec xf(p.x.begin(), p.x.end() - 2), yf(p.y.begin(), p.y.end() - 2);
    Vec xc{p.x[d - 2], p.x[d - 1]}, yc{p.y[d - 2], p.y[d - 1]};

    RootSystem cone = build_dihedral(m);
    auto gx = chamber_geometry(cone, xc);
    auto gy = chamber_geometry(cone, yc);
    for (const Vec& a : cone.chamber.simple_normals)
        if (dot(xc, a) < -1e-12 || dot(yc, a) < -1e-12)
            throw std::invalid_argument("halfspace_intersection_kernel: point outside H_m");

    HalfspaceIntersection out;
    out.conjectural = conjecture_is_conjectural(m);

    double cone_kernel;
    EvalPoint pc{xc, yc, p.t};
    if (m == 3)
        cone_kernel = kernel_I3("det", pc);
    else if (m == 4)
        cone_kernel = kernel_I4("det", pc);
    else {
        static thread_local std::vector<ReflectionContext> cache;  // indexed by m
        if (cache.size() <= m) cache.resize(m + 1);
        if (cache[m].group.size() == 0) cache[m] = ReflectionContext::dihedral(m);
        KernelSpec spec{&cache[m], &cache[m].eta("det"), Precision::extended};
        cone_kernel = kernel_reflection_sum(spec, pc).value;
    }
    double free_part = d > 2 ? gauss_kernel(d - 2, p.t, sub(xf, yf)) : 1.0;
    out.kernel = free_part * cone_kernel;

    double b = gauss_kernel_displaced(d, p.t, p.x, p.y);
    b *= std::pow(std::min(1.0, gx.vertex_distance * gy.vertex_distance / p.t),
                  static_cast<double>(m - 2));
    for (std::size_t f = 0; f < 2; ++f)
        b *= std::min(1.0, gx.facet_distances[f] * gy.facet_distances[f] / p.t);
    out.bound = b;
    return out;
}

// ---------------------------------------------------------------------------
// profile-at-adjusted-points comparison
// ---------------------------------------------------------------------------

struct GscCompare {
    Vec adjusted_x;
    Vec adjusted_y;
    double gsc_value = 0.0;        // t^{-1} h(x)h(y)/(h(x_*)h(y_*)) e^{-|x-y|^2/4t}
    double uuu_left_ratio = 0.0;   // h(x_*)h(y_*) e^{-eps|x-y|^2/t} / D(x,y,t)
    double uuu_right_ratio = 0.0;  // D(x,y,t) / (h(x_*)h(y_*))
};

/// Chamber bisector unit vector: (cos(pi/2m), sin(pi/2m)) for even m,
/// (1,0) for odd m.
inline Vec chamber_bisector(std::size_t m) {
    if (m % 2 == 1) return {1.0, 0.0};
    double a = std::numbers::pi / (2.0 * static_cast<double>(m));
    return {std::cos(a), std::sin(a)};
}

/// Compare the denominator product D(x,y,t) = prod_j (f_j(x) f_j(y) + t)
/// against the profile evaluated at the sqrt(t)-adjusted points
/// z_* = z + sqrt(t) v_2.  Both ratios are scale-invariant, so everything
/// reduces to t = 1.
inline GscCompare gsc_compare(std::size_t m, const EvalPoint& p, double epsilon) {
    if (m < 2) throw std::invalid_argument("gsc_compare: m >= 2");
    if (!(p.t > 0.0) || !(epsilon > 0.0))
        throw std::invalid_argument("gsc_compare: need t > 0 and epsilon > 0");
    Profile pr = profile(m);
    Vec v2 = chamber_bisector(m);
    double rt = std::sqrt(p.t);

    GscCompare out;
    out.adjusted_x = add(p.x, scale(v2, rt));
    out.adjusted_y = add(p.y, scale(v2, rt));

    // reduce to t = 1
    Vec xs = scale(p.x, 1.0 / rt), ys = scale(p.y, 1.0 / rt);
    Vec xa = add(xs, v2), ya = add(ys, v2);
    double hxa = pr.monic_product(xa), hya = pr.monic_product(ya);
    double D = 1.0;
    for (const LinearForm& f : pr.factors) D *= f(xs) * f(ys) + 1.0;
    double q = dist2(xs, ys);

    out.uuu_right_ratio = D / (hxa * hya);
    out.uuu_left_ratio = hxa * hya * std::exp(-epsilon * q) / D;
    out.gsc_value = (1.0 / p.t) * pr.monic_product(xs) * pr.monic_product(ys) /
                    (hxa * hya) * std::exp(-q / 4.0);
    return out;
}

}  // namespace weylheat
