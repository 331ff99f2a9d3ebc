#pragma once

// Closed forms for the heat kernels on the planar cones of aperture pi/3
// (I2(3)) and pi/4 (I2(4)) under all of their boundary sign labels, written
// so that no catastrophic subtraction survives:
//
//   * every kernel is reduced to t = 1/2 by exact parabolic scaling;
//   * the factors 1 - e^{-u} go through expm1;
//   * the genuinely oscillating Dirichlet cases are expressed through ratio
//     functions G in reduced variables (s, X, Y), evaluated either by the
//     series oracle (small arguments) or by exponent-shifted logarithmic
//     forms with a double-double fallback when the log-difference is tiny.
//
// The I2(4) kernel at t = 1/2 is
//   p(x,y) = (2/pi) exp(-|x-y|^2/2) E_eta(x,y),   E = e^{-<x,y>} Psi_eta,
// and the I2(3) Dirichlet kernel at t = 1/2 is
//   p(x,y) = (1/pi) exp(-|x-y|^2/2) * (1 - e^{-2 x1 y1})/2 * G3(s,X,Y).

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "weylheat/dd.hpp"
#include "weylheat/gauss.hpp"
#include "weylheat/linalg.hpp"
#include "weylheat/series.hpp"

namespace weylheat {

struct DihedralVars {
    double s = 0.0;
    double X = 0.0;
    double Y = 0.0;
    bool degenerate = false;  // some reduced variable sits on its boundary value
};

/// Reduced variables at t = 1/2.
///   m = 4: X = x1 y1, Y = x2 y1, s = y2/y1; interior points give
///          0 < s < 1, 0 < Y < X and (x1-x2)(y1-y2) = (1-s)(X-Y).
///   m = 3: X = (x1 - sqrt3 x2) y1 / 2, Y = (x1 + sqrt3 x2) y1 / 2,
///          s = sqrt3 y2/y1; interior points give |s| < 1, X, Y > 0 and
///          X + Y = x1 y1.
inline DihedralVars change_variables(std::size_t m, const Vec& x, const Vec& y) {
    if (x.size() != 2 || y.size() != 2) throw std::invalid_argument("change_variables: 2D only");
    DihedralVars v;
    if (m == 4) {
        v.X = x[0] * y[0];
        v.Y = x[1] * y[0];
        v.s = y[0] != 0.0 ? y[1] / y[0] : 0.0;
        v.degenerate = !(v.s > 0.0 && v.s < 1.0 && v.Y > 0.0 && v.Y < v.X);
    } else if (m == 3) {
        const double r3 = std::numbers::sqrt3;
        v.X = (x[0] - r3 * x[1]) * y[0] / 2.0;
        v.Y = (x[0] + r3 * x[1]) * y[0] / 2.0;
        v.s = y[0] != 0.0 ? r3 * y[1] / y[0] : 0.0;
        v.degenerate = !(v.s > -1.0 && v.s < 1.0 && v.X > 0.0 && v.Y > 0.0);
    } else {
        throw std::invalid_argument("change_variables: m must be 3 or 4");
    }
    return v;
}

namespace dihedral_detail {

inline double em(double u) { return -std::expm1(-u); }  // 1 - e^{-u}, u >= 0

inline dd dd_em(dd u) { return dd_neg(dd_expm1(dd_neg(u))); }

// exact (error-free) products (1-s)*(X-Y) etc. from double inputs
inline dd exact_prod(double a, double b) { return detail::two_prod(a, b); }

}  // namespace dihedral_detail

/// G for the pi/4 cone:
///   G(s,X,Y) = 1 - (sinh(sX)/sinh X)(sinh Y / sinh(sY)),  0<s<1, 0<Y<X,
/// continuously extended to the boundary (value 0 at s=1 or Y=X, and the
/// sinhc limits at s=0, Y=0).  Positive-factor series route for X <= 2,
/// exponent-shifted log route beyond.
inline double g_function_I4(double s, double X, double Y) {
    if (!(s >= 0.0 && s <= 1.0) || !(Y >= 0.0) || !(Y <= X))
        throw std::domain_error("g_function_I4: need 0<=s<=1, 0<=Y<=X");
    if (X == 0.0 || s == 1.0 || X == Y) return 0.0;

    if (X <= 2.0) {
        // sinh X sinh(sY) - sinh(sX) sinh Y = s(1-s^2) XY (X^2-Y^2) P / 16
        // with P the claim-family series at halved arguments; dividing by
        // sinh X sinh(sY) = sinh X * sY sinhc(sY) cancels s and Y exactly.
        double P = series_claim1_I4(s, X / 2.0, Y / 2.0, 1e-15).value;
        double sinhc_sY = s * Y == 0.0 ? 1.0 : std::sinh(s * Y) / (s * Y);
        return (1.0 - s * s) * X * (X * X - Y * Y) * P / (16.0 * std::sinh(X) * sinhc_sY);
    }

    using dihedral_detail::em;
    // Delta = log[(sinh(sX) sinh Y)/(sinh X sinh(sY))]
    //       = -(1-s)(X-Y) + log(em(2sX)/em(2sY)) + log(em(2Y)/em(2X))
    // with the s=0 and Y=0 faces entering through their sinhc limits
    if (s == 0.0 && Y == 0.0) return 1.0 - X / std::sinh(X);
    dd lin = dd_neg(dihedral_detail::exact_prod(1.0 - s, X - Y));
    double c1, c2;
    if (Y == 0.0) {
        c1 = std::log(em(2.0 * s * X) / (s * em(2.0 * X)));
        c2 = 0.0;
    } else if (s == 0.0) {
        c1 = std::log(X / Y);
        c2 = std::log(em(2.0 * Y) / em(2.0 * X));
    } else {
        c1 = std::log(em(2.0 * s * X) / em(2.0 * s * Y));
        c2 = std::log(em(2.0 * Y) / em(2.0 * X));
    }
    double delta = static_cast<double>(dd_add(lin, c1 + c2));
    if (std::abs(delta) < 1e-2 && s > 0.0 && Y > 0.0) {
        using dihedral_detail::dd_em;
        dd d = lin;
        d = dd_add(d, dd_log(dd_div(dd_em(dd_mul(dd(2.0 * s), X)), dd_em(dd_mul(dd(2.0 * s), Y)))));
        d = dd_add(d, dd_log(dd_div(dd_em(dd_mul(dd(2.0), Y)), dd_em(dd_mul(dd(2.0), X)))));
        delta = static_cast<double>(d);
    }
    return -std::expm1(delta);
}

/// G for the pi/3 cone:
///   G(s,X,Y) = 1 - (e^{sX} sinh Y + e^{-sY} sinh X)/sinh(X+Y),
/// |s|<1, X,Y>0, extended by 0 to the boundary of the layer.  Everywhere it
/// reduces to the product difference
///   G = [em(T) em(U) - e^{-(T+U)} em(T') em(U')] / em(2(X+Y))
/// with T=(1-s)X, U=(1+s)Y, T'=(1+s)X, U'=(1-s)Y, which the series route
/// covers for small arguments and the log form covers elsewhere.
inline double g_function_I3(double s, double X, double Y) {
    if (!(s >= -1.0 && s <= 1.0) || !(X >= 0.0) || !(Y >= 0.0))
        throw std::domain_error("g_function_I3: need |s|<=1, X,Y>=0");
    if (X == 0.0 || Y == 0.0 || s == 1.0 || s == -1.0) return 0.0;

    if (std::max(X, Y) <= 1.0) {
        double P = series_small_I3(s, X, Y, 1e-15).value;
        return (1.0 - s * s) * X * Y * (X + Y) * P / std::sinh(X + Y);
    }

    using dihedral_detail::em;
    double T = (1.0 - s) * X, U = (1.0 + s) * Y;
    double Tp = (1.0 + s) * X, Up = (1.0 - s) * Y;
    // Delta = -(T+U) + log em(T') + log em(U') - log em(T) - log em(U)
    dd lin = dd_neg(dd_add(dihedral_detail::exact_prod(1.0 - s, X),
                           dihedral_detail::exact_prod(1.0 + s, Y)));
    double corr = std::log1p(-std::exp(-Tp)) + std::log1p(-std::exp(-Up)) -
                  std::log1p(-std::exp(-T)) - std::log1p(-std::exp(-U));
    double delta = static_cast<double>(dd_add(lin, corr));
    if (std::abs(delta) < 1e-2) {
        using dihedral_detail::dd_em;
        dd d = lin;
        d = dd_add(d, dd_log(dd_em(dd(Tp))));
        d = dd_add(d, dd_log(dd_em(dd(Up))));
        d = dd_sub(d, dd_log(dd_em(dd(T))));
        d = dd_sub(d, dd_log(dd_em(dd(U))));
        delta = static_cast<double>(d);
    }
    return em(T) * em(U) * (-std::expm1(delta)) / em(2.0 * (X + Y));
}

inline double g_function(std::size_t m, double s, double X, double Y) {
    if (m == 4) return g_function_I4(s, X, Y);
    if (m == 3) return g_function_I3(s, X, Y);
    throw std::invalid_argument("g_function: m must be 3 or 4");
}

/// Stable value of sinh(X+Y) - e^{sX} sinh Y - e^{-sY} sinh X (the numerator
/// of G3 scaled by sinh(X+Y)); overflows only when e^{X+Y} does.
inline double g3_numerator(double s, double X, double Y) {
    return g_function_I3(s, X, Y) * std::sinh(X + Y);
}

namespace dihedral_detail {

inline void require_closure(const RootSystem& sys, const Vec& x, const char* who) {
    for (const Vec& a : sys.chamber.simple_normals)
        if (dot(x, a) < -1e-12 * (1.0 + norm(x)))
            throw std::invalid_argument(std::string(who) + ": point outside chamber closure");
}

// E = e^{-<x,y>} Psi_{1/2,eta}(x,y) for the pi/4 cone, all-positive forms.
inline double i4_reduced_E(const std::string& eta, const Vec& x, const Vec& y) {
    double a = x[0] * y[0], b = x[1] * y[1], c = x[1] * y[0], d = x[0] * y[1];
    if (eta == "triv") {
        double t1 = (1.0 + std::exp(-2.0 * a)) * (1.0 + std::exp(-2.0 * b));
        double t2 = (1.0 + std::exp(-2.0 * c)) * (1.0 + std::exp(-2.0 * d));
        return 0.25 * (t1 + std::exp(-(x[0] - x[1]) * (y[0] - y[1])) * t2);
    }
    if (eta == "N2") {
        double t1 = em(2.0 * a) * em(2.0 * b);
        double t2 = em(2.0 * c) * em(2.0 * d);
        return 0.25 * (t1 + std::exp(-(x[0] - x[1]) * (y[0] - y[1])) * t2);
    }
    if (eta == "N1") {
        double P = (x[0] + x[1]) * (y[0] + y[1]) / 2.0;
        double Q = (x[0] - x[1]) * (y[0] - y[1]) / 2.0;
        double Pp = (x[0] + x[1]) * (y[0] - y[1]) / 2.0;
        double Qp = (x[0] - x[1]) * (y[0] + y[1]) / 2.0;
        return 0.25 * (em(2.0 * P) * em(2.0 * Q) +
                       std::exp(-2.0 * b) * em(2.0 * Pp) * em(2.0 * Qp));
    }
    if (eta == "det" || eta == "sgn") {
        double f1 = em(2.0 * a), f2 = em(2.0 * b);
        if (f1 == 0.0 || f2 == 0.0) return 0.0;
        DihedralVars v = change_variables(4, x, y);
        double G = g_function_I4(std::min(1.0, std::max(0.0, v.s)), v.X,
                                 std::min(v.X, std::max(0.0, v.Y)));
        return 0.25 * f1 * f2 * G;
    }
    throw std::invalid_argument("i4_reduced_E: unknown eta " + eta);
}

}  // namespace dihedral_detail

/// Psi_{t,eta} for the pi/4 cone, by the explicitly positive rearrangements.
/// This is the bare group-sum factor; it overflows once <x,y>/2t exceeds the
/// double exponent range, which the kernels below avoid by never forming it.
inline double psi_I4(const std::string& eta, double t, const Vec& x, const Vec& y) {
    if (!(t > 0.0)) throw std::invalid_argument("psi_I4: t must be positive");
    double lam = std::sqrt(2.0 * t);
    Vec xs = scale(x, 1.0 / lam), ys = scale(y, 1.0 / lam);
    return std::exp(dot(xs, ys)) * dihedral_detail::i4_reduced_E(eta, xs, ys);
}

/// Psi_{t,eta} by the raw hyperbolic formulas (cancellation-prone; kept as a
/// cross-check surface for the rearranged forms).
inline double psi_I4_raw(const std::string& eta, double t, const Vec& x, const Vec& y) {
    if (!(t > 0.0)) throw std::invalid_argument("psi_I4_raw: t must be positive");
    double a = x[0] * y[0] / (2.0 * t), b = x[1] * y[1] / (2.0 * t);
    double c = x[1] * y[0] / (2.0 * t), d = x[0] * y[1] / (2.0 * t);
    if (eta == "det" || eta == "sgn") return std::sinh(a) * std::sinh(b) - std::sinh(c) * std::sinh(d);
    if (eta == "N1") return std::cosh(a) * std::cosh(b) - std::cosh(c) * std::cosh(d);
    if (eta == "N2") return std::sinh(a) * std::sinh(b) + std::sinh(c) * std::sinh(d);
    if (eta == "triv") return std::cosh(a) * std::cosh(b) + std::cosh(c) * std::cosh(d);
    throw std::invalid_argument("psi_I4_raw: unknown eta " + eta);
}

/// Heat kernel on the pi/4 cone for eta in {triv, N1, N2, det}; any t > 0.
inline double kernel_I4(const std::string& eta, const EvalPoint& p) {
    if (!(p.t > 0.0)) throw std::invalid_argument("kernel_I4: t must be positive");
    static const RootSystem sys = build_dihedral(4);
    dihedral_detail::require_closure(sys, p.x, "kernel_I4");
    dihedral_detail::require_closure(sys, p.y, "kernel_I4");
    double lam = std::sqrt(2.0 * p.t);
    Vec x = scale(p.x, 1.0 / lam), y = scale(p.y, 1.0 / lam);
    double E = dihedral_detail::i4_reduced_E(eta, x, y);
    double pref = (2.0 / std::numbers::pi) * std::exp(-dist2(x, y) / 2.0);
    return pref * E / (lam * lam);
}

/// Heat kernel on the pi/3 cone, eta in {triv, det}; any t > 0.
inline double kernel_I3(const std::string& eta, const EvalPoint& p) {
    if (!(p.t > 0.0)) throw std::invalid_argument("kernel_I3: t must be positive");
    static const RootSystem sys = build_dihedral(3);
    dihedral_detail::require_closure(sys, p.x, "kernel_I3");
    dihedral_detail::require_closure(sys, p.y, "kernel_I3");
    if (eta == "triv") {
        static const ReflectionContext ctx = ReflectionContext::dihedral(3);
        KernelSpec spec{&ctx, &ctx.eta("triv"), Precision::compensated};
        return kernel_reflection_sum(spec, p).value;  // non-alternating sum
    }
    if (eta != "det" && eta != "sgn") throw std::invalid_argument("kernel_I3: unknown eta " + eta);
    double lam = std::sqrt(2.0 * p.t);
    Vec x = scale(p.x, 1.0 / lam), y = scale(p.y, 1.0 / lam);
    double f = dihedral_detail::em(2.0 * x[0] * y[0]);
    if (f == 0.0) return 0.0;
    DihedralVars v = change_variables(3, x, y);
    double G = g_function_I3(std::min(1.0, std::max(-1.0, v.s)), std::max(0.0, v.X),
                             std::max(0.0, v.Y));
    double pref = (1.0 / std::numbers::pi) * std::exp(-dist2(x, y) / 2.0);
    return pref * 0.5 * f * G / (lam * lam);
}

/// kernel_I4 divided by the free planar Gaussian, with the Gaussian cancelled
/// symbolically (never underflows at far separation); equals 4 E_eta in the
/// t = 1/2 reduced coordinates.
inline double kernel_I4_vs_gauss(const std::string& eta, const EvalPoint& p) {
    if (!(p.t > 0.0)) throw std::invalid_argument("kernel_I4_vs_gauss: t must be positive");
    double lam = std::sqrt(2.0 * p.t);
    Vec x = scale(p.x, 1.0 / lam), y = scale(p.y, 1.0 / lam);
    return 4.0 * dihedral_detail::i4_reduced_E(eta, x, y);
}

/// Same for the pi/3 cone (det only; triv goes through the image sum).
inline double kernel_I3_vs_gauss(const std::string& eta, const EvalPoint& p) {
    if (!(p.t > 0.0)) throw std::invalid_argument("kernel_I3_vs_gauss: t must be positive");
    if (eta == "triv") {
        static const ReflectionContext ctx = ReflectionContext::dihedral(3);
        KernelSpec spec{&ctx, &ctx.eta("triv"), Precision::compensated};
        return reflection_sum_vs_gauss(spec, p);
    }
    if (eta != "det" && eta != "sgn")
        throw std::invalid_argument("kernel_I3_vs_gauss: unknown eta " + eta);
    double lam = std::sqrt(2.0 * p.t);
    Vec x = scale(p.x, 1.0 / lam), y = scale(p.y, 1.0 / lam);
    double f = dihedral_detail::em(2.0 * x[0] * y[0]);
    if (f == 0.0) return 0.0;
    DihedralVars v = change_variables(3, x, y);
    double G = g_function_I3(std::min(1.0, std::max(-1.0, v.s)), std::max(0.0, v.X),
                             std::max(0.0, v.Y));
    return f * G;
}

/// The product of A/(A+t) factors of the sharp bound, without the Gaussian.
inline double bound_dihedral_vs_gauss(std::size_t m, const std::string& eta,
                                      const EvalPoint& p);

namespace dihedral_detail {

inline std::vector<double> bound_factors(std::size_t m, const std::string& eta, const Vec& x,
                                         const Vec& y) {
    if (m == 4) {
        if (eta == "det" || eta == "sgn")
            return {x[0] * y[0], x[1] * y[1], (x[0] - x[1]) * (y[0] - y[1]),
                    (x[0] + x[1]) * (y[0] + y[1])};
        if (eta == "N1") return {x[0] * y[0], (x[0] - x[1]) * (y[0] - y[1])};
        if (eta == "N2") return {x[0] * y[0], x[1] * y[1]};
        if (eta == "triv") return {};
        throw std::invalid_argument("bound_dihedral: unsupported eta for m=4: " + eta);
    }
    if (m == 3) {
        const double r3 = std::numbers::sqrt3;
        if (eta == "det" || eta == "sgn")
            return {x[0] * y[0], (x[0] - r3 * x[1]) * (y[0] - r3 * y[1]),
                    (x[0] + r3 * x[1]) * (y[0] + r3 * y[1])};
        if (eta == "triv") return {};
        throw std::invalid_argument("bound_dihedral: unsupported eta for m=3: " + eta);
    }
    throw std::invalid_argument("bound_dihedral: m must be 3 or 4");
}

}  // namespace dihedral_detail

inline double bound_dihedral_vs_gauss(std::size_t m, const std::string& eta,
                                      const EvalPoint& p) {
    if (!(p.t > 0.0)) throw std::invalid_argument("bound_dihedral: t must be positive");
    double b = 1.0;
    for (double A : dihedral_detail::bound_factors(m, eta, p.x, p.y)) b *= A / (A + p.t);
    return b;
}

/// Sharp two-sided bound expressions: products of A/(A+t) factors in front of
/// the free planar Gaussian, with the factor set determined by (m, eta).
inline double bound_dihedral(std::size_t m, const std::string& eta, const EvalPoint& p) {
    if (!(p.t > 0.0)) throw std::invalid_argument("bound_dihedral: t must be positive");
    double b = gauss_kernel_displaced(2, p.t, p.x, p.y);
    for (double A : dihedral_detail::bound_factors(m, eta, p.x, p.y)) b *= A / (A + p.t);
    return b;
}

}  // namespace weylheat
