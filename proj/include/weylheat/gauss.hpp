#pragma once

// Gauss-Weierstrass kernel and the generic signed reflection sum
//   p_t(x,y) = sum_g eta(g) * (4 pi t)^(-d/2) exp(-|gx-y|^2 / 4t)
// over a Weyl group.  The alternating sums cancel catastrophically in the
// near-boundary / large-time regimes, so evaluation comes in three rungs:
// plain doubles, compensated (Neumaier) summation of max-factored
// exponentials, and double-double throughout.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "weylheat/dd.hpp"
#include "weylheat/linalg.hpp"
#include "weylheat/root_system.hpp"

namespace weylheat {

enum class Precision { standard, compensated, extended };

struct EvalPoint {
    Vec x;
    Vec y;
    double t = 0.0;
};

/// (x, y, t) -> (x/lambda, y/lambda, t/lambda^2); kernels transform with the
/// factor lambda^(-d) under this map, bounds likewise.
inline EvalPoint scale_reduce(const EvalPoint& p, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("scale_reduce: lambda must be positive");
    return {scale(p.x, 1.0 / lambda), scale(p.y, 1.0 / lambda), p.t / (lambda * lambda)};
}

inline double gauss_kernel(std::size_t d, double t, const Vec& w) {
    if (!(t > 0.0)) throw std::invalid_argument("gauss_kernel: t must be positive");
    if (w.size() != d) throw std::invalid_argument("gauss_kernel: dimension mismatch");
    double q = norm2(w) / (4.0 * t);
    return std::pow(4.0 * std::numbers::pi * t, -0.5 * static_cast<double>(d)) * std::exp(-q);
}

inline double gauss_kernel_displaced(std::size_t d, double t, const Vec& x, const Vec& y) {
    if (!(t > 0.0)) throw std::invalid_argument("gauss_kernel: t must be positive");
    double q = dist2(x, y) / (4.0 * t);
    return std::pow(4.0 * std::numbers::pi * t, -0.5 * static_cast<double>(d)) * std::exp(-q);
}

inline dd dd_sqrt(dd a) {
    if (a.hi < 0.0) throw std::domain_error("dd_sqrt: negative argument");
    if (a.hi == 0.0) return {0.0, 0.0};
    double y0 = std::sqrt(a.hi);
    dd y(y0);
    dd r = dd_sub(a, dd_mul(y, y));
    y = dd_add(y, dd_div(r, dd_mul(y, 2.0)).hi);
    r = dd_sub(a, dd_mul(y, y));
    return dd_add(y, dd_div(r, dd_mul(y, 2.0)));
}

/// (4 pi t)^(-d/2) in double-double.
inline dd dd_gauss_prefactor(std::size_t d, double t) {
    dd base = dd_mul(dd_mul(dd_const::pi, 4.0), t);
    dd p(1.0);
    for (std::size_t i = 0; i + 1 < d; i += 2) p = dd_mul(p, base);
    if (d % 2 == 1) p = dd_mul(p, dd_sqrt(base));
    return dd_div(dd(1.0), p);
}

namespace detail {

// d x d row-major double-double matrix entries for one group element
using DdMat = std::vector<dd>;

inline DdMat dd_identity(std::size_t d) {
    DdMat m(d * d, dd(0.0));
    for (std::size_t i = 0; i < d; ++i) m[i * d + i] = dd(1.0);
    return m;
}

inline DdMat dd_reflection(const std::vector<dd>& alpha) {
    std::size_t d = alpha.size();
    dd nn(0.0);
    for (const dd& a : alpha) nn = dd_add(nn, dd_mul(a, a));
    DdMat m = dd_identity(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            dd v = dd_div(dd_mul(dd_mul(alpha[i], alpha[j]), 2.0), nn);
            m[i * d + j] = dd_sub(m[i * d + j], v);
        }
    return m;
}

inline DdMat dd_matmul(const DdMat& a, const DdMat& b, std::size_t d) {
    DdMat r(d * d, dd(0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j)
                r[i * d + j] = dd_add(r[i * d + j], dd_mul(a[i * d + k], b[k * d + j]));
    return r;
}

// simple roots in double-double, matching build_orthogonal/build_dihedral
inline std::vector<std::vector<dd>> dd_simple_roots(const RootSystem& sys) {
    std::vector<std::vector<dd>> roots;
    if (sys.kind == SystemKind::orthogonal) {
        for (std::size_t j = sys.d - sys.k; j < sys.d; ++j) {
            std::vector<dd> e(sys.d, dd(0.0));
            e[j] = dd(1.0);
            roots.push_back(std::move(e));
        }
        return roots;
    }
    auto m = static_cast<double>(sys.m);
    if (sys.m == 1) {
        roots.push_back({dd(1.0), dd(0.0)});
    } else if (sys.m % 2 == 0) {
        dd a = dd_div(dd_const::pi, m);
        roots.push_back({dd(0.0), dd(1.0)});
        roots.push_back({dd_sin(a), dd_neg(dd_cos(a))});
    } else {
        dd a = dd_div(dd_const::pi, 2.0 * m);
        roots.push_back({dd_sin(a), dd_cos(a)});
        roots.push_back({dd_sin(a), dd_neg(dd_cos(a))});
    }
    return roots;
}

}  // namespace detail

struct ReflectionContext {
    RootSystem system;
    WeylGroup group;
    std::vector<SignHomomorphism> homomorphisms;
    std::vector<detail::DdMat> dd_matrices;  // per element, word-composed

    static ReflectionContext make(RootSystem sys) {
        ReflectionContext c;
        c.system = std::move(sys);
        c.group = enumerate_group(c.system);
        c.homomorphisms = enumerate_homomorphisms(c.system, c.group);
        auto gens = detail::dd_simple_roots(c.system);
        std::vector<detail::DdMat> gen_mats;
        gen_mats.reserve(gens.size());
        for (const auto& a : gens) gen_mats.push_back(detail::dd_reflection(a));
        for (const auto& e : c.group.elements) {
            detail::DdMat m = detail::dd_identity(c.system.d);
            for (int gi : e.word)
                m = detail::dd_matmul(m, gen_mats[static_cast<std::size_t>(gi)], c.system.d);
            c.dd_matrices.push_back(std::move(m));
        }
        return c;
    }

    static ReflectionContext orthogonal(std::size_t d, std::size_t k) {
        return make(build_orthogonal(d, k));
    }

    static ReflectionContext dihedral(std::size_t m) { return make(build_dihedral(m)); }

    const SignHomomorphism& eta(const std::string& label) const {
        return find_homomorphism(homomorphisms, label);
    }
};

struct KernelSpec {
    const ReflectionContext* ctx = nullptr;
    const SignHomomorphism* eta = nullptr;
    Precision precision = Precision::compensated;
};

struct ReflectionSumResult {
    double value = 0.0;
    double digits_lost = 0.0;   // log10(sum |terms| / |sum terms|)
    double largest_term = 0.0;  // largest |term| including the Gaussian prefactor
    bool severe = false;        // more than 12 decimal digits cancelled
};

namespace detail {

inline dd dd_image_dist2(const DdMat& g, const Vec& x, const Vec& y) {
    std::size_t d = x.size();
    dd q(0.0);
    for (std::size_t i = 0; i < d; ++i) {
        dd gi(0.0);
        for (std::size_t j = 0; j < d; ++j) gi = dd_add(gi, dd_mul(g[i * d + j], x[j]));
        gi = dd_sub(gi, y[i]);
        q = dd_add(q, dd_mul(gi, gi));
    }
    return q;
}

}  // namespace detail

/// Signed sum of Gaussian images.  Always reports the cancellation severity
/// measured on the standard-precision terms.
inline ReflectionSumResult kernel_reflection_sum(const KernelSpec& spec, const EvalPoint& p) {
    if (!(p.t > 0.0)) throw std::invalid_argument("kernel_reflection_sum: t must be positive");
    const RootSystem& sys = spec.ctx->system;
    const WeylGroup& w = spec.ctx->group;
    if (p.x.size() != sys.d || p.y.size() != sys.d)
        throw std::invalid_argument("kernel_reflection_sum: dimension mismatch");

    // exponents E_g = -|gx-y|^2/4t, factored around the dominant one
    std::vector<double> expo(w.size());
    double emax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.size(); ++i) {
        Vec gx = w.elements[i].matrix.apply(p.x);
        expo[i] = -dist2(gx, p.y) / (4.0 * p.t);
        emax = std::max(emax, expo[i]);
    }
    double pref = std::pow(4.0 * std::numbers::pi * p.t, -0.5 * static_cast<double>(sys.d));

    double plain = 0.0, abssum = 0.0;
    NeumaierSum comp;
    for (std::size_t i = 0; i < w.size(); ++i) {
        double term = std::exp(expo[i] - emax) * static_cast<double>((*spec.eta)(i));
        plain += term;
        abssum += std::abs(term);
        comp.add(term);
    }

    ReflectionSumResult out;
    out.largest_term = pref * std::exp(emax);
    double rel = std::abs(comp.result()) > 0.0 ? abssum / std::abs(comp.result())
                                               : std::numeric_limits<double>::infinity();
    out.digits_lost = std::isfinite(rel) ? std::max(0.0, std::log10(rel)) : 320.0;
    out.severe = out.digits_lost > 12.0;

    switch (spec.precision) {
        case Precision::standard:
            out.value = pref * std::exp(emax) * plain;
            break;
        case Precision::compensated:
            out.value = pref * std::exp(emax) * comp.result();
            break;
        case Precision::extended: {
            dd t4 = dd_mul(dd(p.t), 4.0);
            dd sum(0.0);
            for (std::size_t i = 0; i < w.size(); ++i) {
                dd q = detail::dd_image_dist2(spec.ctx->dd_matrices[i], p.x, p.y);
                dd e = dd_exp(dd_neg(dd_div(q, t4)));
                sum = (*spec.eta)(i) > 0 ? dd_add(sum, e) : dd_sub(sum, e);
            }
            out.value = static_cast<double>(dd_mul(sum, dd_gauss_prefactor(sys.d, p.t)));
            break;
        }
    }
    return out;
}

/// Ratio of the signed image sum to the free Gaussian p_t^{(d)}(x-y),
/// computed with the Gaussian cancelled symbolically so that far-separated
/// points never underflow: sum_g eta(g) exp(E_g - E_e) with
/// E_g = -|gx-y|^2/4t and E_e the identity exponent.
inline double reflection_sum_vs_gauss(const KernelSpec& spec, const EvalPoint& p) {
    if (!(p.t > 0.0)) throw std::invalid_argument("reflection_sum_vs_gauss: t must be positive");
    const WeylGroup& w = spec.ctx->group;
    if (spec.precision == Precision::extended) {
        dd t4 = dd_mul(dd(p.t), 4.0);
        dd qe = detail::dd_image_dist2(spec.ctx->dd_matrices[0], p.x, p.y);
        dd sum(0.0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            dd q = detail::dd_image_dist2(spec.ctx->dd_matrices[i], p.x, p.y);
            dd e = dd_exp(dd_div(dd_sub(qe, q), t4));
            sum = (*spec.eta)(i) > 0 ? dd_add(sum, e) : dd_sub(sum, e);
        }
        return static_cast<double>(sum);
    }
    double qe = dist2(p.x, p.y);
    NeumaierSum comp;
    double plain = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        Vec gx = w.elements[i].matrix.apply(p.x);
        double term = std::exp((qe - dist2(gx, p.y)) / (4.0 * p.t)) *
                      static_cast<double>((*spec.eta)(i));
        plain += term;
        comp.add(term);
    }
    return spec.precision == Precision::standard ? plain : comp.result();
}

struct CancellationDiagnostic {
    double digits_lost = 0.0;
    double largest_term = 0.0;
};

inline CancellationDiagnostic cancellation_diagnostic(const KernelSpec& spec, const EvalPoint& p) {
    KernelSpec s = spec;
    s.precision = Precision::compensated;
    ReflectionSumResult r = kernel_reflection_sum(s, p);
    return {r.digits_lost, r.largest_term};
}

}  // namespace weylheat
