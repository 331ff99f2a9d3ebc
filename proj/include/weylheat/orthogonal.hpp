#pragma once

// Product closed forms for the orthogonal systems: the chamber is
// R^{d-k} x (0,inf)^k and the kernel factors coordinate-wise into free
// Gaussians and one-dimensional Neumann/Dirichlet half-line kernels.  The
// Dirichlet factor is evaluated as p(x-y)(1 - e^{-xy/t}) so nothing cancels.
// Also hosts the half-space comparison of the two bound shapes
//   xy/(xy+t)            (consistent with the product form)
//   xy/((x+rt)(y+rt))    (the literature shape, rt = sqrt t)
// whose ratio blows up along x = N, y = 1/N.

#include <cmath>
#include <stdexcept>

#include "weylheat/gauss.hpp"
#include "weylheat/linalg.hpp"

namespace weylheat {

struct OrthogonalSpec {
    std::size_t d = 1;
    std::size_t k = 1;
    unsigned eta = 0;  // bit j set = Dirichlet condition on coordinate d-k+j

    OrthogonalSpec(std::size_t d_, std::size_t k_, unsigned eta_) : d(d_), k(k_), eta(eta_) {
        if (d < 1 || k < 1 || k > d) throw std::invalid_argument("OrthogonalSpec: need 1 <= k <= d");
        if (k < 8 * sizeof(unsigned) && eta >> k)
            throw std::invalid_argument("OrthogonalSpec: eta has bits beyond k");
    }

    bool dirichlet(std::size_t j) const { return (eta >> j) & 1u; }  // j in [0,k)

    std::size_t card_J() const {
        std::size_t n = 0;
        for (std::size_t j = 0; j < k; ++j) n += dirichlet(j);
        return n;
    }

    std::string eta_label() const {
        if (eta == 0) return "triv";
        if (card_J() == k) return "det";
        std::string l = "eta";
        for (std::size_t j = 0; j < k; ++j) l += dirichlet(j) ? '1' : '0';
        return l;
    }
};

namespace orthogonal_detail {

inline void check_point(const OrthogonalSpec& spec, const EvalPoint& p) {
    if (!(p.t > 0.0)) throw std::invalid_argument("orthogonal kernel: t must be positive");
    if (p.x.size() != spec.d || p.y.size() != spec.d)
        throw std::invalid_argument("orthogonal kernel: dimension mismatch");
    for (std::size_t j = spec.d - spec.k; j < spec.d; ++j)
        if (p.x[j] < 0.0 || p.y[j] < 0.0)
            throw std::invalid_argument("orthogonal kernel: point outside chamber closure");
}

}  // namespace orthogonal_detail

inline double kernel_orthogonal(const OrthogonalSpec& spec, const EvalPoint& p) {
    orthogonal_detail::check_point(spec, p);
    double v = 1.0;
    for (std::size_t j = 0; j < spec.d - spec.k; ++j)
        v *= gauss_kernel(1, p.t, {p.x[j] - p.y[j]});
    for (std::size_t j = 0; j < spec.k; ++j) {
        std::size_t c = spec.d - spec.k + j;
        double g = gauss_kernel(1, p.t, {p.x[c] - p.y[c]});
        double q = p.x[c] * p.y[c] / p.t;
        v *= spec.dirichlet(j) ? g * -std::expm1(-q) : g * (1.0 + std::exp(-q));
    }
    return v;
}

inline double bound_orthogonal(const OrthogonalSpec& spec, const EvalPoint& p) {
    orthogonal_detail::check_point(spec, p);
    double v = gauss_kernel_displaced(spec.d, p.t, p.x, p.y);
    for (std::size_t j = 0; j < spec.k; ++j) {
        if (!spec.dirichlet(j)) continue;
        std::size_t c = spec.d - spec.k + j;
        double A = p.x[c] * p.y[c];
        v *= A / (A + p.t);
    }
    return v;
}

/// kernel/bound with the shared Gaussian factors cancelled symbolically:
///   prod_{Dirichlet j} (1 - e^{-q_j})(A_j + t)/A_j * prod_{Neumann j} (1 + e^{-q_j}),
/// q_j = x_j y_j / t.  Never under- or overflows on the chamber.
inline double orthogonal_ratio(const OrthogonalSpec& spec, const EvalPoint& p) {
    orthogonal_detail::check_point(spec, p);
    double r = 1.0;
    for (std::size_t j = 0; j < spec.k; ++j) {
        std::size_t c = spec.d - spec.k + j;
        double A = p.x[c] * p.y[c];
        double q = A / p.t;
        if (spec.dirichlet(j))
            r *= -std::expm1(-q) * (A + p.t) / A;
        else
            r *= 1.0 + std::exp(-q);
    }
    return r;
}

struct HalfspaceCompare {
    double ratio_paper = 0.0;       // kernel / (xy/(xy+t) * gaussian)
    double ratio_literature = 0.0;  // kernel / (xy/((x+rt)(y+rt)) * gaussian)
};

/// Dirichlet half-space kernel against the two bound shapes; the Gaussian
/// and the free coordinates cancel exactly, so only the boundary coordinate
/// matters.
inline HalfspaceCompare halfspace_bound_compare(double x_d, double y_d, double t) {
    if (!(t > 0.0) || x_d < 0.0 || y_d < 0.0)
        throw std::invalid_argument("halfspace_bound_compare: need t>0 and x_d,y_d >= 0");
    double u = x_d * y_d;
    double em = -std::expm1(-u / t);
    HalfspaceCompare out;
    out.ratio_paper = em * (u + t) / u;
    double rt = std::sqrt(t);
    out.ratio_literature = em * (x_d + rt) * (y_d + rt) / u;
    return out;
}

}  // namespace weylheat
