#pragma once

// Root systems in scope: the orthogonal family R_k = {±e_{d-k+1},...,±e_d}
// in R^d and the dihedral family I2(m) in R^2 (2m unit roots at angles
// pi*j/m).  Weyl groups are enumerated explicitly as orthogonal matrices;
// sign homomorphisms W -> {+1,-1} label the mixed Dirichlet/Neumann boundary
// conditions facet by facet (-1 = Dirichlet, +1 = Neumann).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weylheat/linalg.hpp"

namespace weylheat {

enum class SystemKind { orthogonal, dihedral };

struct Chamber {
    std::vector<Vec> simple_normals;  // unit inward normals; C+ = {<x,a> > 0 for all a}
    std::vector<Vec> facet_rays;      // for 2D cones: unit direction of each boundary ray
    std::size_t dim = 0;
};

struct GroupElement {
    Mat matrix;
    std::vector<int> word;  // indices into simple roots, any reduced representative
};

struct WeylGroup {
    std::vector<GroupElement> elements;  // elements[0] is the identity
    std::vector<std::vector<int>> table; // table[i][j] = index of elements[i]*elements[j]

    std::size_t size() const { return elements.size(); }

    std::optional<std::size_t> find(const Mat& m, double tol = 1e-9) const {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i].matrix.max_abs_diff(m) < tol) return i;
        return std::nullopt;
    }
};

struct SignHomomorphism {
    std::string label;                 // triv | det | N1 | N2 | eta<bits>
    std::vector<int> generator_signs;  // sign on each simple reflection
    std::vector<int> values;           // sign per group element index

    int operator()(std::size_t element_index) const { return values[element_index]; }
    bool is_trivial() const {
        return std::all_of(values.begin(), values.end(), [](int v) { return v == 1; });
    }
};

struct RootSystem {
    SystemKind kind;
    std::size_t d = 0;  // ambient dimension
    std::size_t k = 0;  // orthogonal: number of reflecting coordinates
    std::size_t m = 0;  // dihedral: half the number of roots
    std::vector<Vec> roots;
    std::vector<Vec> positive_roots;
    std::vector<Vec> simple_roots;
    Chamber chamber;
};

inline Mat reflection_matrix(const Vec& alpha) {
    std::size_t d = alpha.size();
    double nn = norm2(alpha);
    if (nn == 0.0) throw std::invalid_argument("reflection_matrix: zero root");
    Mat m = Mat::identity(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) -= 2.0 * alpha[i] * alpha[j] / nn;
    return m;
}

inline Vec reflect(const Vec& alpha, const Vec& x) {
    double c = 2.0 * dot(alpha, x) / norm2(alpha);
    Vec r = x;
    for (std::size_t i = 0; i < x.size(); ++i) r[i] -= c * alpha[i];
    return r;
}

inline RootSystem build_orthogonal(std::size_t d, std::size_t k) {
    if (d < 1 || k < 1 || k > d) throw std::invalid_argument("build_orthogonal: need 1 <= k <= d");
    RootSystem sys;
    sys.kind = SystemKind::orthogonal;
    sys.d = d;
    sys.k = k;
    for (std::size_t j = d - k; j < d; ++j) {
        Vec e(d, 0.0);
        e[j] = 1.0;
        sys.roots.push_back(e);
        sys.positive_roots.push_back(e);
        sys.simple_roots.push_back(e);
        e[j] = -1.0;
        sys.roots.push_back(e);
    }
    sys.chamber.dim = d;
    sys.chamber.simple_normals = sys.simple_roots;
    return sys;
}

inline RootSystem build_dihedral(std::size_t m) {
    if (m < 1) throw std::invalid_argument("build_dihedral: need m >= 1");
    RootSystem sys;
    sys.kind = SystemKind::dihedral;
    sys.d = 2;
    sys.m = m;
    const double pi = std::numbers::pi;
    for (std::size_t j = 0; j < 2 * m; ++j) {
        double a = pi * static_cast<double>(j) / static_cast<double>(m);
        sys.roots.push_back({std::cos(a), std::sin(a)});
    }
    sys.chamber.dim = 2;
    // chamber aperture convention: even m -> 0 < theta < pi/m,
    // odd m -> |theta| < pi/(2m)
    if (m == 1) {
        sys.chamber.simple_normals = {{1.0, 0.0}};
        sys.chamber.facet_rays = {{0.0, 1.0}, {0.0, -1.0}};
    } else if (m % 2 == 0) {
        double a = pi / static_cast<double>(m);
        sys.chamber.simple_normals = {{0.0, 1.0}, {std::sin(a), -std::cos(a)}};
        sys.chamber.facet_rays = {{1.0, 0.0}, {std::cos(a), std::sin(a)}};
    } else {
        double a = pi / (2.0 * static_cast<double>(m));
        sys.chamber.simple_normals = {{std::sin(a), std::cos(a)}, {std::sin(a), -std::cos(a)}};
        sys.chamber.facet_rays = {{std::cos(a), -std::sin(a)}, {std::cos(a), std::sin(a)}};
    }
    sys.simple_roots = sys.chamber.simple_normals;
    // positive roots: positive pairing with an interior chamber point
    Vec x0(2, 0.0);
    for (const Vec& n : sys.chamber.simple_normals) x0 = add(x0, n);
    for (const Vec& r : sys.roots)
        if (dot(r, x0) > 1e-12) sys.positive_roots.push_back(r);
    return sys;
}

/// Closure of the simple reflections under composition (BFS with matrix
/// deduplication).  The cap guards a malformed system from looping forever.
inline WeylGroup enumerate_group(const RootSystem& sys, std::size_t cap = 4096) {
    WeylGroup g;
    std::vector<Mat> gens;
    gens.reserve(sys.simple_roots.size());
    for (const Vec& a : sys.simple_roots) gens.push_back(reflection_matrix(a));

    g.elements.push_back({Mat::identity(sys.d), {}});
    for (std::size_t front = 0; front < g.elements.size(); ++front) {
        GroupElement cur = g.elements[front];  // copy: the vector may reallocate
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            Mat next = gens[gi].mul(cur.matrix);
            if (g.find(next)) continue;
            std::vector<int> w = cur.word;
            w.insert(w.begin(), static_cast<int>(gi));
            g.elements.push_back({std::move(next), std::move(w)});
            if (g.elements.size() > cap)
                throw std::runtime_error("enumerate_group: element cap exceeded");
        }
    }

    g.table.assign(g.size(), std::vector<int>(g.size(), -1));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            auto idx = g.find(g.elements[i].matrix.mul(g.elements[j].matrix), 1e-9);
            if (!idx) throw std::runtime_error("enumerate_group: not closed under composition");
            g.table[i][j] = static_cast<int>(*idx);
        }
    return g;
}

/// All multiplicative maps W -> {+1,-1}.  Brute force over sign assignments
/// on the simple reflections, then a full multiplicativity check.
inline std::vector<SignHomomorphism> enumerate_homomorphisms(const RootSystem& sys,
                                                             const WeylGroup& g) {
    std::size_t ngen = sys.simple_roots.size();
    std::vector<SignHomomorphism> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << ngen); ++mask) {
        SignHomomorphism h;
        h.generator_signs.resize(ngen);
        for (std::size_t i = 0; i < ngen; ++i)
            h.generator_signs[i] = (mask >> i) & 1 ? -1 : 1;
        h.values.resize(g.size());
        for (std::size_t e = 0; e < g.size(); ++e) {
            int v = 1;
            for (int gi : g.elements[e].word) v *= h.generator_signs[gi];
            h.values[e] = v;
        }
        bool ok = true;
        for (std::size_t i = 0; ok && i < g.size(); ++i)
            for (std::size_t j = 0; ok && j < g.size(); ++j)
                if (h.values[g.table[i][j]] != h.values[i] * h.values[j]) ok = false;
        if (!ok) continue;

        bool all_dirichlet = std::all_of(h.generator_signs.begin(), h.generator_signs.end(),
                                         [](int s) { return s == -1; });
        bool all_neumann = std::all_of(h.generator_signs.begin(), h.generator_signs.end(),
                                       [](int s) { return s == 1; });
        if (all_neumann)
            h.label = "triv";
        else if (all_dirichlet)
            h.label = "det";
        else if (sys.kind == SystemKind::dihedral && ngen == 2)
            // mixed conditions on the two facets of the planar cone:
            // N1 = Neumann on {theta = 0}, Dirichlet on the slanted facet
            h.label = h.generator_signs[0] == 1 ? "N1" : "N2";
        else {
            h.label = "eta";
            for (std::size_t i = 0; i < ngen; ++i) h.label += h.generator_signs[i] == -1 ? '1' : '0';
        }
        out.push_back(std::move(h));
    }
    // stable presentation: triv first, det second, then the rest
    std::stable_sort(out.begin(), out.end(), [](const SignHomomorphism& a, const SignHomomorphism& b) {
        auto rank = [](const SignHomomorphism& h) {
            if (h.label == "triv") return 0;
            if (h.label == "det") return 1;
            return 2;
        };
        return rank(a) < rank(b);
    });
    return out;
}

inline const SignHomomorphism& find_homomorphism(const std::vector<SignHomomorphism>& hs,
                                                 const std::string& label) {
    for (const auto& h : hs)
        if (h.label == label) return h;
    throw std::invalid_argument("unknown homomorphism label: " + label);
}

inline Vec apply_element(const GroupElement& g, const Vec& x) { return g.matrix.apply(x); }

struct ChamberGeometry {
    bool inside = false;
    std::vector<double> facet_distances;
    double vertex_distance = 0.0;
};

/// Membership plus Euclidean distances to each boundary facet (half-line for
/// the planar cones, clipped hyperplane piece for the orthogonal chamber)
/// and to the cone vertex at the origin.
inline ChamberGeometry chamber_geometry(const RootSystem& sys, const Vec& x) {
    if (x.size() != sys.d) throw std::invalid_argument("chamber_geometry: dimension mismatch");
    ChamberGeometry out;
    out.inside = true;
    for (const Vec& a : sys.chamber.simple_normals)
        if (!(dot(x, a) > 0.0)) out.inside = false;
    out.vertex_distance = norm(x);

    if (sys.kind == SystemKind::dihedral) {
        for (std::size_t f = 0; f < sys.chamber.facet_rays.size(); ++f) {
            const Vec& dir = sys.chamber.facet_rays[f];
            double t = dot(x, dir);
            if (t <= 0.0) {
                out.facet_distances.push_back(norm(x));
            } else {
                Vec proj = scale(dir, t);
                out.facet_distances.push_back(norm(sub(x, proj)));
            }
        }
    } else {
        // facet j: {x_{d-k+j} = 0} intersected with the chamber closure;
        // project by zeroing that coordinate and clamping the others
        for (std::size_t j = 0; j < sys.k; ++j) {
            double s2 = 0.0;
            for (std::size_t l = 0; l < sys.k; ++l) {
                double xl = x[sys.d - sys.k + l];
                if (l == j)
                    s2 += xl * xl;
                else if (xl < 0.0)
                    s2 += xl * xl;
            }
            out.facet_distances.push_back(std::sqrt(s2));
        }
    }
    return out;
}

}  // namespace weylheat
