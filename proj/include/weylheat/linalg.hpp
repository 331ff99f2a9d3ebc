#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace weylheat {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scale(const Vec& a, double c) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline double dist2(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dist2: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

/// Dense square matrix, row-major, for the small orthogonal matrices of
/// reflection groups (d rarely exceeds 4 here).
struct Mat {
    std::size_t n = 0;
    std::vector<double> a;  // n*n entries

    Mat() = default;
    explicit Mat(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}

    static Mat identity(std::size_t dim) {
        Mat m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    Vec apply(const Vec& x) const {
        if (x.size() != n) throw std::invalid_argument("Mat::apply: dimension mismatch");
        Vec y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    Mat mul(const Mat& other) const {
        if (other.n != n) throw std::invalid_argument("Mat::mul: dimension mismatch");
        Mat r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                double v = (*this)(i, k);
                if (v == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) r(i, j) += v * other(k, j);
            }
        return r;
    }

    Mat transpose() const {
        Mat r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    double max_abs_diff(const Mat& other) const {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - other.a[i]));
        return m;
    }
};

/// Determinant by partial-pivot elimination; the matrices here are tiny.
inline double det(Mat m) {
    double d = 1.0;
    for (std::size_t c = 0; c < m.n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < m.n; ++r)
            if (std::abs(m(r, c)) > std::abs(m(p, c))) p = r;
        if (p != c) {
            for (std::size_t j = 0; j < m.n; ++j) std::swap(m(c, j), m(p, j));
            d = -d;
        }
        if (m(c, c) == 0.0) return 0.0;
        d *= m(c, c);
        for (std::size_t r = c + 1; r < m.n; ++r) {
            double f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < m.n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return d;
}

}  // namespace weylheat
