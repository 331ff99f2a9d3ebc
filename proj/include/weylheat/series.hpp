#pragma once

// Independent power-series evaluators for the small-argument factorizations
// of the hyperbolic difference expressions behind the planar cone kernels.
// These are oracles: block coefficients come from exact integer structure
// (all-ones power sums in (X+Y)^2 and (X-Y)^2, geometric sums in s) times
// factorial reciprocals carried in extended precision until the final
// rounding, and every truncation is certified by an explicit majorant.
//
// Three series:
//   * claim1_I4:  S(s,A,B) = sinhc((1+s)(A+B)) sinhc((1-s)(A-B))
//                          - sinhc((1-s)(A+B)) sinhc((1+s)(A-B)) = s*A*B*P
//   * small_I3:   S(s,X,Y) = sinh(X+Y) - e^{sX} sinh Y - e^{-sY} sinh X
//                          = (1-s^2) X Y (X+Y) P
//   * caseA_I3:   S(s,X,Y) = 1 - e^{-(X+Y)} - e^{-(1-s)X/2}(1-e^{-Y})
//                              - e^{-(1+s)Y/2}(1-e^{-X})
//                          = (1-s^2) X Y P(s, X/2, Y/2) / 16
// where sinhc(u) = sinh(u)/u.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "weylheat/dd.hpp"

namespace weylheat {

struct SeriesResult {
    double value = 0.0;
    int truncation_order = 0;
    double tail_bound = 0.0;
};

struct SeriesToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace series_detail {

inline const double* inv_factorial_table() {
    static std::vector<double> table = [] {
        std::vector<double> t(231);
        long double v = 1.0L;
        t[0] = 1.0;
        for (int n = 1; n <= 230; ++n) {
            v /= static_cast<long double>(n);
            t[n] = static_cast<double>(v);
        }
        return t;
    }();
    return table.data();
}

inline double inv_factorial(int n) {
    if (n < 0 || n > 230) throw std::invalid_argument("inv_factorial: out of table");
    return inv_factorial_table()[n];
}

// sum_{i=0}^{d-1} a^i b^{d-1-i}, the all-positive power sum (a^d - b^d)/(a - b)
inline double power_sum(double a, double b, int d) {
    double s = 0.0;
    double ai = 1.0;
    std::vector<double> bp(static_cast<std::size_t>(d));
    double bi = 1.0;
    for (int i = d - 1; i >= 0; --i) {
        bp[static_cast<std::size_t>(i)] = bi;
        bi *= b;
    }
    for (int i = 0; i < d; ++i) {
        s += ai * bp[static_cast<std::size_t>(i)];
        ai *= a;
    }
    return s;
}

inline double ipow(double x, int n) {
    double r = 1.0;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

}  // namespace series_detail

inline dd dd_sinhc(dd u) {
    if (std::abs(u.hi) < 1e-30) return dd(1.0);
    return dd_div(dd_sinh(u), u);
}

// ---------------------------------------------------------------------------
// claim1_I4
// ---------------------------------------------------------------------------

/// The unweighted pair product phat_{j,m-j}(A,B) * phat_{j,m-j}(1,s), where
/// (A+B)^{2j}(A-B)^{2(m-j)} - (A+B)^{2(m-j)}(A-B)^{2j} = A*B*phat.  With
/// u = (A+B)^2, v = (A-B)^2 this is 16 (uv)^{2j}-free positive power sums:
///   phat_{j,k}(A,B) = -4 (uv)^j * sum_{i=0}^{k-j-1} u^i v^{k-j-1-i}
/// so the pair product is exactly 16 (uv u_s v_s)^j S1 S2 with all-ones
/// integer coefficients; no cancelling monomial expansion is ever formed.
inline double series_claim1_I4_pair(int m, int j, double s, double A, double B) {
    if (m < 1 || j < 0 || 2 * j >= m) throw std::invalid_argument("claim1 pair: bad indices");
    int d = m - 2 * j;
    double u = (A + B) * (A + B);
    double v = (A - B) * (A - B);
    double us = (1.0 + s) * (1.0 + s);
    double vs = (1.0 - s) * (1.0 - s);
    double s1 = series_detail::power_sum(u, v, d);
    double s2 = series_detail::power_sum(us, vs, d);
    double uv = series_detail::ipow(u * v, j);
    double usvs = series_detail::ipow(us * vs, j);
    return 16.0 * uv * usvs * s1 * s2;
}

/// Weighted block P_m = sum_j phat*phat / ((2j+1)! (2(m-j)+1)!); every term
/// is nonnegative for real inputs.
inline double series_claim1_I4_block(int m, double s, double A, double B) {
    double block = 0.0;
    for (int j = 0; 2 * j < m; ++j) {
        double c = series_detail::inv_factorial(2 * j + 1) *
                   series_detail::inv_factorial(2 * (m - j) + 1);
        block += c * series_claim1_I4_pair(m, j, s, A, B);
    }
    return block;
}

/// Majorant for |P_m| on |A|,|B| <= r, |s| <= 1.
inline double series_claim1_I4_tail_term(int m, double r) {
    double rr = std::max(1.0, r);
    return 16.0 * series_detail::ipow(64.0, m) * series_detail::ipow(rr, 2 * m - 2) *
           series_detail::inv_factorial(2 * m + 2);
}

inline SeriesResult series_claim1_I4(double s, double A, double B, double tol,
                                     int order_cap = 80) {
    double r = std::max(std::abs(A), std::abs(B));
    if (std::abs(s) > 1.0 + 1e-15) throw std::invalid_argument("claim1 series: need |s| <= 1");
    dd acc(0.0);
    for (int m = 1; m <= order_cap; ++m) {
        acc = dd_add(acc, series_claim1_I4_block(m, s, A, B));
        // certify the remainder by the explicit majorant
        double tail = 0.0;
        double term = series_claim1_I4_tail_term(m + 1, r);
        int mm = m + 1;
        while (term > 0.0 && mm < m + 400) {
            tail += term;
            double next = series_claim1_I4_tail_term(mm + 1, r);
            if (next < 1e-3 * tol && next < term) {
                tail += 2.0 * next;  // geometric closure, ratio < 1/2 here
                break;
            }
            term = next;
            ++mm;
        }
        if (tail < tol) return {static_cast<double>(acc), m, tail};
    }
    throw SeriesToleranceError("claim1 series: tolerance unreachable within order cap");
}

/// Direct (non-series) evaluation of the same S in double-double.
inline dd series_claim1_I4_direct(double s, double A, double B) {
    dd ps = dd_add(dd(1.0), s), ms = dd_sub(dd(1.0), s);
    dd ab = dd_add(dd(A), B), amb = dd_sub(dd(A), B);
    dd t1 = dd_mul(dd_sinhc(dd_mul(ps, ab)), dd_sinhc(dd_mul(ms, amb)));
    dd t2 = dd_mul(dd_sinhc(dd_mul(ms, ab)), dd_sinhc(dd_mul(ps, amb)));
    return dd_sub(t1, t2);
}

// ---------------------------------------------------------------------------
// small_I3
// ---------------------------------------------------------------------------

/// Block P_m of the small-regime factorization.  Odd m: all terms positive;
/// even m: common sign s(X-Y).  The edge values at s = +-1 are built in
/// because the s-dependence is a plain geometric power sum.
inline double series_small_I3_block(int m, double s, double X, double Y) {
    if (m < 3) throw std::invalid_argument("small_I3 block: m >= 3");
    double s2 = s * s;
    double XY = X * Y;
    if (m % 2 == 1) {
        double block = 0.0;
        for (int j = 0; j <= (m - 3) / 2; ++j) {
            int q_terms = (m - 1) / 2 - j;  // Q = 1 + s^2 + ... (q_terms terms)
            double q = 0.0, p = 1.0;
            for (int i = 0; i < q_terms; ++i) {
                q += p;
                p *= s2;
            }
            int rr = std::min(2 * j, m - 2 - 2 * j);
            int n = m - 2 - 2 * rr;  // odd, >= 1
            double rpoly;
            if (n == 1)
                rpoly = series_detail::ipow(XY, rr);
            else if (X + Y == 0.0)
                // removable: (X^n + Y^n)/(X+Y) -> n X^{n-1} as Y -> -X
                rpoly = series_detail::ipow(XY, rr) * static_cast<double>(n) *
                        series_detail::ipow(X, n - 1);
            else
                rpoly = series_detail::ipow(XY, rr) *
                        (series_detail::ipow(X, n) + series_detail::ipow(Y, n)) / (X + Y);
            block += q * rpoly * series_detail::inv_factorial(2 * j + 1) *
                     series_detail::inv_factorial(m - 2 * j - 1);
        }
        return block;
    }
    double inner = 0.0;
    for (int j = 0; j <= m / 4 - 1; ++j) {
        int q_terms = m / 2 - 2 * j - 1;
        double q = 0.0, p = 1.0;
        for (int i = 0; i < q_terms; ++i) {
            q += p;
            p *= s2;
        }
        q *= series_detail::ipow(s2, j);
        double X2 = X * X, Y2 = Y * Y;
        double rpoly = series_detail::ipow(XY, 2 * j) *
                       series_detail::power_sum(X2, Y2, m / 2 - 2 * j - 1);
        inner += q * rpoly * series_detail::inv_factorial(2 * j + 1) *
                 series_detail::inv_factorial(m - 2 * j - 1);
    }
    return s * (X - Y) * inner;
}

/// Majorant m^3 r^{2(m-3)} / Gamma((m-1)/2) for |P_m| on (-r,r)^3, r >= 1;
/// the even-m blocks share the same shape.
inline double series_small_I3_tail_term(int m, double r) {
    double rr = std::max(1.0, r);
    double lg = std::lgamma((static_cast<double>(m) - 1.0) / 2.0);
    return static_cast<double>(m) * static_cast<double>(m) * static_cast<double>(m) *
           std::exp(2.0 * (static_cast<double>(m) - 3.0) * std::log(rr) - lg);
}

inline SeriesResult series_small_I3(double s, double X, double Y, double tol,
                                    int order_cap = 120) {
    double r = std::max({std::abs(s), std::abs(X), std::abs(Y)});
    dd acc(0.0);
    for (int m = 3; m <= order_cap; ++m) {
        acc = dd_add(acc, series_small_I3_block(m, s, X, Y));
        double tail = 0.0;
        double term = series_small_I3_tail_term(m + 1, r);
        int mm = m + 1;
        while (term > 0.0 && mm < m + 600) {
            tail += term;
            double next = series_small_I3_tail_term(mm + 1, r);
            if (next < 1e-3 * tol && next < 0.5 * term) {
                tail += 2.0 * next;
                break;
            }
            term = next;
            ++mm;
        }
        if (tail < tol) return {static_cast<double>(acc), m, tail};
    }
    throw SeriesToleranceError("small_I3 series: tolerance unreachable within order cap");
}

inline dd series_small_I3_direct(double s, double X, double Y) {
    dd sx = dd_mul(dd(s), X), sy = dd_mul(dd(s), Y);
    dd t = dd_sinh(dd_add(dd(X), Y));
    t = dd_sub(t, dd_mul(dd_exp(sx), dd_sinh(dd(Y))));
    t = dd_sub(t, dd_mul(dd_exp(dd_neg(sy)), dd_sinh(dd(X))));
    return t;
}

// ---------------------------------------------------------------------------
// caseA_I3
// ---------------------------------------------------------------------------

/// Q_{m,j}(s) = (-1)^{m+1} 2^m ( sum_{k=0}^{m-j-2} ((1+s)/2)^k
///                             + sum_{k=0}^{j-2}   ((1-s)/2)^k ).
inline double series_caseA_Q(int m, int j, double s) {
    if (m < 3 || j < 1 || j > m - 1) throw std::invalid_argument("caseA Q: bad indices");
    double b = (1.0 + s) / 2.0, a = (1.0 - s) / 2.0;
    double acc = 0.0, p = 1.0;
    for (int k = 0; k <= m - j - 2; ++k) {
        acc += p;
        p *= b;
    }
    p = 1.0;
    for (int k = 0; k <= j - 2; ++k) {
        acc += p;
        p *= a;
    }
    double sign = (m % 2 == 0) ? -1.0 : 1.0;
    return sign * series_detail::ipow(2.0, m) * acc;
}

/// Block P_m(s,A,B); the j = m/2 term appears once for even m.
inline double series_caseA_block(int m, double s, double A, double B) {
    double block = 0.0;
    for (int j = 1; j <= m / 2; ++j) {
        double c = series_detail::inv_factorial(j) * series_detail::inv_factorial(m - j);
        double t;
        if (2 * j == m)
            t = series_caseA_Q(m, j, s) * series_detail::ipow(A, j - 1) *
                series_detail::ipow(B, j - 1);
        else
            t = series_caseA_Q(m, j, s) * series_detail::ipow(A, j - 1) *
                    series_detail::ipow(B, m - j - 1) +
                series_caseA_Q(m, j, -s) * series_detail::ipow(A, m - j - 1) *
                    series_detail::ipow(B, j - 1);
        block += c * t;
    }
    return block;
}

inline double series_caseA_tail_term(int m, double r) {
    double rr = std::max(1.0, r);
    return 4.0 * static_cast<double>(m) * series_detail::ipow(4.0, m) *
           series_detail::ipow(rr, m - 2) * series_detail::inv_factorial(m);
}

/// P(s, X/2, Y/2) for the direct-form variables (X, Y); the factorization is
///   S(s,X,Y) = (1-s^2) X Y P(s, X/2, Y/2) / 16.
inline SeriesResult series_caseA_I3(double s, double X, double Y, double tol,
                                    int order_cap = 110) {
    double A = X / 2.0, B = Y / 2.0;
    double r = std::max(std::abs(A), std::abs(B));
    dd acc(0.0);
    for (int m = 3; m <= order_cap; ++m) {
        acc = dd_add(acc, series_caseA_block(m, s, A, B));
        double tail = 0.0;
        double term = series_caseA_tail_term(m + 1, r);
        int mm = m + 1;
        while (term > 0.0 && mm < m + 600) {
            tail += term;
            double next = series_caseA_tail_term(mm + 1, r);
            if (next < 1e-3 * tol && next < 0.5 * term) {
                tail += 2.0 * next;
                break;
            }
            term = next;
            ++mm;
        }
        if (tail < tol) return {static_cast<double>(acc), m, tail};
    }
    throw SeriesToleranceError("caseA series: tolerance unreachable within order cap");
}

inline dd series_caseA_direct(double s, double X, double Y) {
    dd one(1.0);
    dd t = dd_sub(one, dd_exp(dd_neg(dd_add(dd(X), Y))));
    dd e1 = dd_exp(dd_mul(dd(-(1.0 - s) / 2.0), X));
    dd e2 = dd_exp(dd_mul(dd(-(1.0 + s) / 2.0), Y));
    t = dd_sub(t, dd_mul(e1, dd_neg(dd_expm1(dd(-Y)))));
    t = dd_sub(t, dd_mul(e2, dd_neg(dd_expm1(dd(-X)))));
    return t;
}

// ---------------------------------------------------------------------------
// boundary values
// ---------------------------------------------------------------------------

/// Closed-form boundary evaluations of the small-regime P and of the
/// compactified case-A P* at the edges of their domains:
///   P_s00              : P(s,0,0) = 1/2 for every s in [-1,1]
///   P_pm1_X0(sign, X)  : P(+-1,X,0) = sinh(X)/(2X) +- (X cosh X - sinh X)/(2X^2)
///   Pstar_1T0(T)       : P*(1,T,0) = (1-e^{-T})/(4T)
///   Pstar_100          : P*(1,0,0) = 1/4
inline double boundary_values_I3(const std::string& which, const std::vector<double>& args = {}) {
    if (which == "P_s00") return 0.5;
    if (which == "P_pm1_X0") {
        if (args.size() != 2) throw std::invalid_argument("P_pm1_X0 needs {sign, X}");
        double sign = args[0] >= 0 ? 1.0 : -1.0;
        double X = args[1];
        if (X < 0.0) throw std::invalid_argument("P_pm1_X0: X >= 0");
        if (X < 1e-4) {
            double even = 0.5 + X * X / 12.0 + X * X * X * X / 240.0;
            double odd = X / 6.0 + X * X * X / 60.0;
            return even + sign * odd;
        }
        double even = std::sinh(X) / (2.0 * X);
        double odd = (X * std::cosh(X) - std::sinh(X)) / (2.0 * X * X);
        return even + sign * odd;
    }
    if (which == "Pstar_1T0") {
        if (args.size() != 1) throw std::invalid_argument("Pstar_1T0 needs {T}");
        double T = args[0];
        if (T < 0.0) throw std::invalid_argument("Pstar_1T0: T >= 0");
        if (T == 0.0) return 0.25;
        return -std::expm1(-T) / (4.0 * T);
    }
    if (which == "Pstar_100") return 0.25;
    throw std::invalid_argument("boundary_values_I3: unknown selector " + which);
}

}  // namespace weylheat
