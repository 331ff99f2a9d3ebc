#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving roughly 32 significant decimal digits.  Used where the alternating
// reflection sums and the hyperbolic ratio functions cancel too deeply for
// native doubles.  Algorithms are the classical error-free transformations
// (Dekker/Knuth two-sum, FMA two-prod) plus argument-reduced Taylor kernels
// for exp.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace weylheat {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi; }
};

namespace detail {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
    double s = a + b;
    double err = b - (s - a);
    return {s, err};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

}  // namespace detail

inline dd dd_add(dd a, dd b) {
    dd s = detail::two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return detail::quick_two_sum(s.hi, lo);
}

inline dd dd_add(dd a, double b) {
    dd s = detail::two_sum(a.hi, b);
    double lo = s.lo + a.lo;
    return detail::quick_two_sum(s.hi, lo);
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }
inline dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }
inline dd dd_sub(dd a, double b) { return dd_add(a, -b); }

inline dd dd_mul(dd a, dd b) {
    dd p = detail::two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, lo);
}

inline dd dd_mul(dd a, double b) {
    dd p = detail::two_prod(a.hi, b);
    double lo = p.lo + a.lo * b;
    return detail::quick_two_sum(p.hi, lo);
}

inline dd dd_div(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = dd_sub(a, dd_mul(b, q1));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q2));
    double q3 = r.hi / b.hi;
    dd q = detail::quick_two_sum(q1, q2);
    return dd_add(q, q3);
}

inline dd dd_div(dd a, double b) { return dd_div(a, dd(b)); }

inline bool dd_less(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline dd dd_abs(dd a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? dd_neg(a) : a; }

inline dd dd_ldexp(dd a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

namespace dd_const {
// ln2 and pi split across two doubles (high part rounded, low part the rest).
inline constexpr dd ln2{6.931471805599452862e-01, 2.3190468138462995584e-17};
inline constexpr dd pi{3.141592653589793116e+00, 1.2246467991473531772e-16};
}  // namespace dd_const

/// exp(a) with ~31 digit accuracy: reduce by powers of ln2, then a squared
/// Taylor kernel.  Underflows to 0 below the double range; no overflow guard
/// beyond +709 (callers here only feed nonpositive-to-moderate exponents).
inline dd dd_exp(dd a) {
    if (a.hi != a.hi) return a;
    if (a.hi <= -745.0) return {0.0, 0.0};
    if (a.hi >= 709.0) return {std::numeric_limits<double>::infinity(), 0.0};

    double m = std::floor(a.hi / dd_const::ln2.hi + 0.5);
    dd r = dd_sub(a, dd_mul(dd_const::ln2, m));
    // scale r down by 2^9 = 512, exponentiate the series, square back up
    constexpr int k = 9;
    r = dd_ldexp(r, -k);

    // Taylor for expm1 on |r| <= ln2/1024
    dd term = r;
    dd sum = r;
    double fact = 1.0;
    for (int i = 2; i <= 20; ++i) {
        term = dd_mul(term, r);
        fact *= i;
        dd t = dd_div(term, fact);
        sum = dd_add(sum, t);
        if (std::abs(t.hi) < 1e-40 * std::abs(sum.hi)) break;
    }
    // (1+s)^2 - 1 = 2s + s^2, applied k times
    for (int i = 0; i < k; ++i) sum = dd_add(dd_ldexp(sum, 1), dd_mul(sum, sum));
    dd result = dd_add(sum, 1.0);
    return dd_ldexp(result, static_cast<int>(m));
}

/// expm1 with full relative accuracy near 0.
inline dd dd_expm1(dd a) {
    if (std::abs(a.hi) >= 0.5) return dd_sub(dd_exp(a), 1.0);
    dd term = a;
    dd sum = a;
    double fact = 1.0;
    for (int i = 2; i <= 30; ++i) {
        term = dd_mul(term, a);
        fact *= i;
        dd t = dd_div(term, fact);
        sum = dd_add(sum, t);
        if (std::abs(t.hi) < 1e-40 * std::abs(sum.hi)) break;
    }
    return sum;
}

/// log(a) by Newton iteration on exp, seeded from the double log.
inline dd dd_log(dd a) {
    if (a.hi <= 0.0) throw std::domain_error("dd_log: nonpositive argument");
    dd x(std::log(a.hi));
    // x' = x + a*exp(-x) - 1, twice
    for (int it = 0; it < 2; ++it) {
        dd e = dd_exp(dd_neg(x));
        x = dd_add(x, dd_sub(dd_mul(a, e), 1.0));
    }
    return x;
}

/// log1p(a), accurate for small |a|.
inline dd dd_log1p(dd a) {
    if (std::abs(a.hi) >= 0.5) return dd_log(dd_add(a, 1.0));
    if (a.hi == 0.0 && a.lo == 0.0) return a;
    // log1p(v) = 2 atanh(v/(2+v)); atanh by series, |z| < 0.2
    dd z = dd_div(a, dd_add(a, 2.0));
    dd z2 = dd_mul(z, z);
    dd term = z;
    dd sum = z;
    for (int i = 3; i <= 60; i += 2) {
        term = dd_mul(term, z2);
        dd t = dd_div(term, static_cast<double>(i));
        sum = dd_add(sum, t);
        if (std::abs(t.hi) < 1e-40 * std::abs(sum.hi)) break;
    }
    return dd_ldexp(sum, 1);
}

namespace detail {

// Taylor kernels on |r| <= pi/4
inline dd dd_sin_taylor(dd r) {
    dd r2 = dd_mul(r, r);
    dd term = r, sum = r;
    double fact = 1.0;
    for (int i = 3; i <= 33; i += 2) {
        fact *= static_cast<double>(i - 1) * static_cast<double>(i);
        term = dd_mul(term, r2);
        dd t = dd_div(term, fact);
        sum = (i / 2) % 2 == 1 ? dd_sub(sum, t) : dd_add(sum, t);
        if (std::abs(t.hi) < 1e-40 * (std::abs(sum.hi) + 1e-300)) break;
    }
    return sum;
}

inline dd dd_cos_taylor(dd r) {
    dd r2 = dd_mul(r, r);
    dd term(1.0), sum(1.0);
    double fact = 1.0;
    for (int i = 2; i <= 34; i += 2) {
        fact *= static_cast<double>(i - 1) * static_cast<double>(i);
        term = dd_mul(term, r2);
        dd t = dd_div(term, fact);
        sum = (i / 2) % 2 == 1 ? dd_sub(sum, t) : dd_add(sum, t);
        if (std::abs(t.hi) < 1e-40 * (std::abs(sum.hi) + 1e-300)) break;
    }
    return sum;
}

}  // namespace detail

/// sin/cos with reduction modulo pi/2; intended for the fixed rational
/// multiples of pi that parametrize the root systems (no large-argument
/// reduction is attempted).
inline dd dd_sin(dd a);
inline dd dd_cos(dd a);

inline dd dd_sin(dd a) {
    dd half_pi = dd_ldexp(dd{3.141592653589793116e+00, 1.2246467991473531772e-16}, -1);
    double n = std::floor(a.hi / half_pi.hi + 0.5);
    dd r = dd_sub(a, dd_mul(half_pi, n));
    long q = static_cast<long>(n) % 4;
    if (q < 0) q += 4;
    switch (q) {
        case 0: return detail::dd_sin_taylor(r);
        case 1: return detail::dd_cos_taylor(r);
        case 2: return dd_neg(detail::dd_sin_taylor(r));
        default: return dd_neg(detail::dd_cos_taylor(r));
    }
}

inline dd dd_cos(dd a) {
    dd half_pi = dd_ldexp(dd{3.141592653589793116e+00, 1.2246467991473531772e-16}, -1);
    double n = std::floor(a.hi / half_pi.hi + 0.5);
    dd r = dd_sub(a, dd_mul(half_pi, n));
    long q = static_cast<long>(n) % 4;
    if (q < 0) q += 4;
    switch (q) {
        case 0: return detail::dd_cos_taylor(r);
        case 1: return dd_neg(detail::dd_sin_taylor(r));
        case 2: return dd_neg(detail::dd_cos_taylor(r));
        default: return detail::dd_sin_taylor(r);
    }
}

inline dd dd_sinh(dd a) {
    if (std::abs(a.hi) < 0.5) {
        dd ep = dd_expm1(a);
        dd em = dd_expm1(dd_neg(a));
        return dd_ldexp(dd_sub(ep, em), -1);
    }
    dd e = dd_exp(a);
    return dd_ldexp(dd_sub(e, dd_div(dd(1.0), e)), -1);
}

inline dd dd_cosh(dd a) {
    dd e = dd_exp(a);
    return dd_ldexp(dd_add(e, dd_div(dd(1.0), e)), -1);
}

/// Compensated (Neumaier) running sum in plain doubles; cheap middle rung of
/// the precision ladder.
struct NeumaierSum {
    double s = 0.0;
    double c = 0.0;
    void add(double v) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double result() const { return s + c; }
};

}  // namespace weylheat
