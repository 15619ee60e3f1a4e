#pragma once

#include <cmath>
#include <cstdint>

// Double-double ("two-float") arithmetic, used for phase reduction of the
// quadratic exponential sums. n^2*t needs ~93 significand bits before the
// fractional part survives; a double-double carries 106.

namespace rml {

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// requires |a| >= |b|
inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_from(double x) { return {x, 0.0}; }

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_add(DD a, double b) {
    DD s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(b, q1));
    double q2 = (r.hi + r.lo) / b.hi;
    return two_sum(q1, q2);
}

inline double dd_value(DD a) { return a.hi + a.lo; }

// frac(a) in [0,1). Removing the integer part of the hi word is exact
// (Sterbenz), so no precision is lost.
inline DD dd_frac(DD a) {
    DD r = dd_add(a, -std::floor(a.hi));
    if (dd_value(r) >= 1.0) r = dd_add(r, -1.0);
    if (dd_value(r) < 0.0) r = dd_add(r, 1.0);
    return r;
}

// frac(m * u) for an integer-valued double m (|m| < 2^53) and u in [0,1).
// Splits m*u.hi with an exact two-product so the integer part can be
// discarded before anything rounds.
inline double frac_mul(double m, DD u) {
    DD p = two_prod(m, u.hi);
    double f = p.hi - std::floor(p.hi);             // exact
    double rest = std::fma(m, u.lo, p.lo);          // |rest| << 1 for m < 2^40
    rest -= std::floor(rest);
    DD s = two_sum(f, rest);
    double out = s.hi + s.lo;
    out -= std::floor(out);
    if (out >= 1.0) out -= 1.0;
    if (out < 0.0) out += 1.0;
    return out;
}

// 2*pi to double-double precision.
inline constexpr double kTwoPiHi = 6.283185307179586;
inline constexpr double kTwoPiLo = 2.4492935982947064e-16;
inline DD dd_two_pi() { return {kTwoPiHi, kTwoPiLo}; }

} // namespace rml
