#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fsio/errors.hpp"

namespace fsio {

/// Closed interval [lo, hi] with outward rounding.
///
/// Every arithmetic result is widened by one ulp per bound, which covers the
/// at most 0.5 ulp error of a correctly rounded double operation. Library
/// calls without a correct-rounding guarantee (pow) are widened further.
/// Sign certificates derived from these intervals therefore hold for the
/// exact real quantities being enclosed.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double x) : lo(x), hi(x) {}
    Interval(double l, double h) : lo(l), hi(h) {}

    static Interval around(double center, double radius) {
        return Interval(center - radius, center + radius);
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
    bool strictly_positive() const { return lo > 0.0; }
    bool strictly_negative() const { return hi < 0.0; }
    bool nonnegative() const { return lo >= 0.0; }
    bool nonpositive() const { return hi <= 0.0; }
};

namespace detail {
inline double down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

// Exactness-aware directed rounding: results that are provably exact (the
// Fast2Sum condition for sums, a zero fma residual for products, quotients
// and square roots) stay unwidened. This keeps bounds that are attained
// exactly, notably 0, at their exact value, so that boxes whose enclosed
// quantity touches 0 classify as touching rather than straddling.
inline bool sum_exact(double a, double b, double s) { return s - a == b && s - b == a; }

inline double add_down(double a, double b) {
    const double s = a + b;
    return sum_exact(a, b, s) ? s : down(s);
}
inline double add_up(double a, double b) {
    const double s = a + b;
    return sum_exact(a, b, s) ? s : up(s);
}
inline double mul_down(double a, double b) {
    const double p = a * b;
    return std::fma(a, b, -p) == 0.0 ? p : down(p);
}
inline double mul_up(double a, double b) {
    const double p = a * b;
    return std::fma(a, b, -p) == 0.0 ? p : up(p);
}
inline double div_down(double a, double b) {
    const double q = a / b;
    return std::fma(q, b, -a) == 0.0 ? q : down(q);
}
inline double div_up(double a, double b) {
    const double q = a / b;
    return std::fma(q, b, -a) == 0.0 ? q : up(q);
}
inline double sqrt_down(double a) {
    const double r = std::sqrt(a);
    return std::fma(r, r, -a) == 0.0 ? r : down(r);
}
inline double sqrt_up(double a) {
    const double r = std::sqrt(a);
    return std::fma(r, r, -a) == 0.0 ? r : up(r);
}
} // namespace detail

inline Interval operator+(const Interval& a, const Interval& b) {
    return Interval(detail::add_down(a.lo, b.lo), detail::add_up(a.hi, b.hi));
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return Interval(detail::add_down(a.lo, -b.hi), detail::add_up(a.hi, -b.lo));
}

inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval operator*(const Interval& a, const Interval& b) {
    const double f1[4] = {a.lo, a.lo, a.hi, a.hi};
    const double f2[4] = {b.lo, b.hi, b.lo, b.hi};
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double pl = detail::mul_down(f1[i], f2[i]);
        const double ph = detail::mul_up(f1[i], f2[i]);
        if (i == 0 || pl < lo) lo = pl;
        if (i == 0 || ph > hi) hi = ph;
    }
    return Interval(lo, hi);
}

inline Interval operator*(double s, const Interval& a) { return Interval(s) * a; }

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw numerical_error("interval division by interval containing zero");
    const double f1[4] = {a.lo, a.lo, a.hi, a.hi};
    const double f2[4] = {b.lo, b.hi, b.lo, b.hi};
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double pl = detail::div_down(f1[i], f2[i]);
        const double ph = detail::div_up(f1[i], f2[i]);
        if (i == 0 || pl < lo) lo = pl;
        if (i == 0 || ph > hi) hi = ph;
    }
    return Interval(lo, hi);
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }

/// x^2 as an enclosure; tighter than x*x when the interval straddles zero.
inline Interval sqr(const Interval& a) {
    const double l = std::abs(a.lo), h = std::abs(a.hi);
    const double m = std::max(l, h);
    if (a.contains_zero()) return Interval(0.0, detail::mul_up(m, m));
    const double mn = std::min(l, h);
    return Interval(detail::mul_down(mn, mn), detail::mul_up(m, m));
}

/// sqrt on a nonnegative enclosure; a slightly negative lower bound caused by
/// earlier outward rounding of a structurally nonnegative quantity is clamped.
inline Interval interval_sqrt(const Interval& a) {
    if (a.hi < 0.0) throw numerical_error("interval sqrt of negative interval");
    return Interval(a.lo > 0.0 ? detail::sqrt_down(a.lo) : 0.0, detail::sqrt_up(a.hi));
}

/// Integer power, exponent >= 0.
inline Interval ipow(const Interval& a, int k) {
    Interval out(1.0);
    Interval base = a;
    int e = k;
    while (e > 0) {
        if (e & 1) out = out * base;
        base = sqr(base);
        e >>= 1;
    }
    return out;
}

/// Real power of a positive interval; std::pow carries no correct-rounding
/// guarantee, so bounds are widened by 4 ulps per side.
inline Interval pow_pos(const Interval& a, double e) {
    if (!(a.lo > 0.0)) throw numerical_error("pow_pos requires a strictly positive interval");
    double lo = std::pow(a.lo, e), hi = std::pow(a.hi, e);
    if (lo > hi) std::swap(lo, hi);
    for (int i = 0; i < 4; ++i) {
        lo = detail::down(lo);
        hi = detail::up(hi);
    }
    return Interval(lo, hi);
}

inline Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

inline Interval intersect(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
}

/// Axis-aligned coordinate enclosure of a set of group elements.
using IntervalBox = std::vector<Interval>;

} // namespace fsio
