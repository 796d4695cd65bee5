#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace fdl {

/// Golden-section maximisation of a unimodal function on [lo, hi].
/// Fixed iteration count; 200 iterations shrink the bracket far below
/// double precision for any bracket used here.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, int iterations = 200) {
    if (!(hi > lo)) throw std::invalid_argument("golden_section_max: empty bracket");
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iterations && d > c; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Bisection solve of g(u) = target for strictly increasing g on [lo, hi].
template <typename F>
double bisect_increasing(F&& g, double target, double lo, double hi, int iterations = 200) {
    double glo = g(lo) - target, ghi = g(hi) - target;
    if (glo > 0.0 || ghi < 0.0) throw std::invalid_argument("bisect_increasing: root not bracketed");
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g(mid) - target <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace fdl
