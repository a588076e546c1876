#pragma once

// Internal numeric helpers shared by the library sources. Not installed.

#include <cmath>
#include <functional>
#include <limits>

namespace bsq::detail {

/// Bisection for a sign change of f on [lo, hi]; f(lo) and f(hi) must have
/// opposite signs. Returns the midpoint of the final bracket.
template <class F>
double bisect(F&& f, double lo, double hi, int maxIter = 200) {
    double flo = f(lo);
    if (flo == 0.0)
        return lo;
    for (int i = 0; i < maxIter && hi - lo > std::numeric_limits<double>::epsilon() *
                                                 (std::fabs(lo) + std::fabs(hi) + 1.0);
         ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden-section minimizer on [lo, hi]; assumes a single interior minimum.
template <class F>
double golden_section_min(F&& f, double lo, double hi, double xtol) {
    constexpr double invPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invPhi * (b - a);
    double d = a + invPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invPhi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Central finite-difference derivative of order d (1..6) with one Richardson
/// halving step. Step h = lengthScale * eps^(1/(d+2)).
template <class F>
double fd_derivative(F&& f, double x, int d, double lengthScale) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double h = lengthScale * std::pow(eps, 1.0 / (d + 2));

    auto stencil = [&](double s) -> double {
        switch (d) {
        case 1:
            return (f(x + s) - f(x - s)) / (2.0 * s);
        case 2:
            return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s);
        case 3:
            return (f(x + 2 * s) - 2.0 * f(x + s) + 2.0 * f(x - s) - f(x - 2 * s)) /
                   (2.0 * s * s * s);
        case 4:
            return (f(x + 2 * s) - 4.0 * f(x + s) + 6.0 * f(x) - 4.0 * f(x - s) +
                    f(x - 2 * s)) /
                   (s * s * s * s);
        case 5:
            return (f(x + 3 * s) - 4.0 * f(x + 2 * s) + 5.0 * f(x + s) - 5.0 * f(x - s) +
                    4.0 * f(x - 2 * s) - f(x - 3 * s)) /
                   (2.0 * std::pow(s, 5));
        case 6:
            return (f(x + 3 * s) - 6.0 * f(x + 2 * s) + 15.0 * f(x + s) - 20.0 * f(x) +
                    15.0 * f(x - s) - 6.0 * f(x - 2 * s) + f(x - 3 * s)) /
                   std::pow(s, 6);
        default:
            return std::numeric_limits<double>::quiet_NaN();
        }
    };

    // both stencils are O(s^2); one halving step lifts the pair to O(s^4)
    const double coarse = stencil(h);
    const double fine = stencil(0.5 * h);
    return fine + (fine - coarse) / 3.0;
}

} // namespace bsq::detail
