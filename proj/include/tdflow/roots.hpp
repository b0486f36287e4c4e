#pragma once

#include <cmath>
#include <string>

#include "tdflow/error.hpp"

namespace tdflow {

/// Bisection on [lo, hi] until the bracket is narrower than `width`, then one
/// Newton step from the midpoint. The Newton result is kept only if it stays
/// inside the final bracket.
template <class F, class DF>
double bisect_newton(F&& f, DF&& df, double lo, double hi, double width) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (!(flo * fhi < 0.0)) {
        throw BracketError("bisect_newton: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    const double mid = 0.5 * (lo + hi);
    const double slope = df(mid);
    if (slope == 0.0 || !std::isfinite(slope)) return mid;
    const double polished = mid - f(mid) / slope;
    return (polished >= lo && polished <= hi) ? polished : mid;
}

}  // namespace tdflow
