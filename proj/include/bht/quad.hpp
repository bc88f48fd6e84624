#pragma once

// Adaptive Simpson integration with Richardson extrapolation. Good enough
// for the smooth one-peak integrands used here; callers split at known
// peaks so panels stay monotone.

#include <cmath>
#include <functional>

namespace bht {

namespace detail {

template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth, int min_depth) {
    double m = 0.5 * (a + b);
    double flm = f(0.5 * (a + m));
    double frm = f(0.5 * (m + b));
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || (min_depth <= 0 && std::abs(delta) <= 15.0 * tol))
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, min_depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, min_depth - 1);
}

}  // namespace detail

/// Integrates f over [a, b]; `tol` is an absolute tolerance on the result.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 48,
                        int min_depth = 8) {
    if (!(b > a)) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth, min_depth);
}

}  // namespace bht
