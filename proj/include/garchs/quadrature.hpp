#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace garchs {

namespace detail {

inline double simpson_slice(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_step(F& f, double a, double fa, double b, double fb, double m, double fm,
                             double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_slice(a, fa, m, fm, flm);
    const double right = simpson_slice(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) throw std::runtime_error("adaptive quadrature did not converge");
    return adaptive_simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Integrates f over [a, b] by adaptive Simpson quadrature with Richardson
/// correction. Throws std::runtime_error if the tolerance cannot be met
/// within max_depth bisection levels.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 40) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = detail::simpson_slice(a, fa, b, fb, fm);
    return detail::adaptive_simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

} // namespace garchs
