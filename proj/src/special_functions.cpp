#include "garchs/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace garchs {

namespace {

constexpr double kLn2Pi = 1.8378770664093453;

// Continued-fraction core of the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 1e-15;
    constexpr double tiny = 1e-300;

    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double result = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        // Even step.
        double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        result *= d * c;
        // Odd step.
        num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        result *= delta;
        if (std::fabs(delta - 1.0) < eps) return result;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

} // namespace

double normal_pdf(double x) { return std::exp(-0.5 * x * x - 0.5 * kLn2Pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw std::domain_error("incomplete beta: a, b must be positive");
    if (x < 0.0 || x > 1.0) throw std::domain_error("incomplete beta: x must be in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double ln_prefix = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    // Use the expansion on whichever side converges fast, then reflect.
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(ln_prefix) * beta_cf(a, b, x) / a;
    return 1.0 - std::exp(ln_prefix) * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (df <= 0.0) throw std::domain_error("student t: df must be positive");
    if (!std::isfinite(t)) return 0.0;
    return regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

double f_upper_tail_p(double f, double df1, double df2) {
    if (df1 <= 0.0 || df2 <= 0.0) throw std::domain_error("F distribution: df must be positive");
    if (f <= 0.0) return 1.0;
    if (!std::isfinite(f)) return 0.0;
    return regularized_incomplete_beta(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * f));
}

} // namespace garchs
