#pragma once

namespace garchs {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF via the complementary error function.
double normal_cdf(double x);

/// Regularized incomplete beta function I_x(a, b) for a, b > 0 and
/// x in [0, 1], by continued fraction. Throws std::domain_error outside
/// the domain.
double regularized_incomplete_beta(double a, double b, double x);

/// P(|T| > |t|) for Student-t with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// P(F > f) for the F distribution with (df1, df2) degrees of freedom.
double f_upper_tail_p(double f, double df1, double df2);

} // namespace garchs
