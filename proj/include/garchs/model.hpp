#pragma once

#include <Eigen/Dense>
#include <string>

#include "garchs/series.hpp"

namespace garchs {

/// Coefficients of the AR(1) return equation with GARCH(1,1) variance and
/// an AR(1)-type conditional-skewness recursion driven by cubed
/// standardized residuals:
///
///   r_t = mu * r_{t-1} + eps_t,          eps_t = sqrt(h_t) * eta_t
///   h_t = alpha0 + alpha1 * eps_{t-1}^2 + alpha2 * h_{t-1}
///   s_t = beta0  + beta1  * eta_{t-1}^3 + beta2  * s_{t-1}
struct GarchSParams {
    double mu = 0.0;
    double alpha0 = 1e-6;
    double alpha1 = 0.05;
    double alpha2 = 0.90;
    double beta0 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;

    /// Throws std::invalid_argument naming the violated constraint:
    /// alpha0 > 0, alpha1 >= 0, alpha2 >= 0, alpha1 + alpha2 < 1,
    /// |beta2| < 1, |mu| < 1.
    void validate() const;

    Eigen::Matrix<double, 7, 1> to_vector() const;
    static GarchSParams from_vector(const Eigen::Matrix<double, 7, 1>& v);
};

/// Names of the seven parameters in to_vector order.
extern const char* const kParamNames[7];

/// One step of the variance recursion. The simulator and the filter both
/// call this so their arithmetic is identical operation for operation.
inline double variance_step(const GarchSParams& p, double eps_prev, double h_prev) {
    return p.alpha0 + p.alpha1 * (eps_prev * eps_prev) + p.alpha2 * h_prev;
}

/// One step of the skewness recursion; see variance_step.
inline double skew_step(const GarchSParams& p, double eta_prev, double s_prev) {
    return p.beta0 + p.beta1 * (eta_prev * eta_prev * eta_prev) + p.beta2 * s_prev;
}

/// Residual, variance, standardized-residual and skewness paths produced by
/// running the model recursions over a return series. With n returns the
/// paths have length n - 1 (the AR(1) mean equation consumes one
/// observation); entry i belongs to return index i + 1.
struct FilterState {
    Eigen::VectorXd eps;
    Eigen::VectorXd h;
    Eigen::VectorXd eta;
    Eigen::VectorXd s;

    Eigen::Index size() const { return eps.size(); }
};

/// Runs the recursions with the default initialization: the first variance
/// is the sample variance of the residuals and the first skewness is 0.
/// Requires at least 3 returns.
FilterState filter(const GarchSParams& params, const Eigen::VectorXd& returns);

/// Same recursions with caller-chosen initial variance and skewness,
/// for replaying a simulated path from its known starting state.
FilterState filter(const GarchSParams& params, const Eigen::VectorXd& returns, double h_init,
                   double s_init);

FilterState filter(const GarchSParams& params, const DatedSeries& returns);

/// Total and per-observation log-likelihood.
struct LogLikResult {
    double total = 0.0;
    Eigen::VectorXd per_obs;
};

/// Log-likelihood under the skewed innovation density
/// f(eta) = phi(eta) * psi(eta)^2 / Gamma with psi = 1 + (s/6)(eta^3 - 3 eta)
/// and Gamma = 1 + s^2/6. Per-observation contribution:
/// -0.5 ln(2 pi) - 0.5 ln h_t - 0.5 eta_t^2 + ln(psi_t^2) - ln Gamma_t.
/// Throws std::runtime_error naming the observation if a contribution is
/// non-finite.
LogLikResult gram_charlier_loglik(const GarchSParams& params, const Eigen::VectorXd& returns);
LogLikResult gram_charlier_loglik(const GarchSParams& params, const DatedSeries& returns);

/// Gaussian log-likelihood of the same AR(1)-GARCH filter; the beta
/// coefficients are ignored.
LogLikResult gaussian_garch_loglik(const GarchSParams& params, const Eigen::VectorXd& returns);
LogLikResult gaussian_garch_loglik(const GarchSParams& params, const DatedSeries& returns);

/// The skewed innovation density f(eta; s) itself.
double gram_charlier_density(double eta, double s);

/// Integrates f(eta; s) over [-12, 12] by adaptive quadrature; the result
/// should be 1 for any s because the Gamma normalizer is exact. Requires
/// |s| < 4.
double density_integral_check(double s);

} // namespace garchs
