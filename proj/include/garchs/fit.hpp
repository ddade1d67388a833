#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "garchs/model.hpp"
#include "garchs/nelder_mead.hpp"
#include "garchs/series.hpp"
#include "garchs/stats.hpp"

namespace garchs {

/// Central finite-difference Hessian with per-coordinate step
/// max(1e-5, 1e-5 |x_i|). Entries that cannot be evaluated finitely come
/// back NaN.
Eigen::MatrixXd fd_hessian(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x);

/// Standard errors and z-statistics for one estimate vector. Entries whose
/// curvature direction is flat or negative are flagged unavailable and
/// reported NaN rather than failing the fit.
struct ZStats {
    Eigen::VectorXd stderrs;
    Eigen::VectorXd z;
    std::vector<bool> available;
};

/// Inference at a minimum of the negative log-likelihood:
/// stderr = sqrt(diag(H^{-1})) with H the finite-difference Hessian,
/// z = at_i / stderr_i.
ZStats zstats(const std::function<double(const Eigen::VectorXd&)>& neg_loglik,
              const Eigen::VectorXd& at);

/// Delta-method variant for estimates reported in a transformed space:
/// cov_reported = J cov J^T where J = d(reported)/d(optimized) at the
/// optimum, and z uses the reported estimates.
ZStats zstats(const std::function<double(const Eigen::VectorXd&)>& neg_loglik,
              const Eigen::VectorXd& at, const Eigen::MatrixXd& jacobian,
              const Eigen::VectorXd& estimates);

/// A fitted model: point estimates, filtered paths, likelihood, inference
/// and the optimizer trace that produced it. n_params is 4 for the
/// Gaussian fit (mu, alpha0, alpha1, alpha2) and 7 for the full model.
struct GarchSFit {
    GarchSParams params;
    FilterState state;
    double loglik = 0.0;
    ZStats inference;
    InfoCriteria criteria;
    Eigen::Index n_obs = 0;
    int n_params = 0;
    OptimReport optim;
    std::vector<Date> dates; // return dates when fitted from a DatedSeries
};

/// Gaussian quasi-likelihood fit of the AR(1)-GARCH(1,1) submodel from
/// three deterministic starts (persistence 0.8, 0.9, 0.99), keeping the
/// best. Requires at least 50 returns.
GarchSFit fit_garch11(const Eigen::VectorXd& returns);
GarchSFit fit_garch11(const DatedSeries& returns);

/// Full-model fit of the skewed likelihood. By default starts from the
/// fit_garch11 solution with (beta0, beta1, beta2) = (0, 0.05, 0.1) and
/// keeps the likelihood at or above the Gaussian fit (the models are
/// nested). A caller-supplied start must be an interior point (alpha1,
/// alpha2 > 0) and skips the Gaussian pre-fit. Requires at least 100
/// returns.
GarchSFit fit_garchs(const Eigen::VectorXd& returns,
                     const std::optional<GarchSParams>& start = std::nullopt);
GarchSFit fit_garchs(const DatedSeries& returns,
                     const std::optional<GarchSParams>& start = std::nullopt);

/// The fitted skewness path as a series named "Skew", dated at the return
/// dates it belongs to. The fit must have been produced from a DatedSeries.
DatedSeries conditional_skewness(const GarchSFit& fit);

} // namespace garchs
