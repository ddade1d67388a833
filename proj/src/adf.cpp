#include "garchs/adf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "garchs/stats.hpp"

namespace garchs {

namespace {

struct AdfFit {
    double t_rho = 0.0;
    double aic = 0.0;
    Eigen::Index n_obs = 0;
};

// Fits dy_t = a + rho * y_{t-1} + sum_j c_j dy_{t-j} using rows
// start..end of the differenced series.
AdfFit fit_adf(const Eigen::VectorXd& y, int k, int start) {
    const Eigen::Index m = y.size() - 1;
    Eigen::VectorXd dy(m);
    for (Eigen::Index i = 0; i < m; ++i) dy[i] = y[i + 1] - y[i];

    const Eigen::Index t = m - start;
    const Eigen::Index cols = 2 + k;
    if (t <= cols)
        throw std::invalid_argument("adf_test: too few observations for " + std::to_string(k) +
                                    " augmentation lags");

    Eigen::MatrixXd x(t, cols);
    x.col(0).setOnes();
    x.col(1) = y.segment(start, t);
    for (int j = 1; j <= k; ++j) x.col(1 + j) = dy.segment(start - j, t);
    const Eigen::VectorXd target = dy.segment(start, t);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < cols) throw std::runtime_error("adf_test: rank-deficient regression");

    const Eigen::VectorXd beta = qr.solve(target);
    const Eigen::VectorXd resid = target - x * beta;
    const double ssr = resid.squaredNorm();
    const double sigma2 = ssr / static_cast<double>(t - cols);
    const Eigen::MatrixXd xtx_inv =
        (x.transpose() * x).ldlt().solve(Eigen::MatrixXd::Identity(cols, cols));

    AdfFit fit;
    fit.t_rho = beta[1] / std::sqrt(sigma2 * xtx_inv(1, 1));
    const double dt = static_cast<double>(t);
    const double loglik = -0.5 * dt * (std::log(2.0 * M_PI) + std::log(ssr / dt) + 1.0);
    fit.aic = info_criteria(loglik, static_cast<int>(cols), t).aic;
    fit.n_obs = t;
    return fit;
}

} // namespace

int default_adf_max_lags(Eigen::Index n) {
    return static_cast<int>(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25));
}

AdfResult adf_test(const Eigen::VectorXd& series, int max_lags) {
    if (series.size() < 25)
        throw std::invalid_argument("adf_test needs at least 25 observations, got " +
                                    std::to_string(series.size()));
    if (max_lags < 0) throw std::invalid_argument("adf_test needs max_lags >= 0");

    int best_k = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= max_lags; ++k) {
        const AdfFit fit = fit_adf(series, k, max_lags);
        if (fit.aic < best_aic) {
            best_aic = fit.aic;
            best_k = k;
        }
    }
    const AdfFit final_fit = fit_adf(series, best_k, best_k);

    AdfResult out;
    out.stat = final_fit.t_rho;
    out.lags = best_k;
    out.n_obs = final_fit.n_obs;
    if (out.stat < -3.43)
        out.stars = "***";
    else if (out.stat < -2.86)
        out.stars = "**";
    else if (out.stat < -2.57)
        out.stars = "*";
    return out;
}

AdfResult adf_test(const DatedSeries& series, int max_lags) {
    return adf_test(series.values(), max_lags);
}

} // namespace garchs
