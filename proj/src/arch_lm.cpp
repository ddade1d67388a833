#include "garchs/arch_lm.hpp"

#include <stdexcept>
#include <string>

#include "garchs/special_functions.hpp"

namespace garchs {

ArchLmResult arch_lm_test(const Eigen::VectorXd& residuals, int lags) {
    if (lags < 1) throw std::invalid_argument("arch_lm_test needs lags >= 1");
    const Eigen::Index n = residuals.size();
    if (n <= 2 * lags + 1)
        throw std::invalid_argument("arch_lm_test: " + std::to_string(n) +
                                    " residuals leave no degrees of freedom for " +
                                    std::to_string(lags) + " lags");

    const Eigen::VectorXd e2 = residuals.array().square();
    const Eigen::Index t = n - lags;
    const Eigen::VectorXd y = e2.tail(t);
    Eigen::MatrixXd x(t, lags + 1);
    x.col(0).setOnes();
    for (int j = 0; j < lags; ++j) x.col(j + 1) = e2.segment(lags - j - 1, t);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < x.cols())
        throw std::runtime_error(
            "arch_lm_test: rank-deficient regressor matrix (constant residuals?)");

    const Eigen::VectorXd resid = y - x * qr.solve(y);
    const double ssr_u = resid.squaredNorm();
    const double ssr_r = (y.array() - y.mean()).square().sum();
    const double k = static_cast<double>(lags);
    const double df2 = static_cast<double>(t) - k - 1.0;

    ArchLmResult out;
    out.lags = lags;
    out.n_obs = t;
    out.f_stat = ((ssr_r - ssr_u) / k) / (ssr_u / df2);
    out.p_value = f_upper_tail_p(out.f_stat, k, df2);
    return out;
}

ArchLmResult arch_lm_test(const DatedSeries& residuals, int lags) {
    return arch_lm_test(residuals.values(), lags);
}

} // namespace garchs
