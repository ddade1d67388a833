#include "garchs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "garchs/special_functions.hpp"

namespace garchs {

InfoCriteria info_criteria(double loglik, int k, Eigen::Index n) {
    if (n < 3) throw std::invalid_argument("info_criteria needs n >= 3");
    const double dn = static_cast<double>(n);
    InfoCriteria c;
    c.aic = (-2.0 * loglik + 2.0 * k) / dn;
    c.sc = (-2.0 * loglik + k * std::log(dn)) / dn;
    c.hq = (-2.0 * loglik + 2.0 * k * std::log(std::log(dn))) / dn;
    return c;
}

std::string significance_stars(double p_value) {
    if (p_value < 0.01) return "***";
    if (p_value < 0.05) return "**";
    if (p_value < 0.10) return "*";
    return "";
}

DescribeResult describe(const Eigen::VectorXd& values) {
    const Eigen::Index n = values.size();
    if (n < 2) throw std::invalid_argument("describe needs at least 2 observations");
    DescribeResult d;
    d.n = n;
    d.mean = values.mean();
    d.min = values.minCoeff();
    d.max = values.maxCoeff();
    d.std_dev = std::sqrt((values.array() - d.mean).square().sum() / static_cast<double>(n - 1));
    return d;
}

DescribeResult describe(const DatedSeries& series) { return describe(series.values()); }

CorrMatrix corr_matrix(const AlignedTable& table) {
    const Eigen::Index n = table.rows();
    const Eigen::Index k = table.values.cols();
    if (n < 3) throw std::invalid_argument("corr_matrix needs at least 3 observations");

    CorrMatrix out;
    out.names = table.names;
    out.n_obs = n;
    out.cells.assign(static_cast<std::size_t>(k),
                     std::vector<CorrCell>(static_cast<std::size_t>(k)));

    Eigen::VectorXd sd(k);
    Eigen::MatrixXd centered(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        centered.col(j) = table.values.col(j).array() - table.values.col(j).mean();
        sd[j] = centered.col(j).norm();
    }

    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            CorrCell& cell = out.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (sd[i] == 0.0 || sd[j] == 0.0) continue; // constant column: stays N/A
            cell.available = true;
            if (i == j) {
                cell.r = 1.0;
                continue; // unit diagonal carries no significance stars
            }
            double r = centered.col(i).dot(centered.col(j)) / (sd[i] * sd[j]);
            r = std::clamp(r, -1.0, 1.0);
            cell.r = r;
            const double df = static_cast<double>(n - 2);
            const double t = r * std::sqrt(df / std::max(1.0 - r * r, 1e-300));
            cell.stars = significance_stars(student_t_two_sided_p(t, df));
        }
    }
    return out;
}

} // namespace garchs
