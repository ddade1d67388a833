#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "garchs/series.hpp"

namespace garchs {

/// Per-observation information criteria:
/// (-2 loglik + penalty) / n with penalties 2k, k ln n, 2k ln ln n.
struct InfoCriteria {
    double aic = 0.0;
    double sc = 0.0;
    double hq = 0.0;
};

InfoCriteria info_criteria(double loglik, int k, Eigen::Index n);

/// "***" below 1%, "**" below 5%, "*" below 10%, else empty.
std::string significance_stars(double p_value);

struct DescribeResult {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double std_dev = 0.0; // n-1 denominator
    Eigen::Index n = 0;
};

/// Sample mean, extremes and standard deviation. Requires length >= 2.
DescribeResult describe(const DatedSeries& series);
DescribeResult describe(const Eigen::VectorXd& values);

/// One cell of a correlation matrix. available is false where the
/// correlation is undefined (a constant column); such cells print as N/A.
struct CorrCell {
    double r = 0.0;
    std::string stars;
    bool available = false;
};

struct CorrMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<CorrCell>> cells; // square, indexed [row][col]
    Eigen::Index n_obs = 0;
};

/// Pairwise Pearson correlations over the table's common sample with stars
/// from the t-statistic r sqrt((n-2)/(1-r^2)). Requires at least 3 rows.
CorrMatrix corr_matrix(const AlignedTable& table);

} // namespace garchs
