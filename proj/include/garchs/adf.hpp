#pragma once

#include <Eigen/Dense>
#include <string>

#include "garchs/series.hpp"

namespace garchs {

struct AdfResult {
    double stat = 0.0;
    std::string stars;      // from the large-sample constant-only critical values
    int lags = 0;           // chosen augmentation lag count
    Eigen::Index n_obs = 0; // observations in the final regression
};

/// Unit-root regression of the differenced series on a constant, the
/// lagged level, and 0..max_lags lagged differences. The augmentation lag
/// is chosen by AIC on the sample common to all candidates, then the
/// chosen model is refit on its own maximal sample. The statistic is the
/// t-ratio of the lagged level; stars mark rejection at the approximate
/// large-sample critical values -3.43 (1%), -2.86 (5%), -2.57 (10%).
/// Requires at least 25 observations.
AdfResult adf_test(const Eigen::VectorXd& series, int max_lags);
AdfResult adf_test(const DatedSeries& series, int max_lags);

/// Default lag ceiling 12 * (n/100)^(1/4), rounded down.
int default_adf_max_lags(Eigen::Index n);

} // namespace garchs
