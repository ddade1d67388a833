#pragma once

#include <Eigen/Dense>

#include "garchs/series.hpp"

namespace garchs {

struct ArchLmResult {
    double f_stat = 0.0;
    double p_value = 1.0;
    int lags = 0;
    Eigen::Index n_obs = 0; // observations in the auxiliary regression
};

/// Regresses squared residuals on a constant and their own first `lags`
/// lags and F-tests the joint nullity of the lag coefficients. Rejection
/// indicates conditional heteroskedasticity. Throws std::invalid_argument
/// on too short input and std::runtime_error on a rank-deficient regressor
/// matrix (for example constant residuals).
ArchLmResult arch_lm_test(const Eigen::VectorXd& residuals, int lags = 5);
ArchLmResult arch_lm_test(const DatedSeries& residuals, int lags = 5);

} // namespace garchs
