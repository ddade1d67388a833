#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "garchs/series.hpp"

namespace garchs {

/// One regressor in a regression specification.
struct Term {
    enum class Kind { Intercept, LaggedDep, Var, Interaction };

    Kind kind = Kind::Intercept;
    std::string name;       // Var/Interaction: the regressor column
    std::string dummy_name; // Interaction only: the 0/1 regime column
    int lag = 0;            // Var/Interaction: lag of the regressor column

    static Term intercept() { return {Kind::Intercept, "", "", 0}; }
    static Term lagged_dep() { return {Kind::LaggedDep, "", "", 1}; }
    static Term var(std::string name, int lag) { return {Kind::Var, std::move(name), "", lag}; }
    static Term interaction(std::string dummy, std::string name, int lag) {
        return {Kind::Interaction, std::move(name), std::move(dummy), lag};
    }

    /// How many leading rows of the table this term cannot be computed for.
    int required_lag() const { return kind == Kind::LaggedDep ? 1 : lag; }

    /// Display label, e.g. "Intercept", "Skew(-1)", "rCases(-2)", "D*rEPU(-1)".
    std::string label(const std::string& dependent) const;

    bool operator==(const Term&) const = default;
};

struct RegressionSpec {
    std::string dependent;
    std::vector<Term> terms;

    /// Throws std::invalid_argument on duplicate terms, more than one
    /// intercept, or a negative lag.
    void validate() const;
};

struct CoefficientEstimate {
    Term term;
    double estimate = 0.0;
    double stderr_value = 0.0;
    double tstat = 0.0;
    double pvalue = 1.0;
};

struct RegressionResult {
    std::vector<CoefficientEstimate> coefficients;
    Eigen::Index n_obs = 0;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double aic = 0.0; // per observation, as are sc and hq
    double sc = 0.0;
    double hq = 0.0;
    Eigen::VectorXd residuals;
    Eigen::MatrixXd coef_cov;
    std::vector<Date> sample_dates;

    const CoefficientEstimate& coefficient(const Term& term) const; // throws if absent
};

/// Least-squares fit of the spec on the table, using the maximal sample the
/// spec's lags allow. t-statistics use conventional standard errors
/// s^2 (X'X)^{-1}; information criteria are per-observation with Gaussian
/// likelihood. Throws std::invalid_argument on a missing column or too few
/// observations and std::runtime_error naming the collinear terms on rank
/// deficiency.
RegressionResult ols(const RegressionSpec& spec, const AlignedTable& data);

enum class Criterion { AIC, SC };

/// Scope of a lag-order search: dependent regressed on an intercept, its
/// own first lag, lags 1..p of p_var and (when q_var is set) lags 0..q of
/// q_var.
struct LagSearchSpec {
    std::string dependent;
    std::string p_var;
    std::string q_var; // empty = no second variable, q fixed at none
    bool intercept = true;
    bool lagged_dep = true;
};

struct LagSearchResult {
    int p = 0;
    int q = 0;
    RegressionSpec spec;
    RegressionResult fit;
};

/// Fits every (p, q) in [1..max_p] x [0..max_q] on the common sample
/// implied by the largest candidate lag, picks the pair minimizing the
/// criterion (ties toward smaller p+q, then smaller p), and refits the
/// winner on its own maximal sample. With q_var empty only p is searched.
LagSearchResult lag_search(const LagSearchSpec& scope, int max_p, int max_q, Criterion criterion,
                           const AlignedTable& data);

/// Regime decomposition of a slope in a regression containing both
/// Var(var, lag) and Interaction(dummy, var, lag): the pre-period effect is
/// the Var coefficient alone and the regime effect is the sum of both, with
/// variance formed from the coefficient covariance matrix.
struct SplitCoefficient {
    double pre_period_effect = 0.0;
    double regime_effect = 0.0;
    double regime_stderr = 0.0;
    double regime_tstat = 0.0;
};

SplitCoefficient split_coefficient(const RegressionResult& result, const std::string& dummy_name,
                                   const std::string& var_name, int lag);

} // namespace garchs
