#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace garchs {

/// Outcome of a simplex minimization, possibly after perturbed restarts.
struct OptimReport {
    Eigen::VectorXd best_x;
    double best_value = 0.0;
    int iterations = 0;    // summed over all restart runs
    bool converged = false; // the run that produced best_x met the spread tolerance
    int restarts_used = 0;
    std::string termination_reason;
};

/// Minimizes the objective by the Nelder-Mead simplex method. A run
/// terminates when the spread of vertex function values falls below tol or
/// after max_iter iterations. After the first run, up to `restarts`
/// further runs start from a deterministically perturbed copy of the best
/// point so far; the best vertex across all runs is returned.
///
/// Non-finite objective values are treated as worst-possible. Throws
/// std::invalid_argument if every vertex of the first initial simplex is
/// non-finite.
OptimReport nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                        const Eigen::VectorXd& x0, double tol = 1e-8, int max_iter = 5000,
                        int restarts = 0);

} // namespace garchs
