#include "garchs/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace garchs {

namespace {

constexpr double kWorst = std::numeric_limits<double>::infinity();

double guarded(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x) {
    double v;
    try {
        v = f(x);
    } catch (const std::exception&) {
        return kWorst;
    }
    return std::isfinite(v) ? v : kWorst;
}

struct RunResult {
    Eigen::VectorXd x;
    double value;
    int iterations;
    bool converged;
};

// One simplex run with the standard reflection/expansion/contraction/shrink
// coefficients (1, 2, 0.5, 0.5) and an initial simplex that nudges each
// coordinate by 5% (0.00025 absolute for zero coordinates).
RunResult run_simplex(const std::function<double(const Eigen::VectorXd&)>& f,
                      const Eigen::VectorXd& x0, double tol, int max_iter) {
    const int n = static_cast<int>(x0.size());
    std::vector<Eigen::VectorXd> xs(n + 1, x0);
    for (int i = 0; i < n; ++i) {
        if (xs[i + 1][i] != 0.0)
            xs[i + 1][i] *= 1.05;
        else
            xs[i + 1][i] = 0.00025;
    }
    std::vector<double> fs(n + 1);
    for (int i = 0; i <= n; ++i) fs[i] = guarded(f, xs[i]);

    std::vector<int> order(n + 1);
    int iter = 0;
    bool converged = false;
    for (; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });

        const double f_best = fs[order[0]], f_worst = fs[order[n]];
        if (std::isfinite(f_best) && std::isfinite(f_worst) && f_worst - f_best < tol) {
            converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) centroid += xs[order[i]];
        centroid /= n;
        const Eigen::VectorXd& worst = xs[order[n]];

        const Eigen::VectorXd xr = 2.0 * centroid - worst;
        const double fr = guarded(f, xr);
        if (fr < fs[order[0]]) {
            const Eigen::VectorXd xe = 3.0 * centroid - 2.0 * worst;
            const double fe = guarded(f, xe);
            if (fe < fr) {
                xs[order[n]] = xe;
                fs[order[n]] = fe;
            } else {
                xs[order[n]] = xr;
                fs[order[n]] = fr;
            }
        } else if (fr < fs[order[n - 1]]) {
            xs[order[n]] = xr;
            fs[order[n]] = fr;
        } else {
            bool shrink = false;
            if (fr < fs[order[n]]) {
                const Eigen::VectorXd xc = 1.5 * centroid - 0.5 * worst; // outside contraction
                const double fc = guarded(f, xc);
                if (fc <= fr) {
                    xs[order[n]] = xc;
                    fs[order[n]] = fc;
                } else {
                    shrink = true;
                }
            } else {
                const Eigen::VectorXd xc = 0.5 * (centroid + worst); // inside contraction
                const double fc = guarded(f, xc);
                if (fc < fs[order[n]]) {
                    xs[order[n]] = xc;
                    fs[order[n]] = fc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (int i = 1; i <= n; ++i) {
                    xs[order[i]] = xs[order[0]] + 0.5 * (xs[order[i]] - xs[order[0]]);
                    fs[order[i]] = guarded(f, xs[order[i]]);
                }
            }
        }
    }

    const auto best = static_cast<std::size_t>(
        std::min_element(fs.begin(), fs.end()) - fs.begin());
    return {xs[best], fs[best], iter, converged};
}

} // namespace

OptimReport nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                        const Eigen::VectorXd& x0, double tol, int max_iter, int restarts) {
    if (!(tol > 0.0)) throw std::invalid_argument("nelder_mead: tol must be positive");
    if (x0.size() == 0) throw std::invalid_argument("nelder_mead: empty starting point");

    {
        // The first initial simplex must contain at least one finite vertex.
        bool any_finite = std::isfinite(guarded(objective, x0));
        for (int i = 0; i < x0.size() && !any_finite; ++i) {
            Eigen::VectorXd v = x0;
            v[i] = v[i] != 0.0 ? v[i] * 1.05 : 0.00025;
            any_finite = std::isfinite(guarded(objective, v));
        }
        if (!any_finite)
            throw std::invalid_argument(
                "nelder_mead: objective is non-finite at every vertex of the initial simplex");
    }

    OptimReport report;
    Eigen::VectorXd start = x0;
    for (int attempt = 0; attempt <= restarts; ++attempt) {
        const RunResult run = run_simplex(objective, start, tol, max_iter);
        report.iterations += run.iterations;
        if (attempt == 0 || run.value < report.best_value) {
            report.best_x = run.x;
            report.best_value = run.value;
            report.converged = run.converged;
        }
        report.restarts_used = attempt;
        // Deterministic perturbation of the incumbent for the next attempt.
        const double scale = attempt % 2 == 0 ? 0.05 : -0.08;
        start = report.best_x + scale * (report.best_x.cwiseAbs().array() + 0.05).matrix();
    }
    report.termination_reason =
        report.converged ? "simplex spread below tolerance" : "iteration limit reached";
    return report;
}

} // namespace garchs
