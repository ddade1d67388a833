#include "garchs/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "garchs/param_transform.hpp"

namespace garchs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double guarded_f(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x) {
    try {
        const double v = f(x);
        return std::isfinite(v) ? v : kNaN;
    } catch (const std::exception&) {
        return kNaN;
    }
}

// Negative skewed log-likelihood over the unconstrained 7-vector.
double neg_gc(const Eigen::VectorXd& u, const Eigen::VectorXd& returns) {
    return -gram_charlier_loglik(to_constrained(u), returns).total;
}

// Negative Gaussian log-likelihood over the first 4 unconstrained coordinates.
double neg_gauss(const Eigen::VectorXd& u4, const Eigen::VectorXd& returns) {
    Eigen::VectorXd u7 = Eigen::VectorXd::Zero(7);
    u7.head(4) = u4;
    return -gaussian_garch_loglik(to_constrained(u7), returns).total;
}

} // namespace

Eigen::MatrixXd fd_hessian(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd h(n);
    for (Eigen::Index i = 0; i < n; ++i) h[i] = std::max(1e-5, 1e-5 * std::fabs(x[i]));

    const double f0 = guarded_f(f, x);
    Eigen::MatrixXd hess(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h[i];
        xm[i] -= h[i];
        hess(i, i) = (guarded_f(f, xp) - 2.0 * f0 + guarded_f(f, xm)) / (h[i] * h[i]);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
            xpp[i] += h[i];
            xpp[j] += h[j];
            xpm[i] += h[i];
            xpm[j] -= h[j];
            xmp[i] -= h[i];
            xmp[j] += h[j];
            xmm[i] -= h[i];
            xmm[j] -= h[j];
            const double v = (guarded_f(f, xpp) - guarded_f(f, xpm) - guarded_f(f, xmp) +
                              guarded_f(f, xmm)) /
                             (4.0 * h[i] * h[j]);
            hess(i, j) = hess(j, i) = v;
        }
    }
    return hess;
}

ZStats zstats(const std::function<double(const Eigen::VectorXd&)>& neg_loglik,
              const Eigen::VectorXd& at) {
    const Eigen::Index n = at.size();
    return zstats(neg_loglik, at, Eigen::MatrixXd::Identity(n, n), at);
}

ZStats zstats(const std::function<double(const Eigen::VectorXd&)>& neg_loglik,
              const Eigen::VectorXd& at, const Eigen::MatrixXd& jacobian,
              const Eigen::VectorXd& estimates) {
    const Eigen::Index n = at.size();
    const Eigen::Index m = estimates.size();
    if (jacobian.rows() != m || jacobian.cols() != n)
        throw std::invalid_argument("zstats: jacobian shape does not match estimates and point");

    ZStats out;
    out.stderrs = Eigen::VectorXd::Constant(m, kNaN);
    out.z = Eigen::VectorXd::Constant(m, kNaN);
    out.available.assign(static_cast<std::size_t>(m), false);

    Eigen::MatrixXd hess = fd_hessian(neg_loglik, at);
    hess = 0.5 * (hess + hess.transpose()).eval();

    // Coordinates whose Hessian row failed to evaluate cannot be covered.
    std::vector<bool> coord_bad(static_cast<std::size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (!std::isfinite(hess(i, j))) coord_bad[static_cast<std::size_t>(i)] = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (coord_bad[static_cast<std::size_t>(i)]) {
            hess.row(i).setZero();
            hess.col(i).setZero();
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess);
    if (eig.info() != Eigen::Success) return out;
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const Eigen::MatrixXd& v = eig.eigenvectors();
    const double lambda_tol = lambda.cwiseAbs().maxCoeff() * 1e-10;

    // Invert over the well-conditioned positive eigendirections; flag any
    // coordinate that loads on a flat or negative direction.
    Eigen::MatrixXd cov_u = Eigen::MatrixXd::Zero(n, n);
    std::vector<bool> dir_bad(static_cast<std::size_t>(n), false);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (lambda[k] > lambda_tol)
            cov_u += v.col(k) * v.col(k).transpose() / lambda[k];
        else
            dir_bad[static_cast<std::size_t>(k)] = true;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (coord_bad[static_cast<std::size_t>(i)]) continue;
        bool ok = true;
        for (Eigen::Index k = 0; k < n; ++k)
            if (dir_bad[static_cast<std::size_t>(k)] && std::fabs(v(i, k)) > 1e-8) ok = false;
        coord_bad[static_cast<std::size_t>(i)] = !ok;
    }

    const Eigen::MatrixXd cov_c = jacobian * cov_u * jacobian.transpose();
    for (Eigen::Index i = 0; i < m; ++i) {
        bool ok = true;
        for (Eigen::Index j = 0; j < n; ++j)
            if (coord_bad[static_cast<std::size_t>(j)] && std::fabs(jacobian(i, j)) > 1e-12)
                ok = false;
        if (!ok || !(cov_c(i, i) > 0.0)) continue;
        out.available[static_cast<std::size_t>(i)] = true;
        out.stderrs[i] = std::sqrt(cov_c(i, i));
        out.z[i] = estimates[i] / out.stderrs[i];
    }
    return out;
}

namespace {

GarchSFit finish_garch11(const Eigen::VectorXd& returns, const OptimReport& report) {
    Eigen::VectorXd u7 = Eigen::VectorXd::Zero(7);
    u7.head(4) = report.best_x;
    GarchSFit fit;
    fit.params = to_constrained(u7);
    fit.state = filter(fit.params, returns);
    fit.loglik = -report.best_value;
    fit.n_obs = fit.state.size();
    fit.n_params = 4;
    fit.optim = report;
    fit.criteria = info_criteria(fit.loglik, fit.n_params, fit.n_obs);
    const auto obj = [&returns](const Eigen::VectorXd& u4) { return neg_gauss(u4, returns); };
    const Eigen::MatrixXd j4 = constrained_jacobian(u7).topLeftCorner(4, 4);
    fit.inference = zstats(obj, report.best_x, j4, fit.params.to_vector().head(4));
    return fit;
}

GarchSFit finish_garchs(const Eigen::VectorXd& returns, const OptimReport& report) {
    GarchSFit fit;
    fit.params = to_constrained(report.best_x);
    fit.state = filter(fit.params, returns);
    fit.loglik = -report.best_value;
    fit.n_obs = fit.state.size();
    fit.n_params = 7;
    fit.optim = report;
    fit.criteria = info_criteria(fit.loglik, fit.n_params, fit.n_obs);
    const auto obj = [&returns](const Eigen::VectorXd& u) { return neg_gc(u, returns); };
    fit.inference =
        zstats(obj, report.best_x, constrained_jacobian(report.best_x), fit.params.to_vector());
    return fit;
}

} // namespace

GarchSFit fit_garch11(const Eigen::VectorXd& returns) {
    const Eigen::Index n = returns.size();
    if (n < 50)
        throw std::invalid_argument("fit_garch11 needs at least 50 returns, got " +
                                    std::to_string(n));

    const double mean = returns.mean();
    const double var = (returns.array() - mean).square().sum() / static_cast<double>(n - 1);
    // The all-equal check is separate because the two-pass variance of a
    // constant vector can round to a tiny positive number instead of zero.
    if (!(var > 0.0) || (returns.array() == returns[0]).all())
        throw std::runtime_error("fit_garch11: returns are constant");

    // AR(1) least-squares start for mu, clamped inside the unit interval.
    const auto head = returns.head(n - 1);
    const auto tail = returns.tail(n - 1);
    const double denom = head.dot(head);
    double mu0 = denom > 0.0 ? tail.dot(head) / denom : 0.0;
    mu0 = std::clamp(mu0, -0.95, 0.95);

    const auto obj = [&returns](const Eigen::VectorXd& u4) { return neg_gauss(u4, returns); };

    bool have_best = false;
    OptimReport best;
    for (const double pers : {0.8, 0.9, 0.99}) {
        GarchSParams p0;
        p0.mu = mu0;
        p0.alpha1 = 0.1 * pers;
        p0.alpha2 = pers - p0.alpha1;
        p0.alpha0 = std::max((1.0 - pers) * var, 1e-12);
        Eigen::VectorXd u0 = to_unconstrained(p0).head(4);
        OptimReport r;
        try {
            r = nelder_mead(obj, u0, 1e-8, 5000, 0);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (!have_best || r.best_value < best.best_value) {
            best = r;
            have_best = true;
        }
    }
    if (!have_best || !std::isfinite(best.best_value))
        throw std::runtime_error("fit_garch11: no start produced a finite likelihood");
    return finish_garch11(returns, best);
}

GarchSFit fit_garch11(const DatedSeries& returns) {
    GarchSFit fit = fit_garch11(returns.values());
    fit.dates = returns.dates();
    return fit;
}

GarchSFit fit_garchs(const Eigen::VectorXd& returns, const std::optional<GarchSParams>& start) {
    const Eigen::Index n = returns.size();
    if (n < 100)
        throw std::invalid_argument("fit_garchs needs at least 100 returns, got " +
                                    std::to_string(n));

    const auto obj = [&returns](const Eigen::VectorXd& u) { return neg_gc(u, returns); };

    Eigen::VectorXd u0(7);
    double gauss_floor = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd u_floor;
    if (start) {
        start->validate();
        u0 = to_unconstrained(*start);
    } else {
        const GarchSFit g11 = fit_garch11(returns);
        u_floor = to_unconstrained(g11.params);
        gauss_floor = g11.loglik;
        u0 = u_floor;
        u0[5] = 0.05;
        u0[6] = std::atanh(0.1);
    }

    OptimReport report = nelder_mead(obj, u0, 1e-8, 5000, 3);
    if (-report.best_value < gauss_floor) {
        // The skewed start drifted below the nested Gaussian optimum; rerun
        // from exactly that point (its first vertex), which cannot end lower.
        const OptimReport retry = nelder_mead(obj, u_floor, 1e-8, 5000, 0);
        if (retry.best_value < report.best_value) report = retry;
    }
    return finish_garchs(returns, report);
}

GarchSFit fit_garchs(const DatedSeries& returns, const std::optional<GarchSParams>& start) {
    GarchSFit fit = fit_garchs(returns.values(), start);
    fit.dates = returns.dates();
    return fit;
}

DatedSeries conditional_skewness(const GarchSFit& fit) {
    if (fit.dates.empty())
        throw std::invalid_argument("conditional_skewness: fit was not produced from a dated series");
    std::vector<Date> dates(fit.dates.begin() + 1, fit.dates.end());
    return DatedSeries(std::move(dates), fit.state.s, "Skew");
}

} // namespace garchs
