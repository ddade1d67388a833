#include "garchs/model.hpp"

#include <cmath>
#include <stdexcept>

#include "garchs/quadrature.hpp"

namespace garchs {

namespace {

constexpr double kNegHalfLn2Pi = -0.9189385332046727;

FilterState run_filter(const GarchSParams& p, const Eigen::VectorXd& returns, double h_init,
                       double s_init) {
    const Eigen::Index n = returns.size();
    const Eigen::Index m = n - 1;
    FilterState st;
    st.eps.resize(m);
    st.h.resize(m);
    st.eta.resize(m);
    st.s.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) st.eps[i] = returns[i + 1] - p.mu * returns[i];

    st.h[0] = h_init;
    st.s[0] = s_init;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (i > 0) {
            st.h[i] = variance_step(p, st.eps[i - 1], st.h[i - 1]);
            st.s[i] = skew_step(p, st.eta[i - 1], st.s[i - 1]);
        }
        if (!(st.h[i] > 0.0))
            throw std::runtime_error("conditional variance not positive at observation " +
                                     std::to_string(i));
        st.eta[i] = st.eps[i] / std::sqrt(st.h[i]);
    }
    return st;
}

} // namespace

const char* const kParamNames[7] = {"mu", "alpha0", "alpha1", "alpha2", "beta0", "beta1", "beta2"};

void GarchSParams::validate() const {
    if (!(alpha0 > 0.0)) throw std::invalid_argument("alpha0 must be positive");
    if (alpha1 < 0.0) throw std::invalid_argument("alpha1 must be non-negative");
    if (alpha2 < 0.0) throw std::invalid_argument("alpha2 must be non-negative");
    if (!(alpha1 + alpha2 < 1.0))
        throw std::invalid_argument("alpha1 + alpha2 must be below 1 for a stationary variance");
    if (!(std::fabs(beta2) < 1.0))
        throw std::invalid_argument("|beta2| must be below 1 for a stable skewness recursion");
    if (!(std::fabs(mu) < 1.0)) throw std::invalid_argument("|mu| must be below 1");
}

Eigen::Matrix<double, 7, 1> GarchSParams::to_vector() const {
    Eigen::Matrix<double, 7, 1> v;
    v << mu, alpha0, alpha1, alpha2, beta0, beta1, beta2;
    return v;
}

GarchSParams GarchSParams::from_vector(const Eigen::Matrix<double, 7, 1>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
}

FilterState filter(const GarchSParams& params, const Eigen::VectorXd& returns) {
    params.validate();
    const Eigen::Index n = returns.size();
    if (n < 3) throw std::invalid_argument("filter needs at least 3 returns, got " + std::to_string(n));

    // Initial variance: two-pass sample variance of the residuals (n-1
    // denominator). Initial skewness: 0.
    const Eigen::Index m = n - 1;
    Eigen::VectorXd eps(m);
    for (Eigen::Index i = 0; i < m; ++i) eps[i] = returns[i + 1] - params.mu * returns[i];
    double mean = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) mean += eps[i];
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) var += (eps[i] - mean) * (eps[i] - mean);
    var /= static_cast<double>(m - 1);
    if (!(var > 0.0)) throw std::runtime_error("residuals have zero sample variance");

    return run_filter(params, returns, var, 0.0);
}

FilterState filter(const GarchSParams& params, const Eigen::VectorXd& returns, double h_init,
                   double s_init) {
    params.validate();
    if (returns.size() < 3)
        throw std::invalid_argument("filter needs at least 3 returns, got " +
                                    std::to_string(returns.size()));
    if (!(h_init > 0.0)) throw std::invalid_argument("initial variance must be positive");
    return run_filter(params, returns, h_init, s_init);
}

FilterState filter(const GarchSParams& params, const DatedSeries& returns) {
    return filter(params, returns.values());
}

LogLikResult gram_charlier_loglik(const GarchSParams& params, const Eigen::VectorXd& returns) {
    const FilterState st = filter(params, returns);
    LogLikResult out;
    out.per_obs.resize(st.size());
    for (Eigen::Index i = 0; i < st.size(); ++i) {
        const double eta = st.eta[i];
        const double s = st.s[i];
        const double psi = 1.0 + (s / 6.0) * (eta * eta * eta - 3.0 * eta);
        const double gamma = 1.0 + s * s / 6.0;
        const double l = kNegHalfLn2Pi - 0.5 * std::log(st.h[i]) - 0.5 * eta * eta +
                         std::log(psi * psi) - std::log(gamma);
        if (!std::isfinite(l))
            throw std::runtime_error("log-likelihood not finite at observation " + std::to_string(i));
        out.per_obs[i] = l;
        out.total += l;
    }
    return out;
}

LogLikResult gram_charlier_loglik(const GarchSParams& params, const DatedSeries& returns) {
    return gram_charlier_loglik(params, returns.values());
}

LogLikResult gaussian_garch_loglik(const GarchSParams& params, const Eigen::VectorXd& returns) {
    GarchSParams p = params;
    p.beta0 = p.beta1 = p.beta2 = 0.0;
    const FilterState st = filter(p, returns);
    LogLikResult out;
    out.per_obs.resize(st.size());
    for (Eigen::Index i = 0; i < st.size(); ++i) {
        const double l = kNegHalfLn2Pi - 0.5 * std::log(st.h[i]) - 0.5 * st.eta[i] * st.eta[i];
        if (!std::isfinite(l))
            throw std::runtime_error("log-likelihood not finite at observation " + std::to_string(i));
        out.per_obs[i] = l;
        out.total += l;
    }
    return out;
}

LogLikResult gaussian_garch_loglik(const GarchSParams& params, const DatedSeries& returns) {
    return gaussian_garch_loglik(params, returns.values());
}

double gram_charlier_density(double eta, double s) {
    const double psi = 1.0 + (s / 6.0) * (eta * eta * eta - 3.0 * eta);
    const double gamma = 1.0 + s * s / 6.0;
    return std::exp(kNegHalfLn2Pi - 0.5 * eta * eta) * psi * psi / gamma;
}

double density_integral_check(double s) {
    if (!(std::fabs(s) < 4.0))
        throw std::invalid_argument("density check requires |s| < 4, got " + std::to_string(s));
    return adaptive_simpson([s](double eta) { return gram_charlier_density(eta, s); }, -12.0, 12.0,
                            1e-10);
}

} // namespace garchs
