#include "garchs/param_transform.hpp"

#include <cmath>
#include <stdexcept>

namespace garchs {

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double logit(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("logit argument must be in (0, 1)");
    return std::log(p / (1.0 - p));
}

} // namespace

Eigen::VectorXd to_unconstrained(const GarchSParams& params) {
    params.validate();
    const double pers = params.alpha1 + params.alpha2;
    if (!(params.alpha1 > 0.0) || !(params.alpha2 > 0.0))
        throw std::invalid_argument(
            "unconstrained mapping needs alpha1 > 0 and alpha2 > 0 (interior point)");
    Eigen::VectorXd u(7);
    u << std::atanh(params.mu), std::log(params.alpha0), logit(pers), logit(params.alpha1 / pers),
        params.beta0, params.beta1, std::atanh(params.beta2);
    return u;
}

GarchSParams to_constrained(const Eigen::VectorXd& u) {
    if (u.size() != 7) throw std::invalid_argument("parameter vector must have 7 entries");
    const double pers = logistic(u[2]);
    const double share = logistic(u[3]);
    GarchSParams p;
    p.mu = std::tanh(u[0]);
    p.alpha0 = std::exp(u[1]);
    p.alpha1 = pers * share;
    p.alpha2 = pers * (1.0 - share);
    p.beta0 = u[4];
    p.beta1 = u[5];
    p.beta2 = std::tanh(u[6]);
    return p;
}

Eigen::MatrixXd constrained_jacobian(const Eigen::VectorXd& u) {
    if (u.size() != 7) throw std::invalid_argument("parameter vector must have 7 entries");
    const double pers = logistic(u[2]);
    const double share = logistic(u[3]);
    const double dpers = pers * (1.0 - pers);
    const double dshare = share * (1.0 - share);
    const double sech0 = 1.0 - std::tanh(u[0]) * std::tanh(u[0]);
    const double sech6 = 1.0 - std::tanh(u[6]) * std::tanh(u[6]);

    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(7, 7);
    j(0, 0) = sech0;
    j(1, 1) = std::exp(u[1]);
    j(2, 2) = dpers * share;
    j(2, 3) = pers * dshare;
    j(3, 2) = dpers * (1.0 - share);
    j(3, 3) = -pers * dshare;
    j(4, 4) = 1.0;
    j(5, 5) = 1.0;
    j(6, 6) = sech6;
    return j;
}

} // namespace garchs
