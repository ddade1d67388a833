#include "garchs/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace garchs {

namespace {

// f(eta; s) / g(eta) for the N(0, 4) proposal g: the 1/2-variance ratio of
// exponents leaves sigma * psi^2 / Gamma * exp(-eta^2 (1 - 1/sigma^2) / 2).
double proposal_ratio(double eta, double s) {
    const double psi = 1.0 + (s / 6.0) * (eta * eta * eta - 3.0 * eta);
    const double gamma = 1.0 + s * s / 6.0;
    return 2.0 * (psi * psi / gamma) * std::exp(-0.375 * eta * eta);
}

// The grid ratio factors as weight(eta) * (1 + s * he3_sixth(eta))^2 / Gamma,
// so the eta-dependent pieces are tabulated once and an envelope evaluation
// costs one pass of multiply-adds instead of 24001 exponentials.
struct EnvelopeTables {
    std::vector<double> weight;    // 2 exp(-3 eta^2 / 8)
    std::vector<double> he3_sixth; // (eta^3 - 3 eta) / 6
};

const EnvelopeTables& envelope_tables() {
    static const EnvelopeTables tables = [] {
        EnvelopeTables t;
        for (double eta = -12.0; eta <= 12.0; eta += 1e-3) {
            t.weight.push_back(2.0 * std::exp(-0.375 * eta * eta));
            t.he3_sixth.push_back((eta * eta * eta - 3.0 * eta) / 6.0);
        }
        return t;
    }();
    return tables;
}

} // namespace

void SimConfig::validate() const {
    params.validate();
    if (n < 1) throw std::invalid_argument("simulation length must be at least 1");
    if (burn_in < 0) throw std::invalid_argument("burn-in must be non-negative");
}

double skewed_proposal_envelope(double s) {
    if (!std::isfinite(s))
        throw std::invalid_argument("sampling requires finite skewness, got " + std::to_string(s));
    // The grid bracket holds for every finite s: each term of the ratio is a
    // power of eta times exp(-3 eta^2 / 8), whose maximiser satisfies
    // eta^2 <= 24, so the supremum over eta always lies well inside [-12, 12].
    const EnvelopeTables& t = envelope_tables();
    double m = 0.0;
    for (std::size_t i = 0; i < t.weight.size(); ++i) {
        const double lin = 1.0 + s * t.he3_sixth[i];
        const double r = t.weight[i] * lin * lin;
        if (r > m) m = r;
    }
    return m / (1.0 + s * s / 6.0) * 1.01;
}

double sample_eta(double s, double envelope, SplitMix64& rng, std::uint64_t* attempts) {
    while (true) {
        const double eta = 2.0 * rng.normal();
        const double u = rng.uniform();
        if (attempts) ++*attempts;
        if (u * envelope <= proposal_ratio(eta, s)) return eta;
    }
}

double sample_eta(double s, SplitMix64& rng) {
    return sample_eta(s, skewed_proposal_envelope(s), rng);
}

SimulatedPath simulate_path_full(const SimConfig& config) {
    config.validate();
    const GarchSParams& p = config.params;
    const Eigen::Index total = config.n + config.burn_in;

    SplitMix64 rng(config.seed);
    double h = p.alpha0 / (1.0 - p.alpha1 - p.alpha2);
    double s = p.beta0 / (1.0 - p.beta2);
    double r_prev = 0.0;

    Eigen::VectorXd returns(config.n), eps_path(config.n), h_path(config.n), eta_path(config.n),
        s_path(config.n);

    for (Eigen::Index t = 0; t < total; ++t) {
        const double draw = config.innovation == Innovation::GramCharlier
                                ? sample_eta(s, skewed_proposal_envelope(s), rng)
                                : rng.normal();
        const double sqrt_h = std::sqrt(h);
        const double eps = sqrt_h * draw;
        // Recording eps / sqrt(h) instead of the raw draw makes the stored
        // eta exactly what a filter recovers from the returns.
        const double eta = eps / sqrt_h;
        const double r = p.mu * r_prev + eps;
        const Eigen::Index i = t - config.burn_in;
        if (i >= 0) {
            returns[i] = r;
            eps_path[i] = eps;
            h_path[i] = h;
            eta_path[i] = eta;
            s_path[i] = s;
        }
        h = variance_step(p, eps, h);
        s = skew_step(p, eta, s);
        r_prev = r;
    }

    std::vector<Date> dates;
    dates.reserve(static_cast<std::size_t>(config.n));
    const Date start(2000, 1, 3);
    for (Eigen::Index i = 0; i < config.n; ++i) dates.push_back(start.plus_days(static_cast<int>(i)));
    return {DatedSeries(std::move(dates), std::move(returns), "r"), std::move(eps_path),
            std::move(h_path), std::move(eta_path), std::move(s_path)};
}

DatedSeries simulate_path(const SimConfig& config) { return simulate_path_full(config).returns; }

} // namespace garchs
