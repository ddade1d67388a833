#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "garchs/model.hpp"
#include "garchs/rng.hpp"
#include "garchs/series.hpp"

namespace garchs {

enum class Innovation { GramCharlier, Gaussian };

/// Everything that determines a generated path. Identical configs yield
/// bit-identical paths; the RNG algorithm is pinned by name so that
/// promise survives toolchain changes.
struct SimConfig {
    GarchSParams params;
    Eigen::Index n = 1000;
    Eigen::Index burn_in = 500;
    std::uint64_t seed = 1;
    Innovation innovation = Innovation::GramCharlier;

    static constexpr const char* kRngAlgorithm = "splitmix64";

    void validate() const; // n >= 1, burn_in >= 0, params valid
};

/// Rejection-sampling envelope sup over eta of f(eta; s) / g(eta) for the
/// N(0, 4) proposal g, computed on a grid over [-12, 12] with step 1e-3 and
/// inflated by 1%. Valid for every finite s (the ratio's maximiser always
/// lies inside the grid); throws only if s is not finite.
double skewed_proposal_envelope(double s);

/// One exact draw from the skewed innovation density f(eta; s) by
/// accept-reject against the N(0, 4) proposal. The envelope must come from
/// skewed_proposal_envelope(s). If attempts is given it is incremented
/// once per proposal, accepted or not.
double sample_eta(double s, double envelope, SplitMix64& rng, std::uint64_t* attempts = nullptr);

/// Convenience overload that computes the envelope itself.
double sample_eta(double s, SplitMix64& rng);

/// A generated path with its internal states exposed; entry t of eps, h,
/// eta and s belongs to returns entry t.
struct SimulatedPath {
    DatedSeries returns;
    Eigen::VectorXd eps;
    Eigen::VectorXd h;
    Eigen::VectorXd eta;
    Eigen::VectorXd s;
};

/// Runs the model recursions forward from the unconditional state
/// (h = alpha0/(1 - alpha1 - alpha2), s = beta0/(1 - beta2)), drawing
/// innovations from the configured law, discarding the burn-in prefix and
/// attaching synthetic consecutive dates. The recorded eta is the
/// re-standardized eps/sqrt(h), so filtering the returns with the true
/// parameters from the recorded initial state reproduces every path
/// bit for bit.
SimulatedPath simulate_path_full(const SimConfig& config);

/// Just the returns of simulate_path_full.
DatedSeries simulate_path(const SimConfig& config);

} // namespace garchs
