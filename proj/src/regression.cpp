#include "garchs/regression.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "garchs/special_functions.hpp"
#include "garchs/stats.hpp"

namespace garchs {

std::string Term::label(const std::string& dependent) const {
    switch (kind) {
        case Kind::Intercept:
            return "Intercept";
        case Kind::LaggedDep:
            return dependent + "(-1)";
        case Kind::Var:
            return lag > 0 ? name + "(-" + std::to_string(lag) + ")" : name;
        case Kind::Interaction: {
            const std::string base = lag > 0 ? name + "(-" + std::to_string(lag) + ")" : name;
            return dummy_name + "*" + base;
        }
    }
    return "?";
}

void RegressionSpec::validate() const {
    if (dependent.empty()) throw std::invalid_argument("regression has no dependent variable");
    if (terms.empty()) throw std::invalid_argument("regression has no regressors");
    int intercepts = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].kind == Term::Kind::Intercept) ++intercepts;
        if (terms[i].lag < 0)
            throw std::invalid_argument("term " + terms[i].label(dependent) + " has a negative lag");
        for (std::size_t j = i + 1; j < terms.size(); ++j)
            if (terms[i] == terms[j])
                throw std::invalid_argument("duplicate term " + terms[i].label(dependent));
    }
    if (intercepts > 1) throw std::invalid_argument("more than one intercept term");
}

const CoefficientEstimate& RegressionResult::coefficient(const Term& term) const {
    for (const auto& c : coefficients)
        if (c.term == term) return c;
    throw std::invalid_argument("regression has no term " + term.label(""));
}

namespace {

int max_required_lag(const RegressionSpec& spec) {
    int m = 0;
    for (const auto& t : spec.terms) m = std::max(m, t.required_lag());
    return m;
}

// Fits the spec using rows offset..N-1 of the table. offset must be at
// least the largest lag any term needs.
RegressionResult fit_with_offset(const RegressionSpec& spec, const AlignedTable& data, int offset) {
    spec.validate();
    const Eigen::Index big_n = data.rows();
    const Eigen::Index n = big_n - offset;
    const Eigen::Index k = static_cast<Eigen::Index>(spec.terms.size());
    if (n <= k)
        throw std::invalid_argument("regression on " + spec.dependent + ": " + std::to_string(n) +
                                    " observations for " + std::to_string(k) + " terms");

    const Eigen::VectorXd dep = data.column(spec.dependent);
    Eigen::VectorXd y = dep.segment(offset, n);
    Eigen::MatrixXd x(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const Term& term = spec.terms[static_cast<std::size_t>(j)];
        switch (term.kind) {
            case Term::Kind::Intercept:
                x.col(j).setOnes();
                break;
            case Term::Kind::LaggedDep:
                x.col(j) = dep.segment(offset - 1, n);
                break;
            case Term::Kind::Var:
                x.col(j) = data.column(term.name).segment(offset - term.lag, n);
                break;
            case Term::Kind::Interaction:
                x.col(j) = data.column(term.dummy_name)
                               .segment(offset, n)
                               .cwiseProduct(data.column(term.name).segment(offset - term.lag, n));
                break;
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        // The permutation sorts independent columns first; the tail names
        // the collinear ones.
        std::string names;
        const auto perm = qr.colsPermutation().indices();
        for (Eigen::Index j = qr.rank(); j < k; ++j) {
            if (!names.empty()) names += ", ";
            names += spec.terms[static_cast<std::size_t>(perm[j])].label(spec.dependent);
        }
        throw std::runtime_error("regression on " + spec.dependent + ": collinear terms: " + names);
    }

    RegressionResult res;
    const Eigen::VectorXd beta = qr.solve(y);
    res.residuals = y - x * beta;
    const double ssr = res.residuals.squaredNorm();
    const double sigma2 = ssr / static_cast<double>(n - k);
    const Eigen::MatrixXd xtx_inv =
        (x.transpose() * x).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    res.coef_cov = sigma2 * xtx_inv;

    const bool has_intercept =
        std::any_of(spec.terms.begin(), spec.terms.end(),
                    [](const Term& t) { return t.kind == Term::Kind::Intercept; });
    const double tss =
        has_intercept ? (y.array() - y.mean()).square().sum() : y.squaredNorm();
    res.r2 = tss > 0.0 ? 1.0 - ssr / tss : (ssr == 0.0 ? 1.0 : 0.0);
    res.adj_r2 =
        1.0 - (1.0 - res.r2) * static_cast<double>(n - 1) / static_cast<double>(n - k);
    res.n_obs = n;

    const double dn = static_cast<double>(n);
    const double loglik = -0.5 * dn * (std::log(2.0 * M_PI) + std::log(ssr / dn) + 1.0);
    const InfoCriteria ic = info_criteria(loglik, static_cast<int>(k), n);
    res.aic = ic.aic;
    res.sc = ic.sc;
    res.hq = ic.hq;

    const double df = static_cast<double>(n - k);
    for (Eigen::Index j = 0; j < k; ++j) {
        CoefficientEstimate c;
        c.term = spec.terms[static_cast<std::size_t>(j)];
        c.estimate = beta[j];
        c.stderr_value = std::sqrt(res.coef_cov(j, j));
        c.tstat = c.estimate / c.stderr_value;
        c.pvalue = student_t_two_sided_p(c.tstat, df);
        res.coefficients.push_back(std::move(c));
    }

    res.sample_dates.assign(data.dates.begin() + offset, data.dates.end());
    return res;
}

RegressionSpec build_pq_spec(const LagSearchSpec& scope, int p, int q) {
    RegressionSpec spec;
    spec.dependent = scope.dependent;
    if (scope.intercept) spec.terms.push_back(Term::intercept());
    if (scope.lagged_dep) spec.terms.push_back(Term::lagged_dep());
    for (int i = 1; i <= p; ++i) spec.terms.push_back(Term::var(scope.p_var, i));
    if (!scope.q_var.empty())
        for (int j = 0; j <= q; ++j) spec.terms.push_back(Term::var(scope.q_var, j));
    return spec;
}

} // namespace

RegressionResult ols(const RegressionSpec& spec, const AlignedTable& data) {
    return fit_with_offset(spec, data, max_required_lag(spec));
}

LagSearchResult lag_search(const LagSearchSpec& scope, int max_p, int max_q, Criterion criterion,
                           const AlignedTable& data) {
    if (max_p < 1) throw std::invalid_argument("lag_search needs max_p >= 1");
    if (max_q < 0) throw std::invalid_argument("lag_search needs max_q >= 0");
    const bool has_q = !scope.q_var.empty();

    // Candidates ordered by p+q then p, so selecting the first strict
    // minimum settles criterion ties toward the smaller model.
    std::vector<std::pair<int, int>> candidates;
    for (int p = 1; p <= max_p; ++p) {
        if (has_q)
            for (int q = 0; q <= max_q; ++q) candidates.emplace_back(p, q);
        else
            candidates.emplace_back(p, 0);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.first + a.second != b.first + b.second)
            return a.first + a.second < b.first + b.second;
        return a.first < b.first;
    });

    const int common_offset = std::max({scope.lagged_dep ? 1 : 0, max_p, has_q ? max_q : 0});
    bool found = false;
    double best_value = 0.0;
    std::pair<int, int> best_pq{0, 0};
    std::string last_error = "no candidates";
    for (const auto& [p, q] : candidates) {
        try {
            const RegressionResult fit =
                fit_with_offset(build_pq_spec(scope, p, q), data, common_offset);
            const double value = criterion == Criterion::AIC ? fit.aic : fit.sc;
            if (!found || value < best_value) {
                found = true;
                best_value = value;
                best_pq = {p, q};
            }
        } catch (const std::exception& e) {
            last_error = e.what();
        }
    }
    if (!found) throw std::runtime_error("lag_search: every candidate failed: " + last_error);

    LagSearchResult out;
    out.p = best_pq.first;
    out.q = has_q ? best_pq.second : 0;
    out.spec = build_pq_spec(scope, out.p, out.q);
    out.fit = ols(out.spec, data);
    return out;
}

SplitCoefficient split_coefficient(const RegressionResult& result, const std::string& dummy_name,
                                   const std::string& var_name, int lag) {
    const Term var_term = Term::var(var_name, lag);
    const Term inter_term = Term::interaction(dummy_name, var_name, lag);

    Eigen::Index var_idx = -1, inter_idx = -1;
    for (std::size_t j = 0; j < result.coefficients.size(); ++j) {
        if (result.coefficients[j].term == var_term) var_idx = static_cast<Eigen::Index>(j);
        if (result.coefficients[j].term == inter_term) inter_idx = static_cast<Eigen::Index>(j);
    }
    if (var_idx < 0)
        throw std::invalid_argument("split_coefficient: regression lacks term " +
                                    var_term.label(""));
    if (inter_idx < 0)
        throw std::invalid_argument("split_coefficient: regression lacks term " +
                                    inter_term.label(""));

    SplitCoefficient out;
    const double lambda = result.coefficients[static_cast<std::size_t>(var_idx)].estimate;
    const double theta = result.coefficients[static_cast<std::size_t>(inter_idx)].estimate;
    out.pre_period_effect = lambda;
    out.regime_effect = lambda + theta;
    const double variance = result.coef_cov(var_idx, var_idx) +
                            result.coef_cov(inter_idx, inter_idx) +
                            2.0 * result.coef_cov(var_idx, inter_idx);
    out.regime_stderr = std::sqrt(std::max(variance, 0.0));
    out.regime_tstat = out.regime_effect / out.regime_stderr;
    return out;
}

} // namespace garchs
