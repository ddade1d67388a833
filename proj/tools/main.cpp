#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "garchs/adf.hpp"
#include "garchs/csv.hpp"
#include "garchs/fit.hpp"
#include "garchs/pipeline.hpp"
#include "garchs/regression.hpp"
#include "garchs/report.hpp"
#include "garchs/simulate.hpp"
#include "garchs/stats.hpp"

namespace {

using namespace garchs;

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// ---- fit ----

struct FitOpts {
    std::string prices;
    std::string date_col = "date";
    std::string value_col;
    std::string out_dir = ".";
};

int run_fit(const FitOpts& opt) {
    const DatedSeries prices = load_csv(opt.prices, opt.date_col, opt.value_col).series.renamed("");
    const DatedSeries r = log_return(prices);
    const GarchSFit g11 = fit_garch11(r);
    const GarchSFit gs = fit_garchs(r);

    std::filesystem::create_directories(opt.out_dir);
    const std::string report = render_fit_report(gs, g11);
    write_text_file(join_path(opt.out_dir, "fit_report.txt"), report);
    write_text_file(join_path(opt.out_dir, "fit_report.csv"), fit_report_csv(gs, g11));
    write_csv(join_path(opt.out_dir, "skew.csv"), conditional_skewness(gs));
    std::cout << report;
    if (!gs.optim.converged || !g11.optim.converged) {
        std::cerr << "warning: optimizer did not converge (" << gs.optim.termination_reason
                  << ")\n";
        return 2;
    }
    return 0;
}

// ---- pipeline ----

struct PipeOpts {
    std::string prices;
    std::string cases;
    std::string epu;
    std::string emu;
    std::string emv_id;
    std::string date_col = "date";
    std::string value_col;
    std::string cutoff = "2020-01-21";
    int max_p = 3;
    int max_q = 3;
    std::string criterion = "both";
    std::string out_dir = ".";
};

int run_pipeline_cmd(const PipeOpts& opt) {
    PipelineConfig cfg;
    cfg.prices = {opt.prices, opt.value_col};
    cfg.cases = {opt.cases, ""};
    cfg.epu = {opt.epu, ""};
    if (!opt.emu.empty()) cfg.emu = PipelineInput{opt.emu, ""};
    if (!opt.emv_id.empty()) cfg.emv_id = PipelineInput{opt.emv_id, ""};
    cfg.date_column = opt.date_col;
    cfg.cutoff = Date::parse(opt.cutoff);
    cfg.max_p = opt.max_p;
    cfg.max_q = opt.max_q;
    cfg.criterion = opt.criterion;
    cfg.out_dir = opt.out_dir;

    const PipelineResult res = run_pipeline(cfg);
    std::cout << "wrote " << res.files.size() << " files to " << cfg.out_dir << " ("
              << res.aligned_rows << " aligned observations)\n";
    if (!res.fit_converged) {
        std::cerr << "warning: return-model optimizer did not converge\n";
        return 2;
    }
    return 0;
}

// ---- regress ----

struct RegressOpts {
    std::string data;
    std::string spec;
    std::string date_col = "date";
    std::string out_dir;
};

Term parse_term(const std::string& raw, const std::string& dependent) {
    std::string token = trim(raw);
    if (token.empty()) throw std::runtime_error("empty term in spec");
    if (token == "intercept" || token == "Intercept") return Term::intercept();
    if (token == "lagged_dep" || token == dependent + "(-1)") return Term::lagged_dep();

    std::string dummy;
    const auto star = token.find('*');
    if (star != std::string::npos) {
        dummy = trim(token.substr(0, star));
        token = trim(token.substr(star + 1));
        if (dummy.empty() || token.empty())
            throw std::runtime_error("cannot parse interaction term \"" + raw + "\"");
    }
    std::string name = token;
    int lag = 0;
    const auto paren = token.find("(-");
    if (paren != std::string::npos) {
        if (token.back() != ')')
            throw std::runtime_error("cannot parse term \"" + raw + "\"");
        name = trim(token.substr(0, paren));
        const std::string digits = token.substr(paren + 2, token.size() - paren - 3);
        try {
            lag = std::stoi(digits);
        } catch (const std::exception&) {
            throw std::runtime_error("cannot parse lag in term \"" + raw + "\"");
        }
    }
    if (name.empty()) throw std::runtime_error("cannot parse term \"" + raw + "\"");
    if (!dummy.empty()) return Term::interaction(dummy, name, lag);
    return Term::var(name, lag);
}

/// Flat key-value spec: "dependent = Skew" and "terms = intercept,
/// Skew(-1), rCases(-1), D_epid, D_epid*rEPU". Lines starting with # are
/// comments.
RegressionSpec load_regression_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string dependent;
    std::string terms_line;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ": expected key = value, got \"" + line + "\"");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "dependent")
            dependent = value;
        else if (key == "terms")
            terms_line = value;
        else
            throw std::runtime_error(path + ": unknown key \"" + key + "\"");
    }
    if (dependent.empty()) throw std::runtime_error(path + ": missing \"dependent\"");
    if (terms_line.empty()) throw std::runtime_error(path + ": missing \"terms\"");

    RegressionSpec spec;
    spec.dependent = dependent;
    std::size_t pos = 0;
    while (pos <= terms_line.size()) {
        const auto comma = terms_line.find(',', pos);
        const std::string token =
            terms_line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        spec.terms.push_back(parse_term(token, dependent));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    spec.validate();
    return spec;
}

int run_regress(const RegressOpts& opt) {
    const AlignedTable table = load_table_csv(opt.data, opt.date_col);
    const RegressionSpec spec = load_regression_spec(opt.spec);
    const RegressionResult res = ols(spec, table);
    const std::vector<LabeledRegression> cols{{"(1)", res}};
    const std::string txt = render_regression_table("Least-squares estimates", spec.dependent, cols);
    std::cout << txt;
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        write_text_file(join_path(opt.out_dir, "regress.txt"), txt);
        write_text_file(join_path(opt.out_dir, "regress.csv"), regression_csv(spec.dependent, cols));
    }
    return 0;
}

// ---- adf ----

struct AdfOpts {
    std::string data;
    std::string date_col = "date";
    std::string value_col;
    int max_lags = -1;
};

int run_adf(const AdfOpts& opt) {
    const DatedSeries s = load_csv(opt.data, opt.date_col, opt.value_col).series;
    const int max_lags = opt.max_lags >= 0 ? opt.max_lags : default_adf_max_lags(s.size());
    const AdfResult res = adf_test(s, max_lags);
    std::cout << "ADF t-statistic for " << s.name() << ": " << format_fixed(res.stat) << res.stars
              << " (augmentation lags " << res.lags << ", N " << res.n_obs << ")\n"
              << "Critical values (constant only): 1% -3.43, 5% -2.86, 10% -2.57\n";
    return 0;
}

// ---- describe ----

struct DescribeOpts {
    std::string data;
    std::string date_col = "date";
    std::string value_col;
};

int run_describe(const DescribeOpts& opt) {
    const DatedSeries s = load_csv(opt.data, opt.date_col, opt.value_col).series;
    const DescribeResult d = describe(s.values());
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Series", "Mean", "Min", "Max", "Std. Dev.", "N"});
    rows.push_back({s.name(), format_fixed(d.mean), format_fixed(d.min), format_fixed(d.max),
                    format_fixed(d.std_dev), std::to_string(d.n)});
    std::cout << render_columns(rows);
    return 0;
}

// ---- corr ----

struct CorrOpts {
    std::string data;
    std::string date_col = "date";
};

int run_corr(const CorrOpts& opt) {
    const AlignedTable table = load_table_csv(opt.data, opt.date_col);
    std::cout << render_corr_panel("Pairwise correlations", table)
              << "Notes: ***, ** and * denote significance at the 1%, 5% and 10% levels.\n";
    return 0;
}

// ---- simulate ----

struct SimOpts {
    double mu = 0.0;
    double alpha0 = 1e-5;
    double alpha1 = 0.05;
    double alpha2 = 0.90;
    double beta0 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    std::int64_t n = 500;
    std::int64_t burn_in = 500;
    std::uint64_t seed = 1;
    std::string innovation = "gc";
    std::string out;
    bool full = false;
};

int run_simulate(const SimOpts& opt) {
    SimConfig cfg;
    cfg.params = GarchSParams{opt.mu,    opt.alpha0, opt.alpha1, opt.alpha2,
                              opt.beta0, opt.beta1,  opt.beta2};
    cfg.n = opt.n;
    cfg.burn_in = opt.burn_in;
    cfg.seed = opt.seed;
    cfg.innovation = opt.innovation == "gaussian" ? Innovation::Gaussian
                                                  : Innovation::GramCharlier;

    const SimulatedPath path = simulate_path_full(cfg);
    if (opt.full) {
        AlignedTable table;
        table.dates = path.returns.dates();
        table.names = {"r", "eps", "h", "eta", "s"};
        table.values.resize(path.returns.size(), 5);
        table.values.col(0) = path.returns.values();
        table.values.col(1) = path.eps;
        table.values.col(2) = path.h;
        table.values.col(3) = path.eta;
        table.values.col(4) = path.s;
        table.dropped.assign(5, 0);
        if (opt.out.empty()) {
            std::cout << "date,r,eps,h,eta,s\n";
            char buf[40];
            for (Eigen::Index i = 0; i < table.rows(); ++i) {
                std::cout << table.dates[static_cast<std::size_t>(i)].to_string();
                for (Eigen::Index j = 0; j < 5; ++j) {
                    std::snprintf(buf, sizeof buf, "%.17g", table.values(i, j));
                    std::cout << ',' << buf;
                }
                std::cout << '\n';
            }
        } else {
            write_table_csv(opt.out, table);
        }
    } else {
        if (opt.out.empty()) {
            std::cout << "date,r\n";
            char buf[40];
            for (Eigen::Index i = 0; i < path.returns.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g", path.returns.values()[i]);
                std::cout << path.returns.dates()[static_cast<std::size_t>(i)].to_string() << ','
                          << buf << '\n';
            }
        } else {
            write_csv(opt.out, path.returns);
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditional-skewness toolkit for daily return series"};
    app.require_subcommand(1);

    FitOpts fit_opt;
    auto* fit_cmd = app.add_subcommand(
        "fit", "Fit the skewed and Gaussian return models; write report and skew series");
    fit_cmd->add_option("--prices", fit_opt.prices, "Price CSV")->required();
    fit_cmd->add_option("--date-col", fit_opt.date_col, "Date column name");
    fit_cmd->add_option("--value-col", fit_opt.value_col,
                        "Value column (default: first non-date column)");
    fit_cmd->add_option("--out-dir", fit_opt.out_dir, "Output directory");
    fit_cmd->set_config("--config");

    PipeOpts pipe_opt;
    auto* pipe_cmd = app.add_subcommand(
        "pipeline", "Full study: fit, skew series, descriptives, correlations, regressions");
    pipe_cmd->add_option("--prices", pipe_opt.prices, "Price CSV")->required();
    pipe_cmd->add_option("--cases", pipe_opt.cases, "Daily case count CSV")->required();
    pipe_cmd->add_option("--epu", pipe_opt.epu, "Policy uncertainty index CSV")->required();
    pipe_cmd->add_option("--emu", pipe_opt.emu, "Alternative uncertainty index CSV (optional)");
    pipe_cmd->add_option("--emv-id", pipe_opt.emv_id,
                         "Second alternative uncertainty index CSV (optional)");
    pipe_cmd->add_option("--date-col", pipe_opt.date_col, "Date column name for every input");
    pipe_cmd->add_option("--value-col", pipe_opt.value_col,
                         "Value column of the price file (default: first non-date column)");
    pipe_cmd->add_option("--cutoff", pipe_opt.cutoff, "Regime cutoff date (dummy = 1 from here)");
    pipe_cmd->add_option("--max-p", pipe_opt.max_p, "Largest case-growth lag searched")
        ->check(CLI::Range(1, 24));
    pipe_cmd->add_option("--max-q", pipe_opt.max_q, "Largest uncertainty lag searched")
        ->check(CLI::Range(0, 24));
    pipe_cmd->add_option("--criterion", pipe_opt.criterion, "Lag selection: aic, sc or both")
        ->check(CLI::IsMember({"aic", "sc", "both"}));
    pipe_cmd->add_option("--out-dir", pipe_opt.out_dir, "Output directory");
    pipe_cmd->set_config("--config");

    RegressOpts reg_opt;
    auto* reg_cmd =
        app.add_subcommand("regress", "Least-squares fit of a spec file on an aligned table CSV");
    reg_cmd->add_option("--data", reg_opt.data, "Aligned table CSV")->required();
    reg_cmd->add_option("--spec", reg_opt.spec, "Regression spec file")->required();
    reg_cmd->add_option("--date-col", reg_opt.date_col, "Date column name");
    reg_cmd->add_option("--out-dir", reg_opt.out_dir, "Also write regress.txt/csv here");
    reg_cmd->set_config("--config");

    AdfOpts adf_opt;
    auto* adf_cmd = app.add_subcommand("adf", "Unit-root test for one series");
    adf_cmd->add_option("--data", adf_opt.data, "Series CSV")->required();
    adf_cmd->add_option("--date-col", adf_opt.date_col, "Date column name");
    adf_cmd->add_option("--value-col", adf_opt.value_col,
                        "Value column (default: first non-date column)");
    adf_cmd->add_option("--max-lags", adf_opt.max_lags,
                        "Augmentation lag ceiling (default 12 (n/100)^0.25)");
    adf_cmd->set_config("--config");

    DescribeOpts desc_opt;
    auto* desc_cmd = app.add_subcommand("describe", "Summary statistics for one series");
    desc_cmd->add_option("--data", desc_opt.data, "Series CSV")->required();
    desc_cmd->add_option("--date-col", desc_opt.date_col, "Date column name");
    desc_cmd->add_option("--value-col", desc_opt.value_col,
                         "Value column (default: first non-date column)");
    desc_cmd->set_config("--config");

    CorrOpts corr_opt;
    auto* corr_cmd = app.add_subcommand("corr", "Correlation matrix of an aligned table CSV");
    corr_cmd->add_option("--data", corr_opt.data, "Aligned table CSV")->required();
    corr_cmd->add_option("--date-col", corr_opt.date_col, "Date column name");
    corr_cmd->set_config("--config");

    SimOpts sim_opt;
    auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic return path");
    sim_cmd->add_option("--mu", sim_opt.mu, "Return autoregression coefficient");
    sim_cmd->add_option("--alpha0", sim_opt.alpha0, "Variance constant");
    sim_cmd->add_option("--alpha1", sim_opt.alpha1, "Squared-shock coefficient");
    sim_cmd->add_option("--alpha2", sim_opt.alpha2, "Variance persistence");
    sim_cmd->add_option("--beta0", sim_opt.beta0, "Skewness constant");
    sim_cmd->add_option("--beta1", sim_opt.beta1, "Cubed-innovation coefficient");
    sim_cmd->add_option("--beta2", sim_opt.beta2, "Skewness persistence");
    sim_cmd->add_option("--n", sim_opt.n, "Path length after burn-in")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--burn-in", sim_opt.burn_in, "Discarded prefix length")
        ->check(CLI::NonNegativeNumber);
    sim_cmd->add_option("--seed", sim_opt.seed, "RNG seed");
    sim_cmd->add_option("--innovation", sim_opt.innovation, "Innovation law: gc or gaussian")
        ->check(CLI::IsMember({"gc", "gaussian"}));
    sim_cmd->add_option("--out", sim_opt.out, "Output CSV (default: stdout)");
    sim_cmd->add_flag("--full", sim_opt.full, "Also write eps, h, eta and s columns");
    sim_cmd->set_config("--config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (fit_cmd->parsed()) return run_fit(fit_opt);
        if (pipe_cmd->parsed()) return run_pipeline_cmd(pipe_opt);
        if (reg_cmd->parsed()) return run_regress(reg_opt);
        if (adf_cmd->parsed()) return run_adf(adf_opt);
        if (desc_cmd->parsed()) return run_describe(desc_opt);
        if (corr_cmd->parsed()) return run_corr(corr_opt);
        if (sim_cmd->parsed()) return run_simulate(sim_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "error: no command\n";
    return 1;
}
