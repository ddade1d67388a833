#include "garchs/pipeline.hpp"

#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "garchs/adf.hpp"
#include "garchs/csv.hpp"
#include "garchs/fit.hpp"
#include "garchs/regression.hpp"
#include "garchs/report.hpp"
#include "garchs/stats.hpp"

namespace garchs {

namespace {

DatedSeries load_named(const PipelineInput& input, const std::string& date_column,
                       const std::string& name) {
    return load_csv(input.path, date_column, input.value_column).series.renamed(name);
}

std::string spec_description(const RegressionSpec& spec) {
    std::string out = spec.dependent + " ~ ";
    for (std::size_t i = 0; i < spec.terms.size(); ++i) {
        if (i) out += " + ";
        out += spec.terms[i].label(spec.dependent);
    }
    return out;
}

/// The study's regression shapes: Skew on an intercept, its own lag,
/// lags 1..p of case growth, lags 0..q of the uncertainty variable, and
/// optionally the regime dummy plus its interactions with the variable.
/// p = 0 drops the case-growth block; q = -1 drops the variable block.
RegressionSpec study_spec(const std::string& var, int p, int q, bool regime) {
    RegressionSpec spec;
    spec.dependent = "Skew";
    spec.terms.push_back(Term::intercept());
    if (regime) spec.terms.push_back(Term::var("D_epid", 0));
    spec.terms.push_back(Term::lagged_dep());
    for (int i = 1; i <= p; ++i) spec.terms.push_back(Term::var("rCases", i));
    for (int j = 0; j <= q; ++j) spec.terms.push_back(Term::var(var, j));
    if (regime)
        for (int j = 0; j <= q; ++j) spec.terms.push_back(Term::interaction("D_epid", var, j));
    spec.validate();
    return spec;
}

RegressionResult run_ols(const RegressionSpec& spec, const AlignedTable& data,
                         const std::string& where) {
    try {
        return ols(spec, data);
    } catch (const std::exception& e) {
        throw std::runtime_error(where + " [" + spec_description(spec) + "]: " + e.what());
    }
}

std::string date_range(const AlignedTable& table) {
    if (table.rows() == 0) return "empty";
    return table.dates.front().to_string() + " to " + table.dates.back().to_string();
}

} // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
    if (config.max_p < 1) throw std::invalid_argument("max_p must be >= 1");
    if (config.max_q < 0) throw std::invalid_argument("max_q must be >= 0");
    if (config.criterion != "aic" && config.criterion != "sc" && config.criterion != "both")
        throw std::invalid_argument("criterion must be aic, sc or both");

    std::filesystem::create_directories(config.out_dir);
    PipelineResult result;
    auto out_path = [&](const std::string& name) {
        return (std::filesystem::path(config.out_dir) / name).string();
    };
    auto write = [&](const std::string& name, const std::string& content) {
        const std::string path = out_path(name);
        write_text_file(path, content);
        result.files.push_back(path);
    };

    // Inputs and transforms.
    const DatedSeries prices = load_named(config.prices, config.date_column, "");
    const DatedSeries r = log_return(prices);
    const DatedSeries r_cases = log_growth(load_named(config.cases, config.date_column, "Cases"));
    const DatedSeries r_epu =
        log_change_zero_guard(load_named(config.epu, config.date_column, "EPU"));
    std::optional<DatedSeries> r_emu;
    std::optional<DatedSeries> r_emv;
    if (config.emu)
        r_emu = log_change_zero_guard(load_named(*config.emu, config.date_column, "EMU"));
    if (config.emv_id)
        r_emv = log_change_zero_guard(load_named(*config.emv_id, config.date_column, "EMV_ID"));

    // Return model and the skew series.
    const GarchSFit g11 = fit_garch11(r);
    const GarchSFit gs = fit_garchs(r);
    result.fit_converged = gs.optim.converged;
    const DatedSeries skew = conditional_skewness(gs);

    write("fit_report.txt", render_fit_report(gs, g11));
    write("fit_report.csv", fit_report_csv(gs, g11));
    write_csv(out_path("skew.csv"), skew);
    result.files.push_back(out_path("skew.csv"));

    // Common estimation sample.
    std::vector<DatedSeries> inputs{r, skew, r_cases, r_epu};
    if (r_emu) inputs.push_back(*r_emu);
    if (r_emv) inputs.push_back(*r_emv);
    AlignedTable table = align(inputs);
    table = append_column(table, dummy(table.dates, config.cutoff, "D_epid"));
    result.aligned_rows = table.rows();
    write_table_csv(out_path("aligned.csv"), table);
    result.files.push_back(out_path("aligned.csv"));

    // Descriptive statistics and unit-root tests.
    {
        std::vector<std::string> vars{"r", "Skew", "rCases", "rEPU"};
        if (r_emu) vars.push_back("rEMU");
        if (r_emv) vars.push_back("rEMV_ID");
        const int max_lags = default_adf_max_lags(table.rows());
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"Variable", "Mean", "Min", "Max", "Std. Dev.", "ADF"});
        std::ostringstream csv;
        csv << "variable,mean,min,max,std,adf_stat,adf_stars,adf_lags,n\n";
        for (const auto& v : vars) {
            const DescribeResult d = describe(table.column(v));
            const AdfResult a = adf_test(table.series(v), max_lags);
            rows.push_back({v, format_fixed(d.mean), format_fixed(d.min), format_fixed(d.max),
                            format_fixed(d.std_dev), format_fixed(a.stat) + a.stars});
            csv << v << ',' << format_full(d.mean) << ',' << format_full(d.min) << ','
                << format_full(d.max) << ',' << format_full(d.std_dev) << ','
                << format_full(a.stat) << ',' << a.stars << ',' << a.lags << ',' << table.rows()
                << '\n';
        }
        std::ostringstream txt;
        txt << "Descriptive statistics and unit-root tests\n"
            << "Sample: " << date_range(table) << '\n'
            << '\n'
            << render_columns(rows) << '\n'
            << "Observations: " << table.rows() << '\n'
            << "Notes: ADF is the unit-root t-statistic with AIC-chosen lags (max " << max_lags
            << "); ***, ** and * denote rejection at the 1%, 5% and 10% levels.\n";
        write("table2.txt", txt.str());
        write("table2.csv", csv.str());
    }

    // Correlations for the whole sample and the two regimes.
    {
        std::vector<std::string> corr_vars{"Skew", "rCases", "rEPU"};
        if (r_emu) corr_vars.push_back("rEMU");
        if (r_emv) corr_vars.push_back("rEMV_ID");
        const AlignedTable whole = select_columns(table, corr_vars);
        const Date end = table.dates.back().plus_days(1);
        const AlignedTable pre = slice_rows(whole, table.dates.front(), config.cutoff);
        const AlignedTable post = slice_rows(whole, config.cutoff, end);

        std::ostringstream txt;
        txt << "Pairwise correlations\n\n";
        txt << render_corr_panel("Panel A: whole sample (" + date_range(whole) + ")", whole)
            << '\n';
        txt << render_corr_panel(
                   "Panel B: before " + config.cutoff.to_string() + " (" + date_range(pre) + ")",
                   pre)
            << '\n';
        txt << render_corr_panel(
            "Panel C: from " + config.cutoff.to_string() + " (" + date_range(post) + ")", post);
        txt << "\nNotes: ***, ** and * denote significance at the 1%, 5% and 10% levels; "
               "N/A marks correlations undefined in the panel.\n";

        std::ostringstream csv;
        csv << "panel,row,col,r,stars,n,available\n";
        corr_panel_csv(csv, "A", whole);
        corr_panel_csv(csv, "B", pre);
        corr_panel_csv(csv, "C", post);
        write("table3.txt", txt.str());
        write("table3.csv", csv.str());
    }

    // Distributed-lag ladder in case growth.
    {
        std::vector<LabeledRegression> cols;
        for (int p = 1; p <= config.max_p; ++p) {
            const RegressionSpec spec = study_spec("", p, -1, false);
            cols.push_back({"(" + std::to_string(p) + ")",
                            run_ols(spec, table, "case-growth ladder column " + std::to_string(p))});
        }
        write("table4.txt", render_regression_table("Skew on lagged case growth", "Skew", cols));
        write("table4.csv", regression_csv("Skew", cols));
    }

    // Distributed-lag ladder in the uncertainty index.
    {
        std::vector<LabeledRegression> cols;
        for (int q = 0; q <= config.max_q; ++q) {
            const RegressionSpec spec = study_spec("rEPU", 0, q, false);
            cols.push_back(
                {"(" + std::to_string(q + 1) + ")",
                 run_ols(spec, table, "uncertainty ladder column " + std::to_string(q + 1))});
        }
        write("table5.txt", render_regression_table("Skew on current and lagged rEPU", "Skew", cols));
        write("table5.csv", regression_csv("Skew", cols));
    }

    // Lag orders selected by the requested criteria. With "both" the AIC
    // choice is reported first, but the later tables lead with the SC
    // orders (the sparser model).
    std::vector<std::pair<std::string, LagSearchResult>> selected;
    {
        const LagSearchSpec scope{"Skew", "rCases", "rEPU", true, true};
        auto search = [&](Criterion criterion, const char* tag) {
            try {
                selected.emplace_back(
                    tag, lag_search(scope, config.max_p, config.max_q, criterion, table));
            } catch (const std::exception& e) {
                throw std::runtime_error(std::string("lag-order search [Skew ~ rCases, rEPU]: ") +
                                         e.what());
            }
        };
        if (config.criterion != "sc") search(Criterion::AIC, "AIC");
        if (config.criterion != "aic") search(Criterion::SC, "SC");

        std::vector<LabeledRegression> cols;
        std::string note = "Selected orders:";
        for (std::size_t i = 0; i < selected.size(); ++i) {
            const auto& [tag, res] = selected[i];
            cols.push_back({"(" + std::to_string(i + 1) + ") " + tag, res.fit});
            note += (i ? "; " : " ") + tag + " p=" + std::to_string(res.p) +
                    ", q=" + std::to_string(res.q);
        }
        std::string txt =
            render_regression_table("Joint model at the selected lag orders", "Skew", cols);
        txt += note + ".\n";
        write("table6.txt", txt);
        write("table6.csv", regression_csv("Skew", cols));
    }

    std::vector<std::pair<int, int>> orders;
    for (const char* tag : {"SC", "AIC"})
        for (const auto& [name, res] : selected)
            if (name == tag) orders.emplace_back(res.p, res.q);

    // Regime dummy and interactions at the selected orders.
    {
        std::vector<LabeledRegression> cols;
        std::string effects;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            const auto [p, q] = orders[i];
            const std::string label = "(" + std::to_string(i + 1) + ")";
            const RegressionSpec spec = study_spec("rEPU", p, q, true);
            RegressionResult res = run_ols(spec, table, "regime model column " + label);
            const SplitCoefficient split = split_coefficient(res, "D_epid", "rEPU", 0);
            effects += "Combined rEPU effect under the regime, column " + label + ": " +
                       format_fixed(split.regime_effect) + " (" +
                       format_fixed(split.regime_tstat) + ")\n";
            cols.push_back({label, std::move(res)});
        }
        std::string txt =
            render_regression_table("Regime dummy and rEPU interactions", "Skew", cols);
        txt += effects;
        write("table7.txt", txt);
        write("table7.csv", regression_csv("Skew", cols));
    }

    // The same models with an alternative uncertainty series.
    auto robustness_table = [&](const std::string& base, const std::string& var) {
        if (!table.has(var)) {
            write(base + ".txt", var + " input not provided; table skipped.\n");
            write(base + ".csv", "column,kind,name,estimate,stderr,tstat,pvalue,stars\n");
            return;
        }
        std::vector<LabeledRegression> cols;
        int n = 0;
        for (const bool regime : {false, true})
            for (const auto& [p, q] : orders) {
                ++n;
                const std::string label = "(" + std::to_string(n) + ")";
                const RegressionSpec spec = study_spec(var, p, q, regime);
                cols.push_back({label, run_ols(spec, table, base + " column " + label)});
            }
        write(base + ".txt",
              render_regression_table("Alternative uncertainty series: " + var, "Skew", cols));
        write(base + ".csv", regression_csv("Skew", cols));
    };
    robustness_table("table8", "rEMU");
    robustness_table("table9", "rEMV_ID");

    return result;
}

} // namespace garchs
