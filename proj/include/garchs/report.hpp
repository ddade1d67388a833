#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "garchs/fit.hpp"
#include "garchs/regression.hpp"
#include "garchs/stats.hpp"

namespace garchs {

/// Four-decimal fixed notation used throughout the text tables.
std::string format_fixed(double value);

/// Scientific notation for magnitudes that would round to 0.0000.
std::string format_compact(double value);

/// Round-trip precision for the CSV sidecars.
std::string format_full(double value);

/// "estimate[stars] (tstat)", e.g. "-0.0345** (-2.3417)".
std::string coefficient_cell(double estimate, double tstat, const std::string& stars);

/// Renders rows of cells as a fixed-width text table. The first column is
/// left-aligned, the rest right-aligned, with two-space gutters. The first
/// row is treated as a header and underlined.
std::string render_columns(const std::vector<std::vector<std::string>>& rows);

struct LabeledRegression {
    std::string label;
    RegressionResult result;
};

/// Row order for a multi-column regression table: each column's terms keep
/// their own order, and a term new to the union is inserted right after the
/// previous term of the column that introduced it.
std::vector<Term> merge_term_order(const std::vector<LabeledRegression>& columns);

/// Multi-column coefficient table with t-statistics in brackets,
/// significance stars, and N / R-squared / information-criteria footer.
std::string render_regression_table(const std::string& title, const std::string& dependent,
                                    const std::vector<LabeledRegression>& columns);

/// Machine-readable companion: one row per coefficient and per summary
/// statistic, full precision.
std::string regression_csv(const std::string& dependent,
                           const std::vector<LabeledRegression>& columns);

/// Lower-triangular correlation panel with significance stars. Panels with
/// fewer than 3 rows render every cell as N/A instead of failing.
std::string render_corr_panel(const std::string& title, const AlignedTable& panel);

/// CSV rows "panel,row,col,r,stars,n,available" for one panel.
void corr_panel_csv(std::ostream& out, const std::string& panel_tag, const AlignedTable& panel);

/// Two-column comparison of the skewed fit against the Gaussian nested fit:
/// parameters with z-statistics, observation count, likelihood, criteria
/// and convergence flags.
std::string render_fit_report(const GarchSFit& garchs_fit, const GarchSFit& garch11_fit);
std::string fit_report_csv(const GarchSFit& garchs_fit, const GarchSFit& garch11_fit);

/// Overwrites path with content; throws std::runtime_error if the file
/// cannot be opened.
void write_text_file(const std::string& path, const std::string& content);

} // namespace garchs
