#include "garchs/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "garchs/special_functions.hpp"

namespace garchs {

namespace {

std::string printf_string(const char* fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, value);
    return std::string(buf);
}

std::string stars_from_z(double z) {
    if (!std::isfinite(z)) return "";
    return significance_stars(2.0 * normal_cdf(-std::abs(z)));
}

} // namespace

std::string format_fixed(double value) {
    std::string out = printf_string("%.4f", value);
    if (out == "-0.0000") out = "0.0000";
    return out;
}

std::string format_compact(double value) {
    if (value != 0.0 && std::abs(value) < 5e-5) return printf_string("%.4e", value);
    return format_fixed(value);
}

std::string format_full(double value) {
    return printf_string("%.17g", value);
}

std::string coefficient_cell(double estimate, double tstat, const std::string& stars) {
    return format_fixed(estimate) + stars + " (" + format_fixed(tstat) + ")";
}

std::string render_columns(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return "";
    std::size_t ncols = 0;
    for (const auto& row : rows) ncols = std::max(ncols, row.size());
    std::vector<std::size_t> width(ncols, 0);
    for (const auto& row : rows)
        for (std::size_t j = 0; j < row.size(); ++j)
            width[j] = std::max(width[j], row[j].size());

    std::ostringstream out;
    std::size_t total = 0;
    for (std::size_t j = 0; j < ncols; ++j) total += width[j] + (j ? 2 : 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::string line;
        for (std::size_t j = 0; j < ncols; ++j) {
            const std::string cell = j < rows[i].size() ? rows[i][j] : "";
            if (j == 0) {
                line += cell + std::string(width[0] - cell.size(), ' ');
            } else {
                line += "  " + std::string(width[j] - cell.size(), ' ') + cell;
            }
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
        if (i == 0) out << std::string(total, '-') << '\n';
    }
    return out.str();
}

std::vector<Term> merge_term_order(const std::vector<LabeledRegression>& columns) {
    std::vector<Term> order;
    for (const auto& col : columns) {
        std::ptrdiff_t prev = -1;
        for (const auto& coef : col.result.coefficients) {
            auto it = std::find(order.begin(), order.end(), coef.term);
            if (it == order.end()) {
                order.insert(order.begin() + prev + 1, coef.term);
                ++prev;
            } else {
                prev = it - order.begin();
            }
        }
    }
    return order;
}

std::string render_regression_table(const std::string& title, const std::string& dependent,
                                    const std::vector<LabeledRegression>& columns) {
    const std::vector<Term> order = merge_term_order(columns);

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{""};
    for (const auto& col : columns) header.push_back(col.label);
    rows.push_back(header);

    for (const auto& term : order) {
        std::vector<std::string> row{term.label(dependent)};
        for (const auto& col : columns) {
            auto it = std::find_if(col.result.coefficients.begin(),
                                   col.result.coefficients.end(),
                                   [&](const CoefficientEstimate& c) { return c.term == term; });
            if (it == col.result.coefficients.end()) {
                row.push_back("");
            } else {
                row.push_back(coefficient_cell(it->estimate, it->tstat,
                                               significance_stars(it->pvalue)));
            }
        }
        rows.push_back(row);
    }

    auto stat_row = [&](const std::string& label, auto getter) {
        std::vector<std::string> row{label};
        for (const auto& col : columns) row.push_back(getter(col.result));
        rows.push_back(row);
    };
    stat_row("N", [](const RegressionResult& r) { return std::to_string(r.n_obs); });
    stat_row("R-squared", [](const RegressionResult& r) { return format_fixed(r.r2); });
    stat_row("Adj. R-squared", [](const RegressionResult& r) { return format_fixed(r.adj_r2); });
    stat_row("AIC", [](const RegressionResult& r) { return format_fixed(r.aic); });
    stat_row("SC", [](const RegressionResult& r) { return format_fixed(r.sc); });

    std::ostringstream out;
    out << title << '\n';
    out << "Dependent variable: " << dependent << '\n' << '\n';
    out << render_columns(rows);
    out << '\n'
        << "Notes: ***, ** and * denote significance at the 1%, 5% and 10% levels; "
           "t-statistics in brackets.\n";
    return out.str();
}

std::string regression_csv(const std::string& dependent,
                           const std::vector<LabeledRegression>& columns) {
    std::ostringstream out;
    out << "column,kind,name,estimate,stderr,tstat,pvalue,stars\n";
    for (const auto& col : columns) {
        for (const auto& coef : col.result.coefficients) {
            out << col.label << ",coef," << coef.term.label(dependent) << ','
                << format_full(coef.estimate) << ',' << format_full(coef.stderr_value) << ','
                << format_full(coef.tstat) << ',' << format_full(coef.pvalue) << ','
                << significance_stars(coef.pvalue) << '\n';
        }
        auto stat = [&](const std::string& name, double value) {
            out << col.label << ",stat," << name << ',' << format_full(value) << ",,,,\n";
        };
        stat("n", static_cast<double>(col.result.n_obs));
        stat("r2", col.result.r2);
        stat("adj_r2", col.result.adj_r2);
        stat("aic", col.result.aic);
        stat("sc", col.result.sc);
        stat("hq", col.result.hq);
    }
    return out.str();
}

std::string render_corr_panel(const std::string& title, const AlignedTable& panel) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{""};
    header.insert(header.end(), panel.names.begin(), panel.names.end());
    rows.push_back(header);

    std::ostringstream out;
    out << title << '\n';
    if (panel.rows() < 3) {
        for (const auto& name : panel.names) {
            std::vector<std::string> row{name};
            for (std::size_t j = 0; j < panel.names.size(); ++j) row.push_back("N/A");
            rows.push_back(row);
        }
        out << render_columns(rows);
        out << "Observations: " << panel.rows() << " (too few for correlations)\n";
        return out.str();
    }

    const CorrMatrix m = corr_matrix(panel);
    for (std::size_t i = 0; i < m.names.size(); ++i) {
        std::vector<std::string> row{m.names[i]};
        for (std::size_t j = 0; j <= i; ++j) {
            const CorrCell& cell = m.cells[i][j];
            row.push_back(cell.available ? format_fixed(cell.r) + cell.stars : "N/A");
        }
        rows.push_back(row);
    }
    out << render_columns(rows);
    out << "Observations: " << m.n_obs << '\n';
    return out.str();
}

void corr_panel_csv(std::ostream& out, const std::string& panel_tag, const AlignedTable& panel) {
    if (panel.rows() < 3) {
        for (std::size_t i = 0; i < panel.names.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                out << panel_tag << ',' << panel.names[i] << ',' << panel.names[j] << ",,,"
                    << panel.rows() << ",0\n";
        return;
    }
    const CorrMatrix m = corr_matrix(panel);
    for (std::size_t i = 0; i < m.names.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const CorrCell& cell = m.cells[i][j];
            out << panel_tag << ',' << m.names[i] << ',' << m.names[j] << ',';
            if (cell.available)
                out << format_full(cell.r) << ',' << cell.stars;
            else
                out << ',';
            out << ',' << m.n_obs << ',' << (cell.available ? 1 : 0) << '\n';
        }
}

namespace {

std::string fit_param_cell(const GarchSFit& fit, int index) {
    const Eigen::VectorXd est = fit.params.to_vector();
    const bool have_z = index < fit.inference.z.size() &&
                        static_cast<std::size_t>(index) < fit.inference.available.size() &&
                        fit.inference.available[index];
    std::string cell = format_compact(est[index]);
    if (have_z) {
        const double z = fit.inference.z[index];
        cell += stars_from_z(z) + " (" + format_fixed(z) + ")";
    } else {
        cell += " (n/a)";
    }
    return cell;
}

} // namespace

std::string render_fit_report(const GarchSFit& garchs_fit, const GarchSFit& garch11_fit) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Parameter", "GARCH-S", "GARCH(1,1)"});
    for (int i = 0; i < 7; ++i) {
        std::vector<std::string> row{kParamNames[i]};
        row.push_back(fit_param_cell(garchs_fit, i));
        row.push_back(i < 4 ? fit_param_cell(garch11_fit, i) : "N/A");
        rows.push_back(row);
    }
    auto stat_row = [&](const std::string& label, auto getter) {
        rows.push_back({label, getter(garchs_fit), getter(garch11_fit)});
    };
    stat_row("Observations", [](const GarchSFit& f) { return std::to_string(f.n_obs); });
    stat_row("Log-likelihood", [](const GarchSFit& f) { return format_fixed(f.loglik); });
    stat_row("AIC", [](const GarchSFit& f) { return format_fixed(f.criteria.aic); });
    stat_row("SIC", [](const GarchSFit& f) { return format_fixed(f.criteria.sc); });
    stat_row("HQ", [](const GarchSFit& f) { return format_fixed(f.criteria.hq); });
    stat_row("Converged", [](const GarchSFit& f) {
        return std::string(f.optim.converged ? "yes" : "no");
    });
    stat_row("Iterations", [](const GarchSFit& f) { return std::to_string(f.optim.iterations); });

    std::ostringstream out;
    out << "Return model estimates\n\n";
    out << render_columns(rows);
    out << '\n'
        << "Notes: ***, ** and * denote significance at the 1%, 5% and 10% levels; "
           "z-statistics in brackets.\n";
    return out.str();
}

std::string fit_report_csv(const GarchSFit& garchs_fit, const GarchSFit& garch11_fit) {
    std::ostringstream out;
    out << "model,kind,name,estimate,stderr,z,pvalue,stars\n";
    auto emit = [&](const std::string& model, const GarchSFit& fit, int n_params) {
        const Eigen::VectorXd est = fit.params.to_vector();
        for (int i = 0; i < n_params; ++i) {
            const bool have_z = static_cast<std::size_t>(i) < fit.inference.available.size() &&
                                fit.inference.available[i];
            out << model << ",coef," << kParamNames[i] << ',' << format_full(est[i]) << ',';
            if (have_z) {
                const double z = fit.inference.z[i];
                const double p = 2.0 * normal_cdf(-std::abs(z));
                out << format_full(fit.inference.stderrs[i]) << ',' << format_full(z) << ','
                    << format_full(p) << ',' << significance_stars(p);
            } else {
                out << ",,,";
            }
            out << '\n';
        }
        auto stat = [&](const std::string& name, double value) {
            out << model << ",stat," << name << ',' << format_full(value) << ",,,,\n";
        };
        stat("loglik", fit.loglik);
        stat("n", static_cast<double>(fit.n_obs));
        stat("aic", fit.criteria.aic);
        stat("sic", fit.criteria.sc);
        stat("hq", fit.criteria.hq);
        stat("converged", fit.optim.converged ? 1.0 : 0.0);
        stat("iterations", static_cast<double>(fit.optim.iterations));
    };
    emit("garchs", garchs_fit, 7);
    emit("garch11", garch11_fit, 4);
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("error writing " + path);
}

} // namespace garchs
