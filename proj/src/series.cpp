#include "garchs/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace garchs {

DatedSeries::DatedSeries(std::vector<Date> dates, Eigen::VectorXd values, std::string name)
    : dates_(std::move(dates)), values_(std::move(values)), name_(std::move(name)) {
    if (static_cast<Eigen::Index>(dates_.size()) != values_.size())
        throw std::invalid_argument("series \"" + name_ + "\": " + std::to_string(dates_.size()) +
                                    " dates but " + std::to_string(values_.size()) + " values");
    for (std::size_t i = 1; i < dates_.size(); ++i)
        if (!(dates_[i - 1] < dates_[i]))
            throw std::invalid_argument("series \"" + name_ + "\": dates not strictly increasing at " +
                                        dates_[i].to_string());
    for (Eigen::Index i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]))
            throw std::invalid_argument("series \"" + name_ + "\": non-finite value at " +
                                        dates_[static_cast<std::size_t>(i)].to_string());
}

DatedSeries DatedSeries::renamed(std::string name) const {
    return DatedSeries(dates_, values_, std::move(name));
}

namespace {

// Shared core of the log transforms: out_t = ln((x_t + shift) / (x_{t-1} + shift)),
// dated at t.
DatedSeries log_ratio(const DatedSeries& in, double shift, const std::string& out_name) {
    const Eigen::Index n = in.size();
    Eigen::VectorXd out(n - 1);
    for (Eigen::Index t = 1; t < n; ++t)
        out[t - 1] = std::log(in.values()[t] + shift) - std::log(in.values()[t - 1] + shift);
    std::vector<Date> dates(in.dates().begin() + 1, in.dates().end());
    return DatedSeries(std::move(dates), std::move(out), out_name);
}

void require_min_length(const DatedSeries& s, Eigen::Index min_len, const char* op) {
    if (s.size() < min_len)
        throw std::invalid_argument(std::string(op) + ": series \"" + s.name() + "\" has " +
                                    std::to_string(s.size()) + " observations, need at least " +
                                    std::to_string(min_len));
}

} // namespace

DatedSeries log_return(const DatedSeries& prices) {
    require_min_length(prices, 2, "log_return");
    for (Eigen::Index i = 0; i < prices.size(); ++i)
        if (prices.values()[i] <= 0.0)
            throw std::domain_error("log_return: nonpositive price at " +
                                    prices.dates()[static_cast<std::size_t>(i)].to_string());
    return log_ratio(prices, 0.0, "r" + prices.name());
}

DatedSeries log_growth(const DatedSeries& counts) {
    require_min_length(counts, 2, "log_growth");
    bool has_zero = false;
    for (Eigen::Index i = 0; i < counts.size(); ++i) {
        if (counts.values()[i] < 0.0)
            throw std::domain_error("log_growth: negative count at " +
                                    counts.dates()[static_cast<std::size_t>(i)].to_string());
        if (counts.values()[i] == 0.0) has_zero = true;
    }
    return log_ratio(counts, has_zero ? 1.0 : 0.0, "r" + counts.name());
}

DatedSeries log_change_zero_guard(const DatedSeries& index) {
    require_min_length(index, 2, "log_change_zero_guard");
    bool has_zero = false;
    for (Eigen::Index i = 0; i < index.size(); ++i) {
        if (index.values()[i] < 0.0)
            throw std::domain_error("log_change_zero_guard: negative value at " +
                                    index.dates()[static_cast<std::size_t>(i)].to_string());
        if (index.values()[i] == 0.0) has_zero = true;
    }
    return log_ratio(index, has_zero ? 1.0 : 0.0, "r" + index.name());
}

DatedSeries dummy(const std::vector<Date>& dates, const Date& cutoff, std::string name) {
    Eigen::VectorXd values(static_cast<Eigen::Index>(dates.size()));
    for (std::size_t i = 0; i < dates.size(); ++i)
        values[static_cast<Eigen::Index>(i)] = dates[i] >= cutoff ? 1.0 : 0.0;
    return DatedSeries(dates, std::move(values), std::move(name));
}

DatedSeries lag(const DatedSeries& series, int k) {
    if (k < 1) throw std::invalid_argument("lag: k must be >= 1, got " + std::to_string(k));
    if (series.size() <= k)
        throw std::invalid_argument("lag: k = " + std::to_string(k) + " >= series length " +
                                    std::to_string(series.size()));
    const Eigen::Index n = series.size();
    std::vector<Date> dates(series.dates().begin() + k, series.dates().end());
    Eigen::VectorXd values = series.values().head(n - k);
    return DatedSeries(std::move(dates), std::move(values), series.name());
}

bool AlignedTable::has(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

Eigen::Index AlignedTable::column_index(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::invalid_argument("no column named \"" + name + "\"");
    return static_cast<Eigen::Index>(it - names.begin());
}

Eigen::VectorXd AlignedTable::column(const std::string& name) const {
    return values.col(column_index(name));
}

DatedSeries AlignedTable::series(const std::string& name) const {
    return DatedSeries(dates, column(name), name);
}

AlignedTable align(const std::vector<DatedSeries>& series_list) {
    if (series_list.empty()) throw std::invalid_argument("align: no series given");

    // Dates present in every series; all inputs are sorted already.
    std::vector<Date> common = series_list.front().dates();
    for (std::size_t i = 1; i < series_list.size(); ++i) {
        std::vector<Date> next;
        std::set_intersection(common.begin(), common.end(), series_list[i].dates().begin(),
                              series_list[i].dates().end(), std::back_inserter(next));
        common = std::move(next);
    }
    if (common.empty()) throw std::runtime_error("align: series share no dates");

    AlignedTable table;
    table.dates = common;
    table.values.resize(static_cast<Eigen::Index>(common.size()),
                        static_cast<Eigen::Index>(series_list.size()));
    for (std::size_t j = 0; j < series_list.size(); ++j) {
        const DatedSeries& s = series_list[j];
        table.names.push_back(s.name());
        table.dropped.push_back(s.size() - static_cast<Eigen::Index>(common.size()));
        std::size_t pos = 0;
        for (std::size_t i = 0; i < common.size(); ++i) {
            while (s.dates()[pos] < common[i]) ++pos;
            table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                s.values()[static_cast<Eigen::Index>(pos)];
        }
    }
    return table;
}

AlignedTable select_columns(const AlignedTable& table, const std::vector<std::string>& names) {
    AlignedTable out;
    out.dates = table.dates;
    out.values.resize(table.rows(), static_cast<Eigen::Index>(names.size()));
    for (std::size_t j = 0; j < names.size(); ++j) {
        out.names.push_back(names[j]);
        out.dropped.push_back(0);
        out.values.col(static_cast<Eigen::Index>(j)) = table.column(names[j]);
    }
    return out;
}

AlignedTable slice_rows(const AlignedTable& table, const Date& first, const Date& last) {
    const auto begin = std::lower_bound(table.dates.begin(), table.dates.end(), first);
    const auto end = std::lower_bound(table.dates.begin(), table.dates.end(), last);
    const auto row0 = static_cast<Eigen::Index>(begin - table.dates.begin());
    const auto count = static_cast<Eigen::Index>(end - begin);

    AlignedTable out;
    out.dates.assign(begin, end);
    out.names = table.names;
    out.dropped.assign(table.names.size(), 0);
    out.values = table.values.middleRows(row0, count);
    return out;
}

AlignedTable append_column(const AlignedTable& table, const DatedSeries& extra) {
    if (extra.dates() != table.dates)
        throw std::invalid_argument("append_column: dates of \"" + extra.name() +
                                    "\" do not match the table");
    if (table.has(extra.name()))
        throw std::invalid_argument("append_column: column \"" + extra.name() + "\" already present");
    AlignedTable out = table;
    out.names.push_back(extra.name());
    out.dropped.push_back(0);
    out.values.conservativeResize(Eigen::NoChange, table.values.cols() + 1);
    out.values.col(out.values.cols() - 1) = extra.values();
    return out;
}

} // namespace garchs
