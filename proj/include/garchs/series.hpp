#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "garchs/date.hpp"

namespace garchs {

/// A named series of real observations on strictly increasing dates.
/// Immutable after construction; every transform returns a new series.
class DatedSeries {
public:
    /// Throws std::invalid_argument on length mismatch, unsorted or
    /// duplicate dates, or non-finite values.
    DatedSeries(std::vector<Date> dates, Eigen::VectorXd values, std::string name);

    const std::vector<Date>& dates() const { return dates_; }
    const Eigen::VectorXd& values() const { return values_; }
    const std::string& name() const { return name_; }
    Eigen::Index size() const { return values_.size(); }

    DatedSeries renamed(std::string name) const;

private:
    std::vector<Date> dates_;
    Eigen::VectorXd values_;
    std::string name_;
};

/// ln(P_t / P_{t-1}), dated at t. Requires positive prices and length >= 2.
DatedSeries log_return(const DatedSeries& prices);

/// Growth rate of a count series: ln((C_t + z) / (C_{t-1} + z)) where z = 1
/// if any observation is zero and z = 0 otherwise. The guard is applied
/// series-wide so the whole output follows one formula. Counts must be
/// non-negative with length >= 2.
DatedSeries log_growth(const DatedSeries& counts);

/// Log change of an index with the same series-wide +1 guard as log_growth
/// when any observation is zero. Values must be non-negative, length >= 2.
DatedSeries log_change_zero_guard(const DatedSeries& index);

/// Regime indicator: 1 on dates on or after the cutoff, 0 before it.
DatedSeries dummy(const std::vector<Date>& dates, const Date& cutoff,
                  std::string name = "dummy");

/// Shift by k observations: out_t = in_{t-k}, dated at t. Requires
/// 1 <= k < length.
DatedSeries lag(const DatedSeries& series, int k);

/// Result of an inner join of several series on their common dates.
struct AlignedTable {
    std::vector<Date> dates;
    std::vector<std::string> names;
    Eigen::MatrixXd values;            // column j holds the series names[j]
    std::vector<Eigen::Index> dropped; // per input series, observations lost in the join

    Eigen::Index rows() const { return values.rows(); }
    bool has(const std::string& name) const;
    Eigen::Index column_index(const std::string& name) const; // throws if absent
    Eigen::VectorXd column(const std::string& name) const;
    DatedSeries series(const std::string& name) const;
};

/// Inner join on dates present in every input series, preserving date order.
/// Throws std::invalid_argument if the list is empty or std::runtime_error
/// if the intersection is empty.
AlignedTable align(const std::vector<DatedSeries>& series_list);

/// Returns a copy of the table with one more column. The series dates must
/// equal the table dates exactly.
AlignedTable append_column(const AlignedTable& table, const DatedSeries& extra);

/// Projection onto the named columns, in the order given. Throws
/// std::invalid_argument on an unknown name.
AlignedTable select_columns(const AlignedTable& table, const std::vector<std::string>& names);

/// Rows with first <= date < last (a half-open date window). The result may
/// be empty.
AlignedTable slice_rows(const AlignedTable& table, const Date& first, const Date& last);

} // namespace garchs
