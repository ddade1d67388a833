#pragma once

#include <cstddef>
#include <string>

#include "garchs/series.hpp"

namespace garchs {

/// A series read from disk plus how many rows were skipped for blank values.
struct LoadedSeries {
    DatedSeries series;
    std::size_t rows_dropped = 0;
};

/// Reads one (date, value) series from a headered CSV. Rows are sorted by
/// date; rows whose value cell is blank are dropped and counted. An empty
/// value_column picks the first non-date column. Throws std::runtime_error
/// on a missing file or column, an unparsable date or value, or a
/// duplicate date (the message names the offending row).
LoadedSeries load_csv(const std::string& path, const std::string& date_column,
                      const std::string& value_column);

/// Reads every non-date column of a headered CSV as one aligned table.
/// Blank cells are errors here: a table on disk is already aligned.
AlignedTable load_table_csv(const std::string& path, const std::string& date_column);

/// Writes "date,<name>" rows with full double precision.
void write_csv(const std::string& path, const DatedSeries& series);

/// Writes "date,<name1>,<name2>,..." rows with full double precision.
void write_table_csv(const std::string& path, const AlignedTable& table);

} // namespace garchs
