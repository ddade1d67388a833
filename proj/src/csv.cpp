#include "garchs/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace garchs {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trimmed(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::string& path) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (trimmed(header[i]) == name) return i;
    throw std::runtime_error(path + ": no column named \"" + name + "\"");
}

} // namespace

LoadedSeries load_csv(const std::string& path, const std::string& date_column,
                      const std::string& value_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    const auto header = split_line(line);
    const std::size_t date_idx = find_column(header, date_column, path);
    std::string value_name = value_column;
    if (value_name.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (i != date_idx && !trimmed(header[i]).empty()) {
                value_name = trimmed(header[i]);
                break;
            }
        if (value_name.empty())
            throw std::runtime_error(path + ": no value column beside \"" + date_column + "\"");
    }
    const std::size_t value_idx = find_column(header, value_name, path);

    struct Row {
        Date date;
        double value;
        std::size_t line_no;
    };
    std::vector<Row> rows;
    std::size_t dropped = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() <= std::max(date_idx, value_idx))
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": too few cells");
        const std::string value_cell = trimmed(cells[value_idx]);
        if (value_cell.empty()) {
            ++dropped;
            continue;
        }
        Date date;
        try {
            date = Date::parse(trimmed(cells[date_idx]));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        double value = 0.0;
        std::size_t consumed = 0;
        try {
            value = std::stod(value_cell, &consumed);
        } catch (const std::exception&) {
            consumed = 0;
        }
        if (consumed != value_cell.size())
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": cannot parse value \"" + value_cell + "\"");
        rows.push_back({date, value, line_no});
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].date == rows[i - 1].date)
            throw std::runtime_error(path + ":" + std::to_string(rows[i].line_no) +
                                     ": duplicate date " + rows[i].date.to_string());

    std::vector<Date> dates;
    Eigen::VectorXd values(static_cast<Eigen::Index>(rows.size()));
    dates.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        dates.push_back(rows[i].date);
        values[static_cast<Eigen::Index>(i)] = rows[i].value;
    }
    return {DatedSeries(std::move(dates), std::move(values), value_name), dropped};
}

AlignedTable load_table_csv(const std::string& path, const std::string& date_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    const auto header = split_line(line);
    const std::size_t date_idx = find_column(header, date_column, path);
    std::vector<std::string> names;
    std::vector<std::size_t> value_idx;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i == date_idx) continue;
        const std::string name = trimmed(header[i]);
        if (name.empty()) throw std::runtime_error(path + ": blank column name in header");
        names.push_back(name);
        value_idx.push_back(i);
    }
    if (names.empty()) throw std::runtime_error(path + ": no value columns");

    struct Row {
        Date date;
        std::vector<double> values;
        std::size_t line_no;
    };
    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        const auto cells = split_line(line);
        Row row;
        row.line_no = line_no;
        try {
            row.date = Date::parse(trimmed(cells.size() > date_idx ? cells[date_idx] : ""));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        for (std::size_t j = 0; j < value_idx.size(); ++j) {
            if (cells.size() <= value_idx[j])
                throw std::runtime_error(path + ":" + std::to_string(line_no) + ": too few cells");
            const std::string cell = trimmed(cells[value_idx[j]]);
            double value = 0.0;
            std::size_t consumed = 0;
            try {
                value = std::stod(cell, &consumed);
            } catch (const std::exception&) {
                consumed = 0;
            }
            if (cell.empty() || consumed != cell.size())
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": cannot parse value \"" + cell + "\" for column " +
                                         names[j]);
            row.values.push_back(value);
        }
        rows.push_back(std::move(row));
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].date == rows[i - 1].date)
            throw std::runtime_error(path + ":" + std::to_string(rows[i].line_no) +
                                     ": duplicate date " + rows[i].date.to_string());

    AlignedTable table;
    table.names = names;
    table.dates.reserve(rows.size());
    table.values.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(names.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        table.dates.push_back(rows[i].date);
        for (std::size_t j = 0; j < names.size(); ++j)
            table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i].values[j];
    }
    table.dropped.assign(names.size(), 0);
    return table;
}

void write_csv(const std::string& path, const DatedSeries& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "date," << series.name() << "\n";
    char buf[40];
    for (Eigen::Index i = 0; i < series.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", series.values()[i]);
        out << series.dates()[static_cast<std::size_t>(i)].to_string() << "," << buf << "\n";
    }
}

void write_table_csv(const std::string& path, const AlignedTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "date";
    for (const auto& name : table.names) out << "," << name;
    out << "\n";
    char buf[40];
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
        out << table.dates[static_cast<std::size_t>(i)].to_string();
        for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", table.values(i, j));
            out << "," << buf;
        }
        out << "\n";
    }
}

} // namespace garchs
