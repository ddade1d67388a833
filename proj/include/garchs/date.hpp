#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace garchs {

/// Calendar date with day resolution, backed by a count of days since the
/// Unix epoch. Comparisons and day arithmetic are exact.
class Date {
public:
    Date() = default;
    explicit Date(std::chrono::sys_days d) : days_(d) {}
    Date(int year, unsigned month, unsigned day);

    /// Parses "YYYY-MM-DD". Throws std::invalid_argument on malformed input
    /// or a day that does not exist in that month.
    static Date parse(std::string_view iso);

    /// Formats as "YYYY-MM-DD".
    std::string to_string() const;

    std::chrono::sys_days sys() const { return days_; }
    Date plus_days(int n) const { return Date(days_ + std::chrono::days{n}); }
    bool is_weekend() const;

    auto operator<=>(const Date&) const = default;

private:
    std::chrono::sys_days days_{};
};

} // namespace garchs
