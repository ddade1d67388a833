#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "garchs/csv.hpp"
#include "garchs/date.hpp"
#include "garchs/series.hpp"

using namespace garchs;

namespace {

std::vector<Date> consecutive_dates(int n, Date start = Date(2020, 1, 1)) {
    std::vector<Date> out;
    Date d = start;
    for (int i = 0; i < n; ++i) {
        out.push_back(d);
        d = d.plus_days(1);
    }
    return out;
}

DatedSeries make_series(std::vector<double> values, const std::string& name = "x",
                        Date start = Date(2020, 1, 1)) {
    const auto n = static_cast<int>(values.size());
    return DatedSeries(consecutive_dates(n, start),
                       Eigen::Map<Eigen::VectorXd>(values.data(), n), name);
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto dir = std::filesystem::temp_directory_path() / "garchs_ts_tests";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / name).string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

} // namespace

TEST_CASE("date parsing and arithmetic") {
    const Date d = Date::parse("2020-01-21");
    CHECK(d.to_string() == "2020-01-21");
    CHECK(d == Date(2020, 1, 21));
    CHECK(d < Date(2020, 1, 22));
    CHECK(d.plus_days(11).to_string() == "2020-02-01");

    CHECK_THROWS_AS(Date::parse("2021-02-29"), std::invalid_argument);
    CHECK_THROWS_AS(Date::parse("2020-13-01"), std::invalid_argument);
    CHECK_THROWS_AS(Date::parse("2020/01/21"), std::invalid_argument);
    CHECK_THROWS_AS(Date::parse("20-01-21"), std::invalid_argument);
    CHECK_THROWS_AS((Date(2021, 2, 29)), std::invalid_argument);

    CHECK(Date(2020, 1, 18).is_weekend());  // Saturday
    CHECK(Date(2020, 1, 19).is_weekend());  // Sunday
    CHECK(!Date(2020, 1, 20).is_weekend()); // Monday
}

TEST_CASE("series construction rejects bad input") {
    CHECK_THROWS_AS(DatedSeries(consecutive_dates(2), Eigen::VectorXd::Zero(3), "x"),
                    std::invalid_argument);

    std::vector<Date> unsorted{Date(2020, 1, 2), Date(2020, 1, 1)};
    CHECK_THROWS_AS(DatedSeries(unsorted, Eigen::VectorXd::Zero(2), "x"), std::invalid_argument);

    std::vector<Date> dup{Date(2020, 1, 1), Date(2020, 1, 1)};
    CHECK_THROWS_AS(DatedSeries(dup, Eigen::VectorXd::Zero(2), "x"), std::invalid_argument);

    Eigen::VectorXd bad(2);
    bad << 1.0, std::nan("");
    CHECK_THROWS_WITH_AS(DatedSeries(consecutive_dates(2), bad, "prices"),
                         doctest::Contains("prices"), std::invalid_argument);
}

TEST_CASE("log return") {
    const DatedSeries constant = make_series({100.0, 100.0, 100.0}, "P");
    const DatedSeries r0 = log_return(constant);
    CHECK(r0.size() == 2);
    CHECK(r0.values()[0] == 0.0);
    CHECK(r0.values()[1] == 0.0);
    CHECK(r0.name() == "rP");
    CHECK(r0.dates()[0] == constant.dates()[1]);

    // ln(1.1) against an independently evaluated reference
    const DatedSeries r = log_return(make_series({100.0, 110.0}, ""));
    CHECK(r.values()[0] == doctest::Approx(0.09531017980432486).epsilon(1e-14));

    CHECK_THROWS_AS(log_return(make_series({1.0, 0.0, 2.0})), std::domain_error);
    CHECK_THROWS_AS(log_return(make_series({1.0})), std::invalid_argument);
}

TEST_CASE("log return telescopes to the full-period change") {
    const DatedSeries prices = make_series({100.0, 103.0, 99.5, 101.2, 107.9}, "P");
    const DatedSeries r = log_return(prices);
    CHECK(r.values().sum() ==
          doctest::Approx(std::log(107.9 / 100.0)).epsilon(1e-12));
}

TEST_CASE("log growth with the series-wide +1 guard") {
    const DatedSeries constant = log_growth(make_series({5.0, 5.0, 5.0}, "Cases"));
    CHECK(constant.values()[0] == 0.0);
    CHECK(constant.values()[1] == 0.0);
    CHECK(constant.name() == "rCases");

    // a zero in the series switches the whole series to the +1 formula
    const DatedSeries g = log_growth(make_series({0.0, 18.0}, "Cases"));
    CHECK(g.values()[0] == doctest::Approx(2.9444389791664403).epsilon(1e-14));

    // an all-zero prefix has growth exactly 0
    const DatedSeries flat = log_growth(make_series({0.0, 0.0, 0.0, 3.0}, "Cases"));
    CHECK(flat.values()[0] == 0.0);
    CHECK(flat.values()[1] == 0.0);

    CHECK_THROWS_AS(log_growth(make_series({3.0, -2.0})), std::domain_error);
}

TEST_CASE("log change of an index with zero guard") {
    const DatedSeries plain = log_change_zero_guard(make_series({50.0, 50.0}, "EPU"));
    CHECK(plain.values()[0] == 0.0);
    CHECK(plain.name() == "rEPU");

    // with a zero present, [e-1, e^2-1] steps by exactly 1 under the guard
    const double e = std::exp(1.0);
    const DatedSeries guarded =
        log_change_zero_guard(make_series({0.0, e - 1.0, e * e - 1.0}, "EPU"));
    CHECK(guarded.values()[1] == doctest::Approx(1.0).epsilon(1e-14));

    // without any zero the plain log ratio is used
    const DatedSeries unguarded = log_change_zero_guard(make_series({1.0, e}, "EPU"));
    CHECK(unguarded.values()[0] == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(log_change_zero_guard(make_series({1.0, -1.0})), std::domain_error);
}

TEST_CASE("regime dummy") {
    const auto dates = std::vector<Date>{Date(2020, 1, 20), Date(2020, 1, 21), Date(2020, 1, 22)};
    const DatedSeries d = dummy(dates, Date(2020, 1, 21), "D");
    CHECK(d.values()[0] == 0.0);
    CHECK(d.values()[1] == 1.0);
    CHECK(d.values()[2] == 1.0);

    const DatedSeries none = dummy(dates, Date(2021, 1, 1));
    CHECK(none.values().maxCoeff() == 0.0);
    const DatedSeries all = dummy(dates, Date(2019, 1, 1));
    CHECK(all.values().minCoeff() == 1.0);

    // values in {0,1} and non-decreasing
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const double v = d.values()[i];
        CHECK((v == 0.0 || v == 1.0));
        if (i > 0) CHECK(d.values()[i] >= d.values()[i - 1]);
    }
}

TEST_CASE("lagging") {
    const DatedSeries x = make_series({1.0, 2.0, 3.0});
    const DatedSeries l1 = lag(x, 1);
    CHECK(l1.size() == 2);
    CHECK(l1.values()[0] == 1.0);
    CHECK(l1.values()[1] == 2.0);
    CHECK(l1.dates()[0] == x.dates()[1]);

    const DatedSeries l2 = lag(x, 2);
    CHECK(l2.size() == 1);
    CHECK(l2.values()[0] == 1.0);

    // composition identity
    const DatedSeries ll = lag(lag(x, 1), 1);
    CHECK(ll.values() == l2.values());
    CHECK(ll.dates() == l2.dates());

    CHECK_THROWS_AS(lag(x, 3), std::invalid_argument);
    CHECK_THROWS_AS(lag(x, 0), std::invalid_argument);
}

TEST_CASE("alignment") {
    const DatedSeries a = make_series({1.0, 2.0, 3.0}, "a", Date(2020, 1, 6)); // Mon..Wed
    const DatedSeries b = make_series({4.0, 5.0, 6.0}, "b", Date(2020, 1, 7)); // Tue..Thu

    const AlignedTable t = align({a, b});
    CHECK(t.rows() == 2);
    CHECK(t.dates.front() == Date(2020, 1, 7));
    CHECK(t.dates.back() == Date(2020, 1, 8));
    CHECK(t.column("a")[0] == 2.0);
    CHECK(t.column("b")[0] == 4.0);
    CHECK(t.dropped == std::vector<Eigen::Index>{1, 1});

    // idempotent on already-aligned series
    const AlignedTable again = align({t.series("a"), t.series("b")});
    CHECK(again.dates == t.dates);
    CHECK(again.values == t.values);
    CHECK(again.dropped == std::vector<Eigen::Index>{0, 0});

    const DatedSeries c = make_series({1.0, 2.0}, "c", Date(2021, 6, 1));
    CHECK_THROWS_AS(align({a, c}), std::runtime_error);
    CHECK_THROWS_AS(align({}), std::invalid_argument);
}

TEST_CASE("append, select and slice on tables") {
    const DatedSeries a = make_series({1.0, 2.0, 3.0}, "a");
    const DatedSeries b = make_series({4.0, 5.0, 6.0}, "b");
    AlignedTable t = align({a, b});

    const DatedSeries extra(t.dates, Eigen::VectorXd::Ones(3), "one");
    t = append_column(t, extra);
    CHECK(t.names == std::vector<std::string>{"a", "b", "one"});
    CHECK(t.column("one")[2] == 1.0);
    CHECK_THROWS_AS(append_column(t, extra), std::invalid_argument);
    const DatedSeries wrong_dates = make_series({1.0, 2.0}, "w", Date(2020, 1, 1));
    CHECK_THROWS_AS(append_column(t, wrong_dates), std::invalid_argument);

    const AlignedTable sel = select_columns(t, {"b", "a"});
    CHECK(sel.names == std::vector<std::string>{"b", "a"});
    CHECK(sel.column("b") == t.column("b"));
    CHECK_THROWS_AS(select_columns(t, {"missing"}), std::invalid_argument);

    const AlignedTable mid = slice_rows(t, Date(2020, 1, 2), Date(2020, 1, 3));
    CHECK(mid.rows() == 1);
    CHECK(mid.dates.front() == Date(2020, 1, 2));
    const AlignedTable empty = slice_rows(t, Date(2021, 1, 1), Date(2021, 2, 1));
    CHECK(empty.rows() == 0);
}

TEST_CASE("csv loading") {
    const std::string path = temp_file(
        "basic.csv", "date,close\n2020-01-02,100\n2020-01-03,101\n2020-01-06,99\n");
    const LoadedSeries loaded = load_csv(path, "date", "close");
    CHECK(loaded.series.size() == 3);
    CHECK(loaded.series.values()[2] == 99.0);
    CHECK(loaded.rows_dropped == 0);

    // unsorted input comes back sorted
    const std::string unsorted = temp_file(
        "unsorted.csv", "date,v\n2020-01-06,99\n2020-01-02,100\n2020-01-03,101\n");
    CHECK(load_csv(unsorted, "date", "v").series.dates().front() == Date(2020, 1, 2));

    // blank value cells are dropped and counted
    const std::string blanks = temp_file(
        "blanks.csv",
        "date,v\n2020-01-01,1\n2020-01-02,\n2020-01-03,3\n2020-01-04,4\n2020-01-05,5\n");
    const LoadedSeries partial = load_csv(blanks, "date", "v");
    CHECK(partial.series.size() == 4);
    CHECK(partial.rows_dropped == 1);

    // auto-picked value column is the first non-date column
    CHECK(load_csv(path, "date", "").series.name() == "close");

    const std::string dup = temp_file(
        "dup.csv", "date,v\n2020-01-02,1\n2020-01-03,2\n2020-01-03,3\n");
    CHECK_THROWS_WITH_AS(load_csv(dup, "date", "v"), doctest::Contains("2020-01-03"),
                         std::runtime_error);

    CHECK_THROWS_WITH_AS(load_csv(path, "date", "nope"), doctest::Contains("nope"),
                         std::runtime_error);
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", "date", "v"), std::runtime_error);

    const std::string bad_value = temp_file("badval.csv", "date,v\n2020-01-02,12x\n");
    CHECK_THROWS_WITH_AS(load_csv(bad_value, "date", "v"), doctest::Contains("12x"),
                         std::runtime_error);

    const std::string bad_date = temp_file("baddate.csv", "date,v\n2020-01-32,1\n");
    CHECK_THROWS_AS(load_csv(bad_date, "date", "v"), std::runtime_error);
}

TEST_CASE("csv writing round trip") {
    const DatedSeries s = make_series({0.1234567890123456789, -3.5e-7, 42.0}, "v");
    const auto dir = std::filesystem::temp_directory_path() / "garchs_ts_tests";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "roundtrip.csv").string();
    write_csv(path, s);
    const LoadedSeries back = load_csv(path, "date", "v");
    CHECK(back.series.values() == s.values()); // full precision preserved
    CHECK(back.series.dates() == s.dates());

    const AlignedTable t = align({make_series({1.5, 2.5}, "a"), make_series({-1.0, 7.25}, "b")});
    const std::string tpath = (dir / "table.csv").string();
    write_table_csv(tpath, t);
    const AlignedTable tback = load_table_csv(tpath, "date");
    CHECK(tback.names == t.names);
    CHECK(tback.values == t.values);
    CHECK(tback.dates == t.dates);
}
