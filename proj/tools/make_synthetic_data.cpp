// Generates the bundled synthetic study inputs: a weekday price path from
// the skewed return model, daily case counts that are zero until the regime
// cutoff, and three positive uncertainty indices with a level shift after
// the cutoff. Everything is seeded, so the bundle is reproducible.
#include <cmath>
#include <filesystem>
#include <iostream>
#include <vector>

#include "garchs/csv.hpp"
#include "garchs/date.hpp"
#include "garchs/rng.hpp"
#include "garchs/series.hpp"
#include "garchs/simulate.hpp"

using namespace garchs;

namespace {

constexpr int kTradingDays = 919;
const Date kStart(2017, 1, 2);
const Date kCutoff(2020, 1, 21);

std::vector<Date> weekdays(int count) {
    std::vector<Date> dates;
    Date d = kStart;
    while (static_cast<int>(dates.size()) < count) {
        if (!d.is_weekend()) dates.push_back(d);
        d = d.plus_days(1);
    }
    return dates;
}

std::vector<Date> calendar_days(const Date& first, const Date& last) {
    std::vector<Date> dates;
    for (Date d = first; !(last < d); d = d.plus_days(1)) dates.push_back(d);
    return dates;
}

DatedSeries prices_series() {
    SimConfig cfg;
    cfg.params = GarchSParams{-0.0425, 3.7e-6, 0.2065, 0.7720, 0.0, 0.0361, 0.1544};
    cfg.n = kTradingDays - 1;
    cfg.burn_in = 500;
    cfg.seed = 424242;
    cfg.innovation = Innovation::GramCharlier;
    const DatedSeries returns = simulate_path(cfg);

    std::vector<Date> dates = weekdays(kTradingDays);
    Eigen::VectorXd prices(kTradingDays);
    prices[0] = 2250.0;
    for (Eigen::Index t = 1; t < kTradingDays; ++t)
        prices[t] = prices[t - 1] * std::exp(returns.values()[t - 1]);
    return DatedSeries(std::move(dates), std::move(prices), "close");
}

DatedSeries cases_series(const Date& last) {
    const std::vector<Date> dates = calendar_days(Date(2017, 1, 1), last);
    Eigen::VectorXd values(static_cast<Eigen::Index>(dates.size()));
    SplitMix64 rng(777001);
    int since_cutoff = 0;
    for (std::size_t i = 0; i < dates.size(); ++i) {
        double count = 0.0;
        if (!(dates[i] < kCutoff)) {
            ++since_cutoff;
            const double base = 60000.0 / (1.0 + std::exp(-0.10 * (since_cutoff - 110)));
            double level = std::max(1.0, base) * (0.85 + 0.30 * rng.uniform());
            if (dates[i].is_weekend()) level *= 0.65;
            count = std::floor(level);
        }
        values[static_cast<Eigen::Index>(i)] = count;
    }
    return DatedSeries(dates, std::move(values), "cases");
}

/// Log-AR(1) index around the given level, multiplied up smoothly after the
/// cutoff. Values are rounded to two decimals and kept strictly positive.
DatedSeries index_series(const std::string& name, const Date& last, double level, double phi,
                         double sigma, double pandemic_factor, std::uint64_t seed) {
    const std::vector<Date> dates = calendar_days(Date(2017, 1, 1), last);
    Eigen::VectorXd values(static_cast<Eigen::Index>(dates.size()));
    SplitMix64 rng(seed);
    double x = std::log(level);
    int since_cutoff = 0;
    for (std::size_t i = 0; i < dates.size(); ++i) {
        double target = std::log(level);
        if (!(dates[i] < kCutoff)) {
            ++since_cutoff;
            const double ramp = std::min(1.0, since_cutoff / 30.0);
            target += ramp * std::log(pandemic_factor);
        }
        x = target + phi * (x - target) + sigma * rng.normal();
        const double value = std::max(0.01, std::round(std::exp(x) * 100.0) / 100.0);
        values[static_cast<Eigen::Index>(i)] = value;
    }
    return DatedSeries(dates, std::move(values), name);
}

/// Mostly exact zeros before the cutoff with occasional small blips, then a
/// sharp ramp: the shape of an infectious-disease attention tracker.
DatedSeries tracker_series(const Date& last) {
    const std::vector<Date> dates = calendar_days(Date(2017, 1, 1), last);
    Eigen::VectorXd values(static_cast<Eigen::Index>(dates.size()));
    SplitMix64 rng(777003);
    int since_cutoff = 0;
    for (std::size_t i = 0; i < dates.size(); ++i) {
        double value = 0.0;
        if (dates[i] < kCutoff) {
            if (rng.uniform() < 0.05) value = std::round((0.05 + 2.45 * rng.uniform()) * 100.0) / 100.0;
        } else {
            ++since_cutoff;
            const double ramp = std::min(1.0, since_cutoff / 45.0);
            const double base = 1.0 + 27.0 * ramp;
            value = std::round(base * (0.75 + 0.5 * rng.uniform()) * 100.0) / 100.0;
        }
        values[static_cast<Eigen::Index>(i)] = value;
    }
    return DatedSeries(dates, std::move(values), "emv_id");
}

} // namespace

int main(int argc, char** argv) {
    const std::string out_dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(out_dir);
    auto path = [&](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };

    const DatedSeries prices = prices_series();
    const Date last = prices.dates().back().plus_days(3);

    write_csv(path("prices.csv"), prices);
    write_csv(path("cases.csv"), cases_series(last));
    write_csv(path("epu.csv"), index_series("epu", last, 100.0, 0.85, 0.45, 2.5, 777002));
    write_csv(path("emu.csv"), index_series("emu", last, 60.0, 0.90, 0.35, 3.0, 777004));
    write_csv(path("emv_id.csv"), tracker_series(last));

    std::cout << "wrote 5 files to " << out_dir << " (" << prices.size() << " trading days, "
              << prices.dates().front().to_string() << " to "
              << prices.dates().back().to_string() << ")\n";
    return 0;
}
