#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "garchs/adf.hpp"
#include "garchs/csv.hpp"
#include "garchs/report.hpp"
#include "garchs/series.hpp"
#include "garchs/simulate.hpp"

using namespace garchs;

namespace {

namespace fs = std::filesystem;

const std::string kCli = GARCHS_CLI_PATH;

int run_cmd(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -2;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "garchs_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

DatedSeries series_from(const std::vector<double>& values, const std::string& name) {
    std::vector<Date> dates;
    Date d(2021, 3, 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        dates.push_back(d);
        d = d.plus_days(1);
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
    return DatedSeries(dates, v, name);
}

} // namespace

TEST_CASE("cli describe prints summary statistics") {
    const fs::path dir = fresh_dir("describe");
    write_csv((dir / "v.csv").string(), series_from({1.0, 1.0, 1.0}, "v"));
    const std::string out = (dir / "out.txt").string();
    const int code =
        run_cmd(kCli + " describe --data " + (dir / "v.csv").string() + " > " + out);
    CHECK(code == 0);
    const std::string text = slurp(out);
    CHECK(contains(text, "Mean"));
    CHECK(contains(text, "1.0000"));
    CHECK(contains(text, "0.0000")); // zero standard deviation
    CHECK(contains(text, "3"));
}

TEST_CASE("cli adf agrees with the library") {
    std::mt19937_64 gen(11u);
    std::normal_distribution<double> nd;
    std::vector<double> x(300);
    x[0] = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) x[i] = 0.5 * x[i - 1] + nd(gen);
    const DatedSeries s = series_from(x, "x");

    const fs::path dir = fresh_dir("adf");
    write_csv((dir / "x.csv").string(), s);
    const std::string out = (dir / "out.txt").string();
    const int code = run_cmd(kCli + " adf --data " + (dir / "x.csv").string() +
                             " --max-lags 8 > " + out);
    CHECK(code == 0);

    const AdfResult expected = adf_test(s, 8);
    const std::string text = slurp(out);
    CHECK(contains(text, "ADF t-statistic for x: " + format_fixed(expected.stat)));
    CHECK(contains(text, "lags " + std::to_string(expected.lags)));
}

TEST_CASE("cli regress reproduces a hand-checked fit") {
    const fs::path dir = fresh_dir("regress");
    spit(dir / "data.csv", "date,y,x\n2020-01-01,1,1\n2020-01-02,2,2\n2020-01-03,4,3\n");
    spit(dir / "spec.txt", "# regression of y on x\ndependent = y\nterms = intercept, x\n");
    const std::string out = (dir / "out.txt").string();
    const int code = run_cmd(kCli + " regress --data " + (dir / "data.csv").string() +
                             " --spec " + (dir / "spec.txt").string() + " --out-dir " +
                             (dir / "reports").string() + " > " + out);
    CHECK(code == 0);

    const std::string text = slurp(out);
    CHECK(contains(text, "Dependent variable: y"));
    CHECK(contains(text, "1.5000"));  // slope
    CHECK(contains(text, "-0.6667")); // intercept
    CHECK(contains(text, "(5.1962")); // slope t-statistic sqrt(27)

    CHECK(fs::exists(dir / "reports" / "regress.txt"));
    const std::string csv = slurp(dir / "reports" / "regress.csv");
    CHECK(contains(csv, "column,kind,name,estimate,stderr,tstat,pvalue,stars"));
    // the machine-readable file stores estimates at full precision, so locate
    // the slope row and compare its value numerically
    const std::string key = "(1),coef,x,";
    const std::size_t at = csv.find(key);
    REQUIRE(at != std::string::npos);
    const double slope = std::stod(csv.substr(at + key.size()));
    CHECK(slope == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("cli regress names a missing column on standard error") {
    const fs::path dir = fresh_dir("regress_bad");
    spit(dir / "data.csv", "date,y,x\n2020-01-01,1,1\n2020-01-02,2,2\n2020-01-03,4,3\n"
                           "2020-01-04,5,4\n");
    spit(dir / "spec.txt", "dependent = y\nterms = intercept, zzz\n");
    const std::string err = (dir / "err.txt").string();
    const int code = run_cmd(kCli + " regress --data " + (dir / "data.csv").string() +
                             " --spec " + (dir / "spec.txt").string() + " 2> " + err);
    CHECK(code == 1);
    CHECK(contains(slurp(err), "zzz"));
}

TEST_CASE("cli usage errors exit with code 1") {
    const fs::path dir = fresh_dir("usage");
    const std::string sink = " > " + (dir / "o").string() + " 2> " + (dir / "e").string();
    CHECK(run_cmd(kCli + " regress" + sink) == 1);          // missing required options
    CHECK(run_cmd(kCli + " no-such-command" + sink) == 1);  // unknown subcommand
    CHECK(run_cmd(kCli + " adf --data /nonexistent.csv" + sink) == 1); // IO error
    CHECK(run_cmd(kCli + " --help" + sink) == 0);
}

TEST_CASE("cli simulate is deterministic in the seed") {
    const fs::path dir = fresh_dir("simulate");
    const std::string flags = " simulate --mu 0 --alpha0 1e-5 --alpha1 0.1 --alpha2 0.8"
                              " --beta1 0.2 --beta2 0.4 --n 60 --burn-in 100";
    CHECK(run_cmd(kCli + flags + " --seed 5 --out " + (dir / "a.csv").string()) == 0);
    CHECK(run_cmd(kCli + flags + " --seed 5 --out " + (dir / "b.csv").string()) == 0);
    CHECK(run_cmd(kCli + flags + " --seed 6 --out " + (dir / "c.csv").string()) == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.csv") != slurp(dir / "c.csv"));

    // the file reproduces the in-process generator exactly
    SimConfig cfg;
    cfg.params = {0.0, 1e-5, 0.1, 0.8, 0.0, 0.2, 0.4};
    cfg.n = 60;
    cfg.burn_in = 100;
    cfg.seed = 5;
    const DatedSeries expected = simulate_path(cfg);
    const DatedSeries loaded = load_csv((dir / "a.csv").string(), "date", "r").series;
    CHECK(loaded.values() == expected.values());

    // the full layout exposes the internal state columns
    CHECK(run_cmd(kCli + flags + " --seed 5 --full --out " + (dir / "full.csv").string()) == 0);
    CHECK(contains(slurp(dir / "full.csv"), "date,r,eps,h,eta,s"));
}

TEST_CASE("cli fit writes reports and a skew series") {
    // build a price file by integrating a simulated return path
    SimConfig cfg;
    cfg.params = {0.05, 2e-5, 0.15, 0.8, 0.0, 0.1, 0.3};
    cfg.n = 400;
    cfg.seed = 21;
    const Eigen::VectorXd r = simulate_path(cfg).values();
    std::vector<double> prices(static_cast<std::size_t>(r.size()) + 1, 100.0);
    for (Eigen::Index i = 0; i < r.size(); ++i)
        prices[static_cast<std::size_t>(i) + 1] =
            prices[static_cast<std::size_t>(i)] * std::exp(r[i]);

    const fs::path dir = fresh_dir("fit");
    write_csv((dir / "prices.csv").string(), series_from(prices, "close"));

    const std::string base = kCli + " fit --prices " + (dir / "prices.csv").string();
    const int code = run_cmd(base + " --out-dir " + (dir / "run1").string() + " > " +
                             (dir / "out.txt").string());
    CHECK(code == 0);

    const std::string report = slurp(dir / "run1" / "fit_report.txt");
    CHECK(contains(report, "GARCH-S"));
    CHECK(contains(report, "GARCH(1,1)"));
    for (const char* name : {"mu", "alpha0", "alpha1", "alpha2", "beta0", "beta1", "beta2"})
        CHECK(contains(report, name));
    CHECK(contains(report, "Log-likelihood"));
    CHECK(contains(report, "Observations"));
    CHECK(contains(report, "Converged"));

    const std::string skew = slurp(dir / "run1" / "skew.csv");
    CHECK(contains(skew, "date,Skew"));

    // the skewed model never scores below the nested variance-only model
    double ll_gs = 0.0, ll_g11 = 0.0;
    std::istringstream csv(slurp(dir / "run1" / "fit_report.csv"));
    std::string line;
    while (std::getline(csv, line)) {
        std::istringstream cells(line);
        std::string model, kind, name, value;
        std::getline(cells, model, ',');
        std::getline(cells, kind, ',');
        std::getline(cells, name, ',');
        std::getline(cells, value, ',');
        if (kind == "stat" && name == "loglik") {
            if (model == "garchs") ll_gs = std::stod(value);
            if (model == "garch11") ll_g11 = std::stod(value);
        }
    }
    CHECK(ll_gs >= ll_g11 - 1e-6);

    // a second run is byte-identical
    CHECK(run_cmd(base + " --out-dir " + (dir / "run2").string() + " > /dev/null") == 0);
    CHECK(slurp(dir / "run1" / "fit_report.txt") == slurp(dir / "run2" / "fit_report.txt"));
    CHECK(slurp(dir / "run1" / "skew.csv") == slurp(dir / "run2" / "skew.csv"));
}
