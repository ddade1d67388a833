#pragma once

#include <optional>
#include <string>
#include <vector>

#include "garchs/date.hpp"
#include "garchs/series.hpp"

namespace garchs {

/// One input file of the study pipeline. An empty value_column means the
/// first non-date column of the file.
struct PipelineInput {
    std::string path;
    std::string value_column;
};

struct PipelineConfig {
    PipelineInput prices;
    PipelineInput cases;
    PipelineInput epu;
    std::optional<PipelineInput> emu;
    std::optional<PipelineInput> emv_id;
    std::string date_column = "date";
    Date cutoff{2020, 1, 21};
    int max_p = 3;
    int max_q = 3;
    /// Which lag-order selections drive the later tables: "aic", "sc" or
    /// "both" (SC orders first, then AIC, each giving one column set).
    std::string criterion = "both";
    std::string out_dir = ".";
};

struct PipelineResult {
    bool fit_converged = true;
    std::vector<std::string> files; // paths written, in write order
    Eigen::Index aligned_rows = 0;
};

/// Runs the full study: fits the return model, extracts the skew series,
/// aligns it with the transformed regressors, and writes the descriptive,
/// correlation and regression tables (plus full-precision CSV companions)
/// into out_dir. Throws on load, alignment or regression failure with the
/// failing file or regression named.
PipelineResult run_pipeline(const PipelineConfig& config);

} // namespace garchs
