#pragma once

#include "ial/harness.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ial {

inline constexpr std::string_view kRecordsHeader =
    "experiment_id,sweep_param,sweep_value,estimator,replicate,seed,error,k_used,ell_used,wall_time_ms";
inline constexpr std::string_view kAggregateHeader = "sweep_param,sweep_value,estimator,mean_error,stderr,count";
inline constexpr std::string_view kTargetsHeader = "sweep_param,sweep_value,replicate,target_value";

// Shortest-round-trip is not used: every real is written with 17 significant
// digits, locale-independent.
std::string format_real(double v);

std::string records_csv(const std::vector<ResultRecord>& records);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);
// One row per (sweep value, replicate): the ground truth the errors refer to.
std::string targets_csv(const std::vector<ResultRecord>& records);

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Writes bytes verbatim (LF line endings preserved). Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view content);

} // namespace ial
