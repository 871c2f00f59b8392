#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "simulation.hpp"

namespace groupforge {

//! `git describe` of the source tree at configure time.
std::string_view build_version();

//! One-line description of a run used as the first line of every output file.
std::string run_metadata(RunConfig const& config);

std::string run_config_json(RunConfig const& config);
//! Overlays the keys present in a JSON document onto `base`.
RunConfig parse_run_config(std::string_view json_text, RunConfig base);

std::string per_team_csv(MetricsReport const& report);
std::string per_stage_csv(MetricsReport const& report);
std::string topk_csv(MetricsReport const& report);
std::string aggregates_json(MetricsReport const& report);
std::string matchlog_csv(MetricsReport const& report);
std::string tanking_json(TankingResult const& result, RunConfig const& config);

//! Writes every file of a simulate run; returns the paths written.
std::vector<std::filesystem::path> write_report(MetricsReport const& report,
                                                std::filesystem::path const& directory);

void write_text(std::filesystem::path const& path, std::string const& text);

}  // namespace groupforge
