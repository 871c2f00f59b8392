#include "groupforge/report_io.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "groupforge/errors.hpp"

#ifndef GROUPFORGE_GIT_DESCRIBE
#define GROUPFORGE_GIT_DESCRIBE "unknown"
#endif

namespace groupforge {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double value, int digits = 6)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
    return buffer;
}

std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(text);
    std::string out = "\"";
    for (char c : text)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

ordered_json metadata_json(RunConfig const& config, std::string_view units)
{
    ordered_json meta;
    meta["units"] = units;
    meta["seed"] = config.master_seed;
    meta["draws"] = config.num_draws;
    meta["sims"] = config.sims_per_draw;
    meta["format"] = to_string(config.format);
    meta["stakeless_rule"] = to_string(config.stakeless_rule);
    meta["build"] = build_version();
    return meta;
}

std::string header_line(RunConfig const& config, std::string_view units)
{
    return "# units: " + std::string(units) + "; " + run_metadata(config) + "\n";
}

}  // namespace

std::string_view build_version()
{
    return GROUPFORGE_GIT_DESCRIBE;
}

std::string run_metadata(RunConfig const& config)
{
    std::string text = "seed=" + std::to_string(config.master_seed)
                       + " draws=" + std::to_string(config.num_draws)
                       + " sims=" + std::to_string(config.sims_per_draw)
                       + " format=" + std::string(to_string(config.format))
                       + " stakeless_rule=" + std::string(to_string(config.stakeless_rule))
                       + " build=" + std::string(build_version());
    if (config.forced)
        text += " forced_pot=" + std::to_string(config.forced->pot);
    return text;
}

std::string run_config_json(RunConfig const& config)
{
    ordered_json j;
    j["units"] = "draws and sims are counts; seed is the 64-bit master seed";
    j["draws"] = config.num_draws;
    j["sims"] = config.sims_per_draw;
    j["seed"] = config.master_seed;
    j["format"] = to_string(config.format);
    j["teams"] = config.team_source;
    j["emit_matchlog"] = config.emit_matchlog;
    j["stakeless_rule"] = to_string(config.stakeless_rule);
    if (config.forced)
        j["forced_pot"] = config.forced->pot;
    j["build"] = build_version();
    return j.dump(2) + "\n";
}

RunConfig parse_run_config(std::string_view json_text, RunConfig base)
{
    ordered_json j;
    try
    {
        j = ordered_json::parse(json_text);
    }
    catch (nlohmann::json::exception const& e)
    {
        throw ValidationError(std::string("run config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ValidationError("run config must be a JSON object");

    auto count = [&](char const* key, std::uint64_t& target) {
        if (!j.contains(key))
            return;
        if (!j[key].is_number_unsigned())
            throw ValidationError(std::string("run config '") + key + "' must be a non-negative integer");
        target = j[key].get<std::uint64_t>();
    };
    try
    {
        for (auto const& [key, value] : j.items())
        {
            static constexpr std::array<std::string_view, 11> known
                = {"units",  "draws",          "seed",      "sims",        "format", "teams",
                   "emit_matchlog", "stakeless_rule", "forced_pot", "build", "threads"};
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw ValidationError("unknown run config key '" + key + "'");
        }
        count("draws", base.num_draws);
        count("sims", base.sims_per_draw);
        count("seed", base.master_seed);
        if (j.contains("format"))
            base.format = parse_format(j["format"].get<std::string>());
        if (j.contains("teams"))
            base.team_source = j["teams"].get<std::string>();
        if (j.contains("emit_matchlog"))
            base.emit_matchlog = j["emit_matchlog"].get<bool>();
        if (j.contains("stakeless_rule"))
            base.stakeless_rule = parse_stakeless_rule(j["stakeless_rule"].get<std::string>());
        if (j.contains("threads"))
            base.threads = j["threads"].get<int>();
    }
    catch (nlohmann::json::exception const& e)
    {
        throw ValidationError(std::string("run config has a value of the wrong type: ") + e.what());
    }
    return base;
}

std::string per_team_csv(MetricsReport const& report)
{
    std::string out = header_line(
        report.config,
        "probabilities in [0,1]; expected_matches per run; elo and group_elo_gap in rating points; "
        "half_width is the 99% bound");
    out += "slot,team,confederation,pot,elo,r16_probability,r16_half_width,expected_matches,"
           "group_elo_gap,s_a_min,s_a_max,s_e_min,s_e_max,s_w_min,s_w_22,s_w_31\n";
    for (std::size_t s = 0; s < report.teams.size(); ++s)
    {
        auto const& m = report.teams[s];
        out += std::to_string(s + 1) + ',' + csv_field(m.name) + ','
               + (m.pot ? std::string(to_string(m.confederation)) : "playoff") + ','
               + std::to_string(m.pot) + ',' + fixed(m.elo, 3) + ',' + fixed(m.r16_probability) + ','
               + fixed(m.r16_half_width) + ',' + fixed(m.expected_matches) + ','
               + fixed(m.group_elo_gap, 3) + ',' + fixed(m.s_a_min) + ',' + fixed(m.s_a_max) + ','
               + fixed(m.s_e_min) + ',' + fixed(m.s_e_max) + ',' + fixed(m.s_w_min) + ','
               + fixed(m.s_w_22) + ',' + fixed(m.s_w_31) + '\n';
    }
    return out;
}

std::string per_stage_csv(MetricsReport const& report)
{
    std::string out = header_line(report.config,
                                  "mean_elo_gap in rating points (home-adjusted); matches summed "
                                  "over runs; round_of_32 holds the imbalanced play-off round");
    out += "stage,matches,mean_elo_gap\n";
    for (auto const& s : report.stages)
        out += s.stage + ',' + std::to_string(s.matches) + ',' + fixed(s.mean_elo_gap, 3) + '\n';
    return out;
}

std::string topk_csv(MetricsReport const& report)
{
    std::string out = header_line(report.config,
                                  "share of matches between two of the k strongest teams in [0,1]");
    out += "k,all_matches,group_matches\n";
    for (auto const& row : report.topk)
        out += std::to_string(row.k) + ',' + fixed(row.all_matches) + ',' + fixed(row.group_matches)
               + '\n';
    return out;
}

std::string aggregates_json(MetricsReport const& report)
{
    auto const& a = report.aggregates;
    ordered_json j;
    j["metadata"] = metadata_json(report.config,
                                  "stakeless shares are per team and run in [0,1]; "
                                  "group_elo_gap in rating points");
    j["runs"] = report.runs;
    j["group_elo_gap"] = a.group_elo_gap;
    j["s_a_min"] = a.s_a_min;
    j["s_a_max"] = a.s_a_max;
    j["s_e_min"] = a.s_e_min;
    j["s_e_max"] = a.s_e_max;
    j["s_w_min"] = a.s_w_min;
    j["s_w_22"] = a.s_w_22;
    j["s_w_31"] = a.s_w_31;
    j["r16_probability_sum"] = a.r16_probability_sum;
    j["half_width_at_one_half"] = confidence_bound(0.5, report.runs);
    return j.dump(2) + "\n";
}

std::string matchlog_csv(MetricsReport const& report)
{
    std::string out = header_line(report.config, "goals per side; empty goals for knockout ties");
    out += "run_id,stage,team_a,team_b,goals_a,goals_b,winner\n";
    out += report.matchlog;
    return out;
}

std::string tanking_json(TankingResult const& r, RunConfig const& config)
{
    ordered_json j;
    j["metadata"] = metadata_json(config, "Round of 16 probabilities in [0,1]; difference in percentage points");
    j["team"] = r.team;
    j["from_pot"] = r.from_pot;
    j["to_pot"] = r.to_pot;
    j["baseline"] = r.baseline;
    j["changed"] = r.changed;
    j["difference_pp"] = 100.0 * r.difference;
    j["half_width_pp"] = 100.0 * r.half_width;
    return j.dump(2) + "\n";
}

void write_text(std::filesystem::path const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw SimulationError("failed writing '" + path.string() + "'");
}

std::vector<std::filesystem::path> write_report(MetricsReport const& report,
                                                std::filesystem::path const& directory)
{
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec)
        throw ValidationError("cannot create output directory '" + directory.string() + "'");

    std::vector<std::pair<std::string, std::string>> files = {
        {"per_team.csv", per_team_csv(report)},
        {"per_stage.csv", per_stage_csv(report)},
        {"topk.csv", topk_csv(report)},
        {"aggregates.json", aggregates_json(report)},
        {"run_config.json", run_config_json(report.config)},
    };
    if (report.config.emit_matchlog)
        files.emplace_back("matchlog.csv", matchlog_csv(report));

    std::vector<std::filesystem::path> written;
    for (auto const& [name, text] : files)
    {
        written.push_back(directory / name);
        write_text(written.back(), text);
    }
    return written;
}

}  // namespace groupforge
