#include "groupforge/report_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "groupforge/errors.hpp"

using namespace groupforge;

namespace {

MetricsReport tiny_report(bool matchlog = false)
{
    RunConfig c;
    c.num_draws = 2;
    c.sims_per_draw = 3;
    c.master_seed = 5;
    c.emit_matchlog = matchlog;
    return run_monte_carlo(c, default_team_table());
}

std::vector<std::string> lines(std::string const& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        out.push_back(line);
    return out;
}

}  // namespace

TEST(Metadata, ContainsRunIdentity)
{
    RunConfig c;
    c.master_seed = 7;
    c.num_draws = 3;
    c.sims_per_draw = 4;
    c.format = FormatKind::imbalanced;
    auto const m = run_metadata(c);
    EXPECT_NE(m.find("seed=7"), std::string::npos);
    EXPECT_NE(m.find("draws=3"), std::string::npos);
    EXPECT_NE(m.find("sims=4"), std::string::npos);
    EXPECT_NE(m.find("format=imbalanced"), std::string::npos);
    EXPECT_NE(m.find("build="), std::string::npos);
    EXPECT_FALSE(build_version().empty());
}

TEST(Csv, HeadersAndRowCounts)
{
    auto const r = tiny_report();
    auto const team = lines(per_team_csv(r));
    ASSERT_EQ(team.size(), 2u + 48u);
    EXPECT_EQ(team[0].rfind("# units:", 0), 0u);
    EXPECT_EQ(team[1].rfind("slot,team,confederation,pot,elo,r16_probability", 0), 0u);
    EXPECT_EQ(team[2].rfind("1,Canada,CONCACAF,1,", 0), 0u);
    EXPECT_NE(team.back().find(",playoff,0,"), std::string::npos);

    auto const stage = lines(per_stage_csv(r));
    ASSERT_EQ(stage.size(), 2u + 6u);
    EXPECT_EQ(stage[1], "stage,matches,mean_elo_gap");
    EXPECT_EQ(stage[2].rfind("group,432,", 0), 0u);

    auto const topk = lines(topk_csv(r));
    ASSERT_EQ(topk.size(), 2u + 47u);
    EXPECT_EQ(topk.back().rfind("48,1.000000,1.000000", 0), 0u);
}

TEST(Json, AggregatesAndConfig)
{
    auto const r = tiny_report();
    auto const agg = aggregates_json(r);
    EXPECT_NE(agg.find("\"metadata\""), std::string::npos);
    EXPECT_NE(agg.find("\"s_w_31\""), std::string::npos);
    EXPECT_NE(agg.find("\"runs\": 6"), std::string::npos);

    auto const text = run_config_json(r.config);
    auto const back = parse_run_config(text, RunConfig{});
    EXPECT_EQ(back.num_draws, 2u);
    EXPECT_EQ(back.sims_per_draw, 3u);
    EXPECT_EQ(back.master_seed, 5u);
    EXPECT_EQ(back.format, FormatKind::official);
}

TEST(Json, ParseErrors)
{
    RunConfig const base;
    EXPECT_THROW(parse_run_config("{", base), ValidationError);
    EXPECT_THROW(parse_run_config("[1]", base), ValidationError);
    EXPECT_THROW(parse_run_config(R"({"draws": -1})", base), ValidationError);
    EXPECT_THROW(parse_run_config(R"({"draws": "ten"})", base), ValidationError);
    EXPECT_THROW(parse_run_config(R"({"format": "swiss"})", base), ValidationError);
    EXPECT_THROW(parse_run_config(R"({"colour": "red"})", base), ValidationError);
    EXPECT_THROW(parse_run_config(R"({"emit_matchlog": 3})", base), ValidationError);
    auto const c = parse_run_config(R"({"sims": 7, "stakeless_rule": "exhaustive"})", base);
    EXPECT_EQ(c.sims_per_draw, 7u);
    EXPECT_EQ(c.num_draws, base.num_draws);
    EXPECT_EQ(c.stakeless_rule, StakelessRule::exhaustive);
}

TEST(Files, WriteReport)
{
    auto const dir = std::filesystem::temp_directory_path() / "groupforge_report_io_test";
    std::filesystem::remove_all(dir);
    auto const r = tiny_report(true);
    auto const written = write_report(r, dir);
    ASSERT_EQ(written.size(), 6u);
    for (auto const& p : written)
        EXPECT_TRUE(std::filesystem::exists(p)) << p;
    std::ifstream in(dir / "matchlog.csv");
    std::string first;
    std::string header;
    std::getline(in, first);
    std::getline(in, header);
    EXPECT_EQ(header, "run_id,stage,team_a,team_b,goals_a,goals_b,winner");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line))
        ++rows;
    EXPECT_EQ(rows, 6u * 103u);
    std::filesystem::remove_all(dir);
}

TEST(Files, TankingJson)
{
    TankingResult t{"Spain", 1, 3, 0.95, 0.80, -0.15, 0.01};
    RunConfig c;
    c.format = FormatKind::imbalanced;
    auto const text = tanking_json(t, c);
    EXPECT_NE(text.find("\"difference_pp\": -15"), std::string::npos);
    EXPECT_NE(text.find("\"to_pot\": 3"), std::string::npos);
}
