#include "groupforge/simulation.hpp"

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "groupforge/errors.hpp"

using namespace groupforge;

namespace {

RunConfig small(FormatKind kind, std::uint64_t draws = 6, std::uint64_t sims = 20)
{
    RunConfig c;
    c.format = kind;
    c.num_draws = draws;
    c.sims_per_draw = sims;
    c.master_seed = 1234;
    return c;
}

}  // namespace

TEST(ConfidenceBound, Values)
{
    EXPECT_NEAR(confidence_bound(0.5, 1'000'000), 0.0014, 1e-6);
    EXPECT_NEAR(confidence_bound(0.2, 10'000), 0.0112, 1e-6);
    EXPECT_DOUBLE_EQ(confidence_bound(0.0, 100), 0.0);
    EXPECT_THROW(confidence_bound(1.5, 10), ValidationError);
    EXPECT_THROW(confidence_bound(0.5, 0), ValidationError);
}

TEST(ChiSquare, CriticalValueMatchesBoost)
{
    for (int df : {1, 5, 30, 200})
    {
        boost::math::chi_squared dist(df);
        EXPECT_NEAR(chi_square_critical(df, 0.001), boost::math::quantile(boost::math::complement(dist, 0.001)), 1e-9);
    }
    EXPECT_NEAR(chi_square_critical(1, 0.05), 3.841459, 1e-5);
    EXPECT_THROW(chi_square_critical(0, 0.05), ValidationError);
}

TEST(RunConfig, Validation)
{
    RunConfig c;
    EXPECT_NO_THROW(c.validate());
    c.num_draws = 0;
    EXPECT_THROW(c.validate(), ValidationError);
    c.num_draws = 1ull << 40;
    c.sims_per_draw = 1ull << 40;
    EXPECT_THROW(c.validate(), ValidationError);
    c = RunConfig{};
    c.threads = -1;
    EXPECT_THROW(c.validate(), ValidationError);
    c = RunConfig{};
    c.emit_matchlog = true;
    c.num_draws = 1000;
    c.sims_per_draw = 1000;
    EXPECT_THROW(c.validate(), ValidationError);
}

TEST(MonteCarlo, SingleRunIsComplete)
{
    auto const r = run_monte_carlo(small(FormatKind::official, 1, 1), default_team_table());
    EXPECT_EQ(r.runs, 1u);
    ASSERT_EQ(r.teams.size(), 48u);
    ASSERT_EQ(r.stages.size(), 6u);
    ASSERT_EQ(r.topk.size(), 47u);
    EXPECT_EQ(r.stages[0].matches, 72u);
    EXPECT_EQ(r.stages[1].matches, 16u);
    EXPECT_EQ(r.stages[5].matches, 1u);
    EXPECT_DOUBLE_EQ(r.aggregates.r16_probability_sum, 16.0);
}

TEST(MonteCarlo, ThreadCountDoesNotChangeResults)
{
    for (auto kind : {FormatKind::official, FormatKind::imbalanced})
    {
        auto one = small(kind);
        one.threads = 1;
        auto three = small(kind);
        three.threads = 3;
        one.emit_matchlog = three.emit_matchlog = true;
        auto const a = run_monte_carlo(one, default_team_table());
        auto const b = run_monte_carlo(three, default_team_table());
        EXPECT_TRUE(a.same_statistics(b));
        EXPECT_EQ(a.matchlog, b.matchlog);
    }
}

TEST(MonteCarlo, SerialReferenceAgrees)
{
    for (auto kind : {FormatKind::official, FormatKind::imbalanced})
    {
        auto const c = small(kind);
        auto const par = run_monte_carlo(c, default_team_table());
        auto const ser = run_monte_carlo_serial(c, default_team_table());
        ASSERT_EQ(par.runs, ser.runs);
        for (std::size_t s = 0; s < par.teams.size(); ++s)
        {
            EXPECT_NEAR(par.teams[s].r16_probability, ser.teams[s].r16_probability, 1e-12);
            EXPECT_NEAR(par.teams[s].expected_matches, ser.teams[s].expected_matches, 1e-12);
            EXPECT_NEAR(par.teams[s].s_w_min, ser.teams[s].s_w_min, 1e-9);
            EXPECT_NEAR(par.teams[s].group_elo_gap, ser.teams[s].group_elo_gap, 1e-6);
        }
        EXPECT_NEAR(par.aggregates.group_elo_gap, ser.aggregates.group_elo_gap, 1e-6);
        EXPECT_EQ(par.topk, ser.topk);
    }
}

TEST(MonteCarlo, SeedChangesResults)
{
    auto a = small(FormatKind::official);
    auto b = a;
    b.master_seed = 99;
    EXPECT_FALSE(run_monte_carlo(a, default_team_table()).same_statistics(run_monte_carlo(b, default_team_table())));
}

TEST(MonteCarlo, TeamLevelInvariants)
{
    for (auto kind : {FormatKind::official, FormatKind::imbalanced})
    {
        auto const r = run_monte_carlo(small(kind, 10, 50), default_team_table());
        EXPECT_NEAR(r.aggregates.r16_probability_sum, 16.0, 1e-9);
        double matches = 0;
        for (auto const& t : r.teams)
        {
            EXPECT_GE(t.expected_matches, 3.0);
            EXPECT_LE(t.expected_matches, 8.0);
            EXPECT_GE(t.r16_probability, 0.0);
            EXPECT_LE(t.r16_probability, 1.0);
            EXPECT_LE(t.s_a_min, t.s_a_max + 1e-12);
            EXPECT_LE(t.s_w_min, t.s_a_max + t.s_e_max + 1e-12);
            matches += t.expected_matches;
        }
        EXPECT_NEAR(matches, 2.0 * (kind == FormatKind::official ? 103 : 95), 1e-9);
        EXPECT_EQ(r.teams[0].name, "Canada");
        EXPECT_EQ(r.teams[playoff_slot_high].pot, 0);
        EXPECT_GE(r.teams[playoff_slot_high].elo, r.teams[playoff_slot_low].elo);
        // Spain is the strongest side in either format.
        EXPECT_GT(r.teams[3].r16_probability, 0.6);
    }
}

TEST(MonteCarlo, ImbalancedTierOneWinnersAlwaysReachRoundOf16)
{
    auto const r = run_monte_carlo(small(FormatKind::imbalanced), default_team_table());
    // Stage column 1 holds the eight play-off round matches per run.
    EXPECT_EQ(r.stages[1].matches, 8 * r.runs);
    EXPECT_EQ(r.stages[2].matches, 8 * r.runs);
}

TEST(TopK, OfficialStructuralValues)
{
    auto const r = run_monte_carlo(small(FormatKind::official, 10, 20), default_team_table());
    auto const& topk = r.topk;
    ASSERT_EQ(topk.front().k, 2);
    ASSERT_EQ(topk.back().k, 48);
    // Pots 1 and 2 are exactly the 24 strongest sides: one such pairing per six group matches.
    EXPECT_NEAR(topk[24 - 2].group_matches, 1.0 / 6.0, 1e-12);
    EXPECT_DOUBLE_EQ(topk[0].group_matches, 0.0);
    EXPECT_DOUBLE_EQ(topk.back().group_matches, 1.0);
    EXPECT_DOUBLE_EQ(topk.back().all_matches, 1.0);
    for (std::size_t i = 1; i < topk.size(); ++i)
    {
        EXPECT_GE(topk[i].all_matches, topk[i - 1].all_matches);
        EXPECT_GE(topk[i].group_matches, topk[i - 1].group_matches);
    }
}

TEST(TopK, DirectComputation)
{
    auto const table = default_team_table();
    std::array<TeamId, 2> const winners{table.id_of("Qatar"), table.id_of("Peru")};
    auto const ranks = strength_ranks(table, winners);
    EXPECT_EQ(ranks[table.id_of("Spain").index], 1);
    EXPECT_EQ(ranks[table.id_of("Mexico").index], 14);
    EXPECT_EQ(ranks[table.id_of("Peru").index], 47);
    EXPECT_EQ(ranks[table.id_of("Qatar").index], 48);
    EXPECT_EQ(ranks[table.id_of("Haiti").index], 0);

    std::vector<MatchRecord> log(3);
    log[0].team_a = table.id_of("Spain");
    log[0].team_b = table.id_of("Argentina");
    log[1].team_a = table.id_of("Spain");
    log[1].team_b = table.id_of("Peru");
    log[2].stage = Stage::final;
    log[2].team_a = table.id_of("Spain");
    log[2].team_b = table.id_of("Argentina");
    EXPECT_DOUBLE_EQ(top_k_ratio(log, ranks, 2, MatchScope::all), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(top_k_ratio(log, ranks, 2, MatchScope::group), 0.5);
    EXPECT_DOUBLE_EQ(top_k_ratio(log, ranks, 47, MatchScope::group), 1.0);
    EXPECT_THROW(top_k_ratio(log, ranks, 1, MatchScope::all), ValidationError);
}

TEST(Tanking, DefaultPots)
{
    auto const table = default_team_table();
    EXPECT_EQ(default_tanking_pot(table, table.id_of("Spain")), 3);
    EXPECT_EQ(default_tanking_pot(table, table.id_of("England")), 3);
    EXPECT_EQ(default_tanking_pot(table, table.id_of("Japan")), 5);
    EXPECT_EQ(default_tanking_pot(table, table.id_of("Austria")), 5);
    EXPECT_EQ(default_tanking_pot(table, table.id_of("Serbia")), 6);
    EXPECT_EQ(default_tanking_pot(table, table.id_of("Uzbekistan")), 7);
    EXPECT_EQ(default_tanking_pot(table, table.id_of("Costa Rica")), 8);
    EXPECT_THROW(default_tanking_pot(table, table.id_of("Mexico")), ValidationError);
    EXPECT_THROW(default_tanking_pot(table, table.id_of("Peru")), ValidationError);
    EXPECT_THROW(default_tanking_pot(table, table.id_of("New Zealand")), ValidationError);
}

TEST(Tanking, ArgumentChecks)
{
    auto const table = default_team_table();
    auto c = small(FormatKind::official, 2, 2);
    EXPECT_THROW(tanking_experiment("Spain", 3, c, table), ValidationError);
    c.format = FormatKind::imbalanced;
    EXPECT_THROW(tanking_experiment("Spain", 2, c, table), ValidationError);
    EXPECT_THROW(tanking_experiment("Spain", 5, c, table), ValidationError);
    EXPECT_THROW(tanking_experiment("Atlantis", 3, c, table), ValidationError);
    EXPECT_THROW(tanking_experiment("Canada", 3, c, table), ValidationError);
}

TEST(Tanking, SharedSeedBaseline)
{
    auto const table = default_team_table();
    auto c = small(FormatKind::imbalanced, 4, 25);
    auto const r = tanking_experiment("Spain", std::nullopt, c, table);
    EXPECT_EQ(r.from_pot, 1);
    EXPECT_EQ(r.to_pot, 3);
    auto const baseline = run_monte_carlo(c, table);
    EXPECT_DOUBLE_EQ(r.baseline, baseline.teams[3].r16_probability);
    EXPECT_DOUBLE_EQ(r.difference, r.changed - r.baseline);
    EXPECT_GT(r.half_width, 0.0);
}

TEST(DrawAudit, Passes)
{
    auto const a = run_draw_audit(50, 9);
    EXPECT_EQ(a.samples, 50 * a.valid_assignments);
    EXPECT_TRUE(a.passed);
    EXPECT_THROW(run_draw_audit(0, 1), ValidationError);
}

TEST(RandomState, IsWellFormed)
{
    Stream rng(1);
    for (int i = 0; i < 1000; ++i)
    {
        auto const s = random_pre_last_state(rng);
        EXPECT_NO_THROW(s.validate());
        for (double e : s.elo)
        {
            EXPECT_GE(e, 1200);
            EXPECT_LE(e, 2200);
        }
    }
}
