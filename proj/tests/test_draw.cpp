#include "groupforge/draw.hpp"

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "groupforge/errors.hpp"
#include "groupforge/simulation.hpp"

using namespace groupforge;

namespace {

DrawEntry entry(int id, Confederation c, bool unconstrained = false)
{
    return {TeamId{static_cast<std::uint16_t>(id)}, c, unconstrained};
}

using C = Confederation;

std::vector<std::uint16_t> ids_of(GroupAssignment const& a)
{
    std::vector<std::uint16_t> out;
    for (auto const& g : a.groups)
        for (auto const& e : g)
            out.push_back(e.id.index);
    return out;
}

}  // namespace

TEST(GroupValidity, Examples)
{
    DrawConstraints const c;
    std::vector<DrawEntry> ok{entry(0, C::UEFA), entry(1, C::UEFA), entry(2, C::CAF), entry(3, C::AFC)};
    EXPECT_TRUE(group_is_valid(ok, c));

    std::vector<DrawEntry> three_uefa{entry(0, C::UEFA), entry(1, C::UEFA), entry(2, C::UEFA), entry(3, C::AFC)};
    EXPECT_FALSE(group_is_valid(three_uefa, c));

    std::vector<DrawEntry> two_caf{entry(0, C::UEFA), entry(1, C::CAF), entry(2, C::CAF), entry(3, C::AFC)};
    EXPECT_FALSE(group_is_valid(two_caf, c));

    std::vector<DrawEntry> no_uefa{entry(0, C::AFC), entry(1, C::CAF), entry(2, C::OFC), entry(3, C::CONMEBOL)};
    EXPECT_FALSE(group_is_valid(no_uefa, c));

    std::vector<DrawEntry> playoff{entry(0, C::UEFA), entry(1, C::CAF), entry(2, C::CAF, true), entry(3, C::AFC)};
    EXPECT_TRUE(group_is_valid(playoff, c));
    DrawConstraints strict;
    strict.playoff_winners_unconstrained = false;
    EXPECT_FALSE(group_is_valid(playoff, strict));
}

TEST(Enumerate, TwoGroupExample)
{
    DrawInstance instance;
    instance.group_count = 2;
    instance.pots = {{entry(0, C::UEFA), entry(1, C::CAF)}, {entry(2, C::UEFA), entry(3, C::CAF)}};
    auto const all = enumerate_valid(instance, {});
    ASSERT_EQ(all.size(), 2u);
    for (auto const& a : all)
    {
        EXPECT_TRUE(is_valid(a, {}));
        for (auto const& g : a.groups)
            EXPECT_NE(g[0].confederation, g[1].confederation);
    }
}

TEST(Enumerate, NoConflictsKeepsEverything)
{
    DrawInstance instance;
    instance.group_count = 2;
    instance.pots = {{entry(0, C::UEFA), entry(1, C::AFC)}, {entry(2, C::CAF), entry(3, C::CONMEBOL)}};
    DrawConstraints c;
    c.uefa_min = 0;
    EXPECT_EQ(enumerate_valid(instance, c).size(), 4u);
}

TEST(Enumerate, InfeasibleInstance)
{
    DrawInstance instance;
    instance.group_count = 2;
    instance.pots = {{entry(0, C::CAF), entry(1, C::CAF)}, {entry(2, C::CAF), entry(3, C::CAF)}};
    DrawConstraints c;
    c.uefa_min = 0;
    EXPECT_TRUE(enumerate_valid(instance, c).empty());
    c.attempt_cap = 1000;
    Stream rng(1);
    EXPECT_THROW(sample_draw(instance, c, rng), SimulationError);
}

TEST(Enumerate, RejectsMalformedInstances)
{
    DrawInstance instance;
    instance.group_count = 2;
    instance.pots = {{entry(0, C::UEFA)}};
    Stream rng(1);
    EXPECT_THROW(enumerate_valid(instance, {}), ValidationError);
    EXPECT_THROW(sample_draw(instance, {}, rng), ValidationError);
    instance.group_count = 0;
    instance.pots.clear();
    EXPECT_THROW(sample_draw(instance, {}, rng), ValidationError);
}

// Every valid assignment of a small instance is drawn with equal frequency.
TEST(SampleDraw, UniformOverValidAssignments)
{
    DrawInstance instance;
    instance.group_count = 3;
    instance.pots = {{entry(0, C::UEFA), entry(1, C::CONMEBOL), entry(2, C::AFC)},
                     {entry(3, C::UEFA), entry(4, C::CONMEBOL), entry(5, C::CAF)},
                     {entry(6, C::UEFA), entry(7, C::CAF), entry(8, C::AFC)}};
    auto const all = enumerate_valid(instance, {});
    ASSERT_GT(all.size(), 2u);
    std::map<std::vector<std::uint16_t>, int> index;
    for (std::size_t i = 0; i < all.size(); ++i)
        index[ids_of(all[i])] = static_cast<int>(i);

    std::vector<int> counts(all.size(), 0);
    Stream rng(17);
    int const per_cell = 400;
    int const n = per_cell * static_cast<int>(all.size());
    for (int i = 0; i < n; ++i)
    {
        auto const a = sample_draw(instance, {}, rng);
        auto it = index.find(ids_of(a));
        ASSERT_NE(it, index.end()) << "sampled an invalid assignment";
        ++counts[it->second];
    }
    double chi = 0;
    for (int c : counts)
        chi += (c - per_cell) * double(c - per_cell) / per_cell;
    EXPECT_LT(chi, chi_square_critical(static_cast<int>(all.size()) - 1, 0.001));
}

TEST(SampleDraw, ReducedWorldCupInstanceIsUniform)
{
    auto const audit = run_draw_audit(100, 3);
    EXPECT_GT(audit.valid_assignments, 1u);
    EXPECT_TRUE(audit.passed) << audit.statistic << " vs " << audit.critical;
}

TEST(SampleDraw, RealFormatsProduceValidDraws)
{
    auto const table = default_team_table();
    std::array<TeamId, 2> const winners{table.id_of("Peru"), table.id_of("Qatar")};
    for (auto const& format : {FormatSpec::official(), FormatSpec::imbalanced()})
    {
        auto const potted = assign_pots(table, format, winners);
        Stream rng(5);
        for (int d = 0; d < 200; ++d)
        {
            auto const a = sample_tournament_draw(potted, format, {}, rng);
            ASSERT_EQ(a.groups.size(), 12u);
            ASSERT_TRUE(is_valid(a, {}));
            std::set<std::uint16_t> seen;
            for (std::size_t g = 0; g < a.groups.size(); ++g)
            {
                ASSERT_EQ(a.groups[g].size(), 4u);
                auto const expected_tier = format.kind == FormatKind::official ? 0 : (g < 8 ? 1 : 2);
                EXPECT_EQ(a.tier[g], expected_tier);
                auto const& layout = format.tiers[expected_tier == 2 ? 1 : 0];
                for (std::size_t p = 0; p < 4; ++p)
                {
                    auto const& e = a.groups[g][p];
                    EXPECT_EQ(potted[e.id].pot(format.kind), layout.pots[p]);
                    seen.insert(e.id.index);
                }
            }
            EXPECT_EQ(seen.size(), 48u);
        }
    }
}
