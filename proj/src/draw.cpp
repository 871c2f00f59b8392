#include "groupforge/draw.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "groupforge/errors.hpp"

namespace groupforge {
namespace {

constexpr int uefa = static_cast<int>(Confederation::UEFA);

using ConfedCounts = std::array<int, confederation_count>;

//! Adds a team to a group's counters; false once a cap is exceeded.
bool admit(ConfedCounts& counts, DrawEntry const& entry, DrawConstraints const& c)
{
    if (entry.unconstrained && c.playoff_winners_unconstrained)
        return true;
    int const conf = static_cast<int>(entry.confederation);
    int const n = ++counts[conf];
    return conf == uefa ? n <= c.uefa_max : n <= c.max_same_confed_non_uefa;
}

void check_instance(DrawInstance const& instance)
{
    if (instance.group_count <= 0)
        throw ValidationError("draw instance needs at least one group");
    for (auto const& pot : instance.pots)
    {
        if (static_cast<int>(pot.size()) != instance.group_count)
        {
            throw ValidationError("pot of size " + std::to_string(pot.size())
                                  + " does not match group count "
                                  + std::to_string(instance.group_count));
        }
    }
}

}  // namespace

bool operator==(GroupAssignment const& a, GroupAssignment const& b)
{
    if (a.tier != b.tier || a.groups.size() != b.groups.size())
        return false;
    for (std::size_t g = 0; g < a.groups.size(); ++g)
    {
        if (a.groups[g].size() != b.groups[g].size())
            return false;
        for (std::size_t p = 0; p < a.groups[g].size(); ++p)
        {
            if (a.groups[g][p].id != b.groups[g][p].id)
                return false;
        }
    }
    return true;
}

bool group_is_valid(std::span<DrawEntry const> group, DrawConstraints const& constraints)
{
    ConfedCounts counts{};
    for (auto const& entry : group)
    {
        if (!admit(counts, entry, constraints))
            return false;
    }
    return counts[uefa] >= constraints.uefa_min;
}

bool is_valid(GroupAssignment const& assignment, DrawConstraints const& constraints)
{
    return std::all_of(assignment.groups.begin(), assignment.groups.end(), [&](auto const& g) {
        return group_is_valid(g, constraints);
    });
}

GroupAssignment sample_draw(DrawInstance const& instance,
                            DrawConstraints const& constraints,
                            Stream& rng)
{
    check_instance(instance);
    int const groups = instance.group_count;
    std::size_t const pot_count = instance.pots.size();

    std::vector<ConfedCounts> counts(groups);
    std::vector<int> perm(groups);
    // chosen[p * groups + g] = index into pot p of the team placed in group g
    std::vector<int> chosen(pot_count * groups);

    for (std::uint64_t attempt = 0; attempt < constraints.attempt_cap; ++attempt)
    {
        std::fill(counts.begin(), counts.end(), ConfedCounts{});
        bool ok = true;
        for (std::size_t p = 0; p < pot_count && ok; ++p)
        {
            std::iota(perm.begin(), perm.end(), 0);
            shuffle(std::span<int>(perm), rng);
            for (int g = 0; g < groups; ++g)
            {
                chosen[p * groups + g] = perm[g];
                if (!admit(counts[g], instance.pots[p][perm[g]], constraints))
                {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok)
            continue;
        if (!std::all_of(counts.begin(), counts.end(), [&](ConfedCounts const& c) {
                return c[uefa] >= constraints.uefa_min;
            }))
        {
            continue;
        }

        GroupAssignment result;
        result.groups.resize(groups);
        result.tier.assign(groups, instance.tier);
        for (int g = 0; g < groups; ++g)
        {
            for (std::size_t p = 0; p < pot_count; ++p)
                result.groups[g].push_back(instance.pots[p][chosen[p * groups + g]]);
        }
        return result;
    }
    throw SimulationError("no valid draw found after " + std::to_string(constraints.attempt_cap)
                          + " attempts; the constraints are likely infeasible");
}

std::vector<GroupAssignment> enumerate_valid(DrawInstance const& instance,
                                             DrawConstraints const& constraints,
                                             std::uint64_t max_total)
{
    check_instance(instance);
    int const groups = instance.group_count;
    std::size_t const pot_count = instance.pots.size();

    std::uint64_t per_pot = 1;
    for (int i = 2; i <= groups; ++i)
    {
        per_pot *= i;
        if (per_pot > max_total)
            throw ValidationError("instance too large to enumerate");
    }
    std::uint64_t total = 1;
    for (std::size_t p = 0; p < pot_count; ++p)
    {
        if (total > max_total / per_pot)
            throw ValidationError("instance too large to enumerate");
        total *= per_pot;
    }

    std::vector<std::vector<int>> perms(pot_count, std::vector<int>(groups));
    for (auto& perm : perms)
        std::iota(perm.begin(), perm.end(), 0);

    std::vector<GroupAssignment> result;
    while (true)
    {
        GroupAssignment candidate;
        candidate.groups.resize(groups);
        candidate.tier.assign(groups, instance.tier);
        for (int g = 0; g < groups; ++g)
        {
            for (std::size_t p = 0; p < pot_count; ++p)
                candidate.groups[g].push_back(instance.pots[p][perms[p][g]]);
        }
        if (is_valid(candidate, constraints))
            result.push_back(std::move(candidate));

        // Odometer over the per-pot permutations, last pot fastest.
        std::size_t p = pot_count;
        while (p > 0)
        {
            --p;
            if (std::next_permutation(perms[p].begin(), perms[p].end()))
                break;
            if (p == 0)
                return result;
        }
        if (pot_count == 0)
            return result;
    }
}

std::vector<DrawInstance> make_draw_instances(TeamTable const& table, FormatSpec const& format)
{
    std::vector<DrawInstance> instances;
    for (auto const& layout : format.tiers)
    {
        DrawInstance instance;
        instance.group_count = layout.group_count;
        instance.tier = layout.tier;
        for (int pot : layout.pots)
        {
            std::vector<DrawEntry> entries;
            for (auto id : table.pot_members(format.kind, pot))
            {
                auto const& team = table[id];
                entries.push_back({id, team.confederation, team.playoff_entrant});
            }
            instance.pots.push_back(std::move(entries));
        }
        instances.push_back(std::move(instance));
    }
    return instances;
}

GroupAssignment sample_tournament_draw(TeamTable const& table,
                                       FormatSpec const& format,
                                       DrawConstraints const& constraints,
                                       Stream& rng)
{
    GroupAssignment result;
    for (auto const& instance : make_draw_instances(table, format))
    {
        auto part = sample_draw(instance, constraints, rng);
        for (auto& group : part.groups)
            result.groups.push_back(std::move(group));
        result.tier.insert(result.tier.end(), part.tier.begin(), part.tier.end());
    }
    return result;
}

}  // namespace groupforge
