#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "format.hpp"
#include "random.hpp"
#include "team_data.hpp"

namespace groupforge {

struct DrawConstraints
{
    int max_same_confed_non_uefa = 1;
    int uefa_min = 1;
    int uefa_max = 2;
    //! Play-off winners count toward no confederation.
    bool playoff_winners_unconstrained = true;
    std::uint64_t attempt_cap = 1'000'000;
};

//! A team as seen by the draw: only its confederation matters.
struct DrawEntry
{
    TeamId id;
    Confederation confederation = Confederation::UEFA;
    bool unconstrained = false;
};

//! Pots feeding one set of groups; every pot holds exactly `group_count` teams.
struct DrawInstance
{
    std::vector<std::vector<DrawEntry>> pots;
    int group_count = 0;
    int tier = 0;
};

struct GroupAssignment
{
    //! groups[g][p] is the team drawn from the p-th pot of the group's tier.
    std::vector<std::vector<DrawEntry>> groups;
    std::vector<int> tier;  //!< per group: 0 untiered, 1 or 2

    friend bool operator==(GroupAssignment const& a, GroupAssignment const& b);
};

bool group_is_valid(std::span<DrawEntry const> group, DrawConstraints const& constraints);
bool is_valid(GroupAssignment const& assignment, DrawConstraints const& constraints);

/*!
 * Uniform draw over valid assignments by rejection.
 *
 * Each attempt maps an independent uniform permutation of every pot onto the
 * groups. An attempt is abandoned as soon as a partially filled group breaks
 * a constraint, which yields the same accepted distribution as checking the
 * full assignment. Throws SimulationError after `attempt_cap` rejections.
 */
GroupAssignment sample_draw(DrawInstance const& instance,
                            DrawConstraints const& constraints,
                            Stream& rng);

//! All valid labelled assignments of a small instance, in lexicographic order.
std::vector<GroupAssignment> enumerate_valid(DrawInstance const& instance,
                                             DrawConstraints const& constraints,
                                             std::uint64_t max_total = 10'000'000);

//! Draw instances (one per tier) for a table whose pots are assigned.
std::vector<DrawInstance> make_draw_instances(TeamTable const& table, FormatSpec const& format);

//! Sample every tier and concatenate groups in tier order.
GroupAssignment sample_tournament_draw(TeamTable const& table,
                                       FormatSpec const& format,
                                       DrawConstraints const& constraints,
                                       Stream& rng);

}  // namespace groupforge
