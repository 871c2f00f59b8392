#pragma once

#include <array>
#include <span>
#include <vector>

#include "elo_model.hpp"
#include "random.hpp"
#include "team_data.hpp"

namespace groupforge {

//! Teams within a group are addressed by position 0..3 (= pot label 1..4).
inline constexpr int group_size = 4;

struct Fixture
{
    int first = 0;
    int second = 0;
};

/*!
 * Single round robin of a four-team group.
 *
 * Variant 0, 1, 2 puts 1v2&3v4, 1v3&2v4, 1v4&2v3 in the last round.
 */
struct GroupSchedule
{
    std::array<std::array<Fixture, 2>, 3> rounds{};
    int last_round_variant = 0;

    static GroupSchedule with_last_round(int variant, bool swap_first_rounds = false);
    std::array<Fixture, 2> const& last_round() const { return rounds[2]; }
};

GroupSchedule make_schedule(Stream& rng);

//! Scorelines recorded so far within a group.
struct GroupScores
{
    std::array<std::array<int, group_size>, group_size> goals{};
    std::array<std::array<bool, group_size>, group_size> played{};

    void record(int i, int j, Scoreline s)
    {
        goals[i][j] = s.goals_i;
        goals[j][i] = s.goals_j;
        played[i][j] = played[j][i] = true;
    }
    void clear(int i, int j)
    {
        goals[i][j] = goals[j][i] = 0;
        played[i][j] = played[j][i] = false;
    }
    int matches_played(int i) const;
};

struct TeamStanding
{
    int points = 0;
    int goals_for = 0;
    int goals_against = 0;
    int played = 0;

    int goal_difference() const { return goals_for - goals_against; }
};

using Standings = std::array<TeamStanding, group_size>;

inline int match_points(int scored, int conceded)
{
    return scored > conceded ? 3 : (scored == conceded ? 1 : 0);
}

Standings compute_standings(GroupScores const& scores);

//! Positions ordered from rank 1 to rank 4.
using RankedGroup = std::array<int, group_size>;

/*!
 * Final group order.
 *
 * Points first; within each set tied on points, head-to-head points, goal
 * difference and goals scored, reapplied to any subset that remains tied
 * after a split; then overall goal difference, goals scored and finally the
 * higher rating (position order if ratings are equal).
 */
RankedGroup rank_group(GroupScores const& scores, std::array<double, group_size> const& elo);

//! Play all six matches of a schedule.
GroupScores play_group(std::array<Team const*, group_size> const& teams,
                       GroupSchedule const& schedule,
                       Stream& rng);

struct ThirdPlaced
{
    TeamId team;
    int points = 0;
    int goal_difference = 0;
    int goals_for = 0;
    double elo = 0;
};

//! Ordering (indices into `entries`) by points, goal difference, goals, rating.
std::vector<int> rank_third_placed(std::span<ThirdPlaced const> entries);

}  // namespace groupforge
