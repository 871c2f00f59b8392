#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "group_stage.hpp"

namespace groupforge {

/*!
 * Grouping of final group ranks into outcome-equivalent prizes.
 *
 * Q2 {1,2|3,4} and Q3 {1,2,3|4} bracket the official format where two or
 * three teams may advance; THREE_PRIZE {1,2|3|4} is the conservative
 * official variant; TIER1 {1|2|3,4} and TIER2 {1,2|3,4} are the imbalanced
 * Tier 1 and Tier 2 groups.
 */
enum class PrizePartition : std::uint8_t
{
    Q2,
    Q3,
    THREE_PRIZE,
    TIER1,
    TIER2,
};

inline constexpr int partition_count = 5;
inline constexpr std::array<PrizePartition, partition_count> all_partitions
    = {PrizePartition::Q2, PrizePartition::Q3, PrizePartition::THREE_PRIZE,
       PrizePartition::TIER1, PrizePartition::TIER2};

std::string_view to_string(PrizePartition p);

//! Prize class (0 = best) of a 1-based rank.
int prize_class(PrizePartition partition, int rank);
//! Whether a prize class carries qualification for the next stage.
bool is_qualifying_class(PrizePartition partition, int prize);

//! Bit set of prize classes.
using PrizeSet = std::uint8_t;

inline int prize_count(PrizeSet set) { return __builtin_popcount(set); }

//! A group after two rounds, with the simultaneous last round still to play.
struct PreLastState
{
    GroupScores scores;                   //!< rounds 1 and 2
    std::array<Fixture, 2> last_round{};
    std::array<double, group_size> elo{};
    std::array<bool, group_size> is_host{};

    //! Throws ValidationError unless every team has played exactly twice and
    //! the last round completes the round robin.
    void validate() const;

    std::array<int, group_size> points() const;
    int opponent(int team) const;
};

//! Snapshot of a group between its second and last round.
PreLastState make_pre_last_state(GroupScores const& after_two_rounds,
                                 GroupSchedule const& schedule,
                                 std::array<Team const*, group_size> const& teams);

/*!
 * Prize classes a team can still reach.
 *
 * Every win/draw/loss combination of the remaining fixtures is enumerated.
 * Ties on points are treated as breakable either way, so the result is a
 * superset of the classes reachable under the full tie-breaking rules.
 */
PrizeSet reachable_prizes(std::array<int, group_size> const& points,
                          std::span<Fixture const> remaining,
                          int team,
                          PrizePartition partition);

PrizeSet prize_interval(PreLastState const& state, int team, PrizePartition partition);

//! Points-only variant; validates that the points are reachable in two matches.
PrizeSet prize_interval_from_points(std::array<int, group_size> const& points,
                                    std::array<Fixture, 2> const& last_round,
                                    int team,
                                    PrizePartition partition);

bool detect_stakeless(PreLastState const& state, int team, PrizePartition partition);

enum class StakeStatus
{
    none,
    qualified,
    eliminated,
};

StakeStatus classify(PreLastState const& state, int team, PrizePartition partition, bool indicator);

//! Win expectancy of the team in its last-round match (home-adjusted ratings).
double weight(PreLastState const& state, int team);

/*!
 * Exhaustive oracle: realized prize classes over every pair of last-round
 * scorelines with at most `max_goals` per side, ranked with rank_group.
 * Throws ValidationError if max_goals > 8.
 */
PrizeSet oracle_enumerate(PreLastState const& state, int team, PrizePartition partition, int max_goals);

//! Oracle sets for every team and partition at once, [team][partition].
std::array<std::array<PrizeSet, partition_count>, group_size>
oracle_enumerate_all(PreLastState const& state, int max_goals);

/*!
 * Per-team stakeless indicators for one run.
 *
 * For official groups (tier 0) the min/max pairs bracket two vs three
 * qualifiers; for imbalanced groups min and max coincide and the three
 * weighted variants are equal.
 */
struct StakelessRecord
{
    std::uint8_t stakeless_mask = 0;  //!< bit per PrizePartition evaluated
    bool a_min = false;
    bool a_max = false;
    bool e_min = false;
    bool e_max = false;
    double weight = 0;
    double w_min = 0;
    double w_22 = 0;
    double w_31 = 0;
};

StakelessRecord evaluate_stakeless(PreLastState const& state, int team, int tier);

enum class StakelessRule
{
    conservative,  //!< points only, ties breakable either way
    exhaustive,    //!< every last-round scoreline up to a goal cap, full tie-breaking
};

std::string_view to_string(StakelessRule rule);
//! Throws ValidationError on anything but "conservative"/"exhaustive".
StakelessRule parse_stakeless_rule(std::string_view text);

//! Records for the four positions of a group under either rule.
std::array<StakelessRecord, group_size> evaluate_group_stakeless(PreLastState const& state,
                                                                 int tier,
                                                                 StakelessRule rule,
                                                                 int max_goals = 6);

}  // namespace groupforge
