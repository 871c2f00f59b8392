#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "draw.hpp"
#include "format.hpp"
#include "group_stage.hpp"
#include "stakeless.hpp"
#include "team_data.hpp"

namespace groupforge {

enum class Stage : std::uint8_t
{
    group,
    round_of_32,    //!< official only
    playoff_round,  //!< imbalanced only; reported in the Round of 32 column
    round_of_16,
    quarterfinal,
    semifinal,
    final,
};

inline constexpr int stage_count = 7;
std::string_view to_string(Stage stage);

//! Teams of the inter-confederation play-offs, ordered by Elo descending.
struct PlayoffSlate
{
    std::array<TeamId, 2> seeded{};
    std::array<TeamId, 4> unseeded{};
};

//! Pairing of the four unseeded teams in the first play-off round (by rating rank).
enum class UnseededPairing
{
    one_four,   //!< 1v4 and 2v3; top seed meets the 1v4 winner
    one_three,  //!< 1v3 and 2v4; top seed meets the 1v3 winner
    one_two,    //!< 1v2 and 3v4; top seed meets the 1v2 winner
};

//! Slate from the table; validates the confederation composition.
PlayoffSlate make_playoff_slate(TeamTable const& table);

//! The two qualifiers: [top seed's final, second seed's final]. Neutral ground.
std::array<TeamId, 2> simulate_interconf_playoffs(PlayoffSlate const& slate,
                                                  TeamTable const& table,
                                                  Stream& rng,
                                                  UnseededPairing pairing = UnseededPairing::one_four);

struct GroupTeams
{
    std::array<TeamId, group_size> ids{};
    int tier = 0;
};

/*!
 * Everything fixed before the tournament is played: qualifiers, pots and the
 * group draw. One context is shared by all simulations of the same draw.
 */
struct DrawContext
{
    FormatSpec format;
    TeamTable table;
    //! Play-off qualifiers, higher-rated first.
    std::array<TeamId, 2> playoff_winners{};
    GroupAssignment assignment;
    std::vector<GroupTeams> groups;
    //! rates[g][i][j]: goal rate of position i against position j in group g
    std::vector<std::array<std::array<double, group_size>, group_size>> rates;
    StakelessRule stakeless_rule = StakelessRule::conservative;
};

struct PotOverride
{
    TeamId team;
    int pot = 0;
};

DrawContext make_draw_context(FormatSpec const& format,
                              TeamTable const& table,
                              std::array<TeamId, 2> const& playoff_winners,
                              GroupAssignment assignment);

//! Play-offs, pot assignment and draw from one stream.
DrawContext prepare_draw(FormatSpec const& format,
                         TeamTable const& table,
                         Stream& rng,
                         std::optional<PotOverride> forced = std::nullopt,
                         DrawConstraints const& constraints = {});

struct MatchRecord
{
    Stage stage = Stage::group;
    TeamId team_a;
    TeamId team_b;
    double rating_a = 0;  //!< home-adjusted
    double rating_b = 0;
    int goals_a = -1;     //!< -1 for knockout ties
    int goals_b = -1;
    TeamId winner;        //!< invalid for a drawn group match
};

struct TeamRunResult
{
    bool participated = false;
    Stage furthest = Stage::group;
    int matches = 0;
    int group = -1;
    int tier = 0;
    int group_rank = 0;
    bool reached_round_of_16 = false;
    double group_gap_sum = 0;  //!< summed |rating gap| over the three group matches
};

struct TournamentOutcome
{
    std::vector<MatchRecord> log;
    std::vector<TeamRunResult> teams;          //!< indexed by TeamId
    std::vector<StakelessRecord> stakeless;    //!< indexed by TeamId
    std::vector<int> schedule_variants;        //!< per group
    std::vector<RankedGroup> rankings;         //!< per group, positions
    std::vector<GroupScores> scores;           //!< per group, final
    std::vector<std::pair<TeamId, TeamId>> first_knockout_round;
    TeamId champion;
};

struct RankedGroupTeams
{
    std::array<TeamId, group_size> by_rank{};
    Standings standings{};  //!< indexed by rank - 1
};

/*!
 * Round of 32 in bracket order (adjacent matches meet in the Round of 16).
 *
 * Each half doubles the 24-team bracket: 1A-2C, 2A-2B, 2D-2E, 1D-2F and the
 * winners of B, C, E, F against third-placed teams (same for G-L). The eight
 * qualified thirds are matched to those winners by a uniform bijection.
 */
std::vector<std::pair<TeamId, TeamId>>
build_bracket_official(std::span<RankedGroupTeams const> groups,
                       std::span<TeamId const> qualified_thirds,
                       Stream& rng);

struct ImbalancedBracket
{
    //! Tier 1 runner-up vs Tier 2 qualifier, eight matches.
    std::vector<std::pair<TeamId, TeamId>> playoff_round;
    //! Tier 1 winner slot k meets the winner of playoff match r16_opponent[k].
    std::array<int, 8> r16_opponent{};
};

ImbalancedBracket build_bracket_imbalanced(std::span<RankedGroupTeams const> groups, Stream& rng);

//! One tournament for a fixed draw.
TournamentOutcome play_tournament(DrawContext const& context, Stream& rng);

//! End to end: play-offs, pots, draw, tournament.
TournamentOutcome run_tournament(FormatSpec const& format, TeamTable const& table, Stream& rng);

}  // namespace groupforge
