#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "format.hpp"

namespace groupforge {

enum class Confederation : std::uint8_t
{
    AFC,
    CAF,
    CONCACAF,
    CONMEBOL,
    OFC,
    UEFA,
};

inline constexpr int confederation_count = 6;

std::string_view to_string(Confederation c);
std::optional<Confederation> parse_confederation(std::string_view text);

//! Index of a team in its TeamTable (file order).
struct TeamId
{
    std::uint16_t index = invalid_index;

    static constexpr std::uint16_t invalid_index = 0xffff;

    constexpr bool valid() const { return index != invalid_index; }
    constexpr auto operator<=>(TeamId const&) const = default;
};

inline constexpr double home_advantage = 100.0;

struct Team
{
    std::string name;
    double elo = 0;
    Confederation confederation = Confederation::UEFA;
    bool is_host = false;
    bool playoff_entrant = false;
    std::optional<int> pot_official;
    std::optional<int> pot_imbalanced;

    std::optional<int> pot(FormatKind kind) const
    {
        return kind == FormatKind::official ? pot_official : pot_imbalanced;
    }
};

/*!
 * The 46 direct qualifiers and 6 inter-confederation play-off entrants.
 *
 * Immutable after construction; copies are cheap enough to make one per draw.
 */
class TeamTable
{
  public:
    static constexpr int team_count = 52;
    static constexpr int direct_count = 46;
    static constexpr int entrant_count = 6;
    static constexpr int host_count = 3;

    //! Validates cardinalities and uniqueness; throws ValidationError.
    explicit TeamTable(std::vector<Team> teams);

    std::size_t size() const { return teams_.size(); }
    Team const& operator[](TeamId id) const { return teams_[id.index]; }
    std::vector<Team> const& teams() const { return teams_; }

    std::optional<TeamId> find(std::string_view name) const;
    //! Like find() but throws ValidationError for unknown names.
    TeamId id_of(std::string_view name) const;

    //! Direct qualifiers (non-entrants), file order.
    std::vector<TeamId> const& direct_qualifiers() const { return direct_; }
    //! Play-off entrants, file order.
    std::vector<TeamId> const& playoff_entrants() const { return entrants_; }
    std::vector<TeamId> const& hosts() const { return hosts_; }

    //! Team ids in the given pot, ordered by Elo descending (file order on ties).
    std::vector<TeamId> pot_members(FormatKind kind, int pot) const;

  private:
    friend TeamTable assign_pots(TeamTable const&,
                                 FormatSpec const&,
                                 std::array<TeamId, 2> const&,
                                 std::optional<std::pair<TeamId, int>>);

    std::vector<Team> teams_;
    std::vector<TeamId> direct_;
    std::vector<TeamId> entrants_;
    std::vector<TeamId> hosts_;
};

//! Parse `name,elo,confederation,is_host,playoff_entrant` CSV (with header).
TeamTable load_team_table(std::istream& source);
TeamTable load_team_table_file(std::string const& path);
//! Ratings of 1 October 2024 shipped with the library.
TeamTable default_team_table();
//! The embedded CSV text behind default_team_table().
std::string_view default_team_csv();

/*!
 * Assign pots for one format given the two play-off winners.
 *
 * Hosts go to Pot 1 and play-off winners to the last pot; the remaining
 * direct qualifiers fill the free slots top-down by Elo. An optional
 * (team, pot) override places that team at the top of the given pot while
 * the others keep their order, which is how tanking is modelled.
 */
TeamTable assign_pots(TeamTable const& table,
                      FormatSpec const& format,
                      std::array<TeamId, 2> const& playoff_winners,
                      std::optional<std::pair<TeamId, int>> forced = std::nullopt);

//! Ratings used in a match: +100 for each host side.
std::pair<double, double> match_ratings(Team const& team_i, Team const& team_j);

}  // namespace groupforge
