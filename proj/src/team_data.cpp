#include "groupforge/team_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "groupforge/errors.hpp"

namespace groupforge {
namespace {

constexpr std::array<std::string_view, confederation_count> confederation_names
    = {"AFC", "CAF", "CONCACAF", "CONMEBOL", "OFC", "UEFA"};

std::string_view trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true)
    {
        auto const comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return fields;
}

bool parse_bool(std::string_view text, int line_no, char const* column)
{
    if (text == "true" || text == "1")
        return true;
    if (text == "false" || text == "0")
        return false;
    throw ValidationError("line " + std::to_string(line_no) + ": " + column
                          + " must be true/false, got '" + std::string(text) + "'");
}

double parse_elo(std::string_view text, int line_no)
{
    double value = 0;
    auto const* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
    {
        throw ValidationError("line " + std::to_string(line_no) + ": non-numeric Elo '"
                              + std::string(text) + "'");
    }
    return value;
}

//! Stable Elo-descending order; file position breaks ties.
void sort_by_elo(std::vector<TeamId>& ids, std::vector<Team> const& teams)
{
    std::stable_sort(ids.begin(), ids.end(), [&](TeamId a, TeamId b) {
        return teams[a.index].elo > teams[b.index].elo;
    });
}

}  // namespace

std::string_view to_string(Confederation c)
{
    return confederation_names[static_cast<int>(c)];
}

std::optional<Confederation> parse_confederation(std::string_view text)
{
    for (int i = 0; i < confederation_count; ++i)
    {
        if (confederation_names[i] == text)
            return static_cast<Confederation>(i);
    }
    return std::nullopt;
}

TeamTable::TeamTable(std::vector<Team> teams) : teams_(std::move(teams))
{
    if (teams_.size() != team_count)
    {
        throw ValidationError("wrong team count: expected " + std::to_string(team_count)
                              + " teams, got " + std::to_string(teams_.size()));
    }
    std::unordered_set<std::string> names;
    for (std::size_t i = 0; i < teams_.size(); ++i)
    {
        auto const& team = teams_[i];
        if (team.name.empty())
            throw ValidationError("empty team name at row " + std::to_string(i + 1));
        if (!names.insert(team.name).second)
            throw ValidationError("duplicate team name '" + team.name + "'");
        if (!std::isfinite(team.elo))
            throw ValidationError("non-finite Elo for " + team.name);
        if (team.is_host && team.playoff_entrant)
            throw ValidationError(team.name + " cannot be both host and play-off entrant");

        TeamId const id{static_cast<std::uint16_t>(i)};
        (team.playoff_entrant ? entrants_ : direct_).push_back(id);
        if (team.is_host)
            hosts_.push_back(id);
    }
    if (hosts_.size() != host_count)
    {
        throw ValidationError("host count must be 3, got " + std::to_string(hosts_.size()));
    }
    if (entrants_.size() != entrant_count)
    {
        throw ValidationError("play-off entrant count must be 6, got "
                              + std::to_string(entrants_.size()));
    }
}

std::optional<TeamId> TeamTable::find(std::string_view name) const
{
    for (std::size_t i = 0; i < teams_.size(); ++i)
    {
        if (teams_[i].name == name)
            return TeamId{static_cast<std::uint16_t>(i)};
    }
    return std::nullopt;
}

TeamId TeamTable::id_of(std::string_view name) const
{
    if (auto id = this->find(name))
        return *id;
    throw ValidationError("unknown team '" + std::string(name) + "'");
}

std::vector<TeamId> TeamTable::pot_members(FormatKind kind, int pot) const
{
    std::vector<TeamId> result;
    for (std::size_t i = 0; i < teams_.size(); ++i)
    {
        if (teams_[i].pot(kind) == pot)
            result.push_back(TeamId{static_cast<std::uint16_t>(i)});
    }
    sort_by_elo(result, teams_);
    return result;
}

TeamTable load_team_table(std::istream& source)
{
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    std::vector<Team> teams;
    while (std::getline(source, line))
    {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF"))
            view.remove_prefix(3);
        view = trim(view);
        if (view.empty() || view.starts_with('#'))
            continue;
        auto fields = split_fields(view);
        if (!header_seen)
        {
            header_seen = true;
            if (fields.size() != 5 || fields[0] != "name" || fields[1] != "elo"
                || fields[2] != "confederation" || fields[3] != "is_host"
                || fields[4] != "playoff_entrant")
            {
                throw ValidationError(
                    "team file header must be name,elo,confederation,is_host,playoff_entrant");
            }
            continue;
        }
        if (fields.size() != 5)
        {
            throw ValidationError("line " + std::to_string(line_no) + ": expected 5 fields, got "
                                  + std::to_string(fields.size()));
        }
        Team team;
        team.name = std::string(fields[0]);
        team.elo = parse_elo(fields[1], line_no);
        auto conf = parse_confederation(fields[2]);
        if (!conf)
        {
            throw ValidationError("line " + std::to_string(line_no) + ": unknown confederation '"
                                  + std::string(fields[2]) + "'");
        }
        team.confederation = *conf;
        team.is_host = parse_bool(fields[3], line_no, "is_host");
        team.playoff_entrant = parse_bool(fields[4], line_no, "playoff_entrant");
        teams.push_back(std::move(team));
    }
    if (!header_seen)
        throw ValidationError("team file is empty");
    return TeamTable(std::move(teams));
}

TeamTable load_team_table_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open team file '" + path + "'");
    return load_team_table(in);
}

TeamTable default_team_table()
{
    std::istringstream in{std::string(default_team_csv())};
    return load_team_table(in);
}

TeamTable assign_pots(TeamTable const& table,
                      FormatSpec const& format,
                      std::array<TeamId, 2> const& playoff_winners,
                      std::optional<std::pair<TeamId, int>> forced)
{
    auto const& entrants = table.playoff_entrants();
    for (auto winner : playoff_winners)
    {
        if (std::find(entrants.begin(), entrants.end(), winner) == entrants.end())
            throw ValidationError("play-off winner is not a member of the play-off slate");
    }
    if (playoff_winners[0] == playoff_winners[1])
        throw ValidationError("play-off winners must be distinct");

    int const pot_count = format.pot_count();
    std::vector<int> free_slots = format.pot_sizes;
    free_slots.front() -= TeamTable::host_count;
    free_slots.back() -= 2;

    std::vector<TeamId> ranked;
    for (auto id : table.direct_qualifiers())
    {
        if (!table[id].is_host)
            ranked.push_back(id);
    }
    sort_by_elo(ranked, table.teams_);

    if (forced)
    {
        auto [team, pot] = *forced;
        auto it = std::find(ranked.begin(), ranked.end(), team);
        if (it == ranked.end())
        {
            throw ValidationError("only non-host direct qualifiers can be moved between pots");
        }
        if (pot < 1 || pot > pot_count)
            throw ValidationError("pot " + std::to_string(pot) + " out of range");
        ranked.erase(it);
        auto offset = std::accumulate(free_slots.begin(), free_slots.begin() + (pot - 1), 0);
        ranked.insert(ranked.begin() + offset, team);
    }

    TeamTable result = table;
    auto set_pot = [&](TeamId id, int pot) {
        auto& team = result.teams_[id.index];
        (format.kind == FormatKind::official ? team.pot_official : team.pot_imbalanced) = pot;
    };
    for (auto& team : result.teams_)
    {
        (format.kind == FormatKind::official ? team.pot_official : team.pot_imbalanced)
            = std::nullopt;
    }
    for (auto id : table.hosts())
        set_pot(id, 1);
    for (auto id : playoff_winners)
        set_pot(id, pot_count);

    std::size_t next = 0;
    for (int pot = 1; pot <= pot_count; ++pot)
    {
        for (int slot = 0; slot < free_slots[pot - 1]; ++slot)
            set_pot(ranked.at(next++), pot);
    }
    return result;
}

std::pair<double, double> match_ratings(Team const& team_i, Team const& team_j)
{
    return {team_i.elo + (team_i.is_host ? home_advantage : 0.0),
            team_j.elo + (team_j.is_host ? home_advantage : 0.0)};
}

}  // namespace groupforge
