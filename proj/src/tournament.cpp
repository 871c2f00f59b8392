#include "groupforge/tournament.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "groupforge/elo_model.hpp"
#include "groupforge/errors.hpp"

namespace groupforge {
namespace {

class Runner
{
  public:
    Runner(DrawContext const& context, Stream& rng) : ctx_(context), rng_(rng)
    {
        out_.log.reserve(context.format.match_budget);
        out_.teams.resize(context.table.size());
        out_.stakeless.resize(context.table.size());
        out_.schedule_variants.reserve(context.groups.size());
        out_.rankings.reserve(context.groups.size());
        out_.scores.reserve(context.groups.size());
    }

    TournamentOutcome run()
    {
        std::vector<RankedGroupTeams> ranked;
        ranked.reserve(ctx_.groups.size());
        for (std::size_t g = 0; g < ctx_.groups.size(); ++g)
            ranked.push_back(this->play_group_stage(static_cast<int>(g)));

        if (ctx_.format.kind == FormatKind::official)
            this->official_knockout(ranked);
        else
            this->imbalanced_knockout(ranked);
        return std::move(out_);
    }

  private:
    Team const& team(TeamId id) const { return ctx_.table[id]; }

    RankedGroupTeams play_group_stage(int g)
    {
        auto const& group = ctx_.groups[g];
        auto const& rates = ctx_.rates[g];
        auto const schedule = make_schedule(rng_);
        out_.schedule_variants.push_back(schedule.last_round_variant);

        std::array<Team const*, group_size> teams{};
        for (int i = 0; i < group_size; ++i)
        {
            teams[i] = &this->team(group.ids[i]);
            auto& result = out_.teams[group.ids[i].index];
            result.participated = true;
            result.group = g;
            result.tier = group.tier;
        }

        GroupScores scores;
        auto play_round = [&](std::array<Fixture, 2> const& round) {
            for (auto const& f : round)
            {
                Scoreline s;
                s.goals_i = sample_poisson(rates[f.first][f.second], rng_);
                s.goals_j = sample_poisson(rates[f.second][f.first], rng_);
                scores.record(f.first, f.second, s);
                this->log_group_match(group.ids[f.first], group.ids[f.second], s);
            }
        };
        play_round(schedule.rounds[0]);
        play_round(schedule.rounds[1]);

        auto const state = make_pre_last_state(scores, schedule, teams);
        auto const records = evaluate_group_stakeless(state, group.tier, ctx_.stakeless_rule);
        for (int i = 0; i < group_size; ++i)
            out_.stakeless[group.ids[i].index] = records[i];

        play_round(schedule.rounds[2]);

        std::array<double, group_size> elo{};
        for (int i = 0; i < group_size; ++i)
            elo[i] = teams[i]->elo;
        auto const order = rank_group(scores, elo);
        auto const standings = compute_standings(scores);

        RankedGroupTeams result;
        for (int r = 0; r < group_size; ++r)
        {
            result.by_rank[r] = group.ids[order[r]];
            result.standings[r] = standings[order[r]];
            out_.teams[group.ids[order[r]].index].group_rank = r + 1;
        }
        out_.rankings.push_back(order);
        out_.scores.push_back(scores);
        return result;
    }

    void log_group_match(TeamId a, TeamId b, Scoreline s)
    {
        auto [ra, rb] = match_ratings(this->team(a), this->team(b));
        MatchRecord record;
        record.stage = Stage::group;
        record.team_a = a;
        record.team_b = b;
        record.rating_a = ra;
        record.rating_b = rb;
        record.goals_a = s.goals_i;
        record.goals_b = s.goals_j;
        if (s.goals_i != s.goals_j)
            record.winner = s.goals_i > s.goals_j ? a : b;
        out_.log.push_back(record);

        double const gap = std::abs(ra - rb);
        for (auto id : {a, b})
        {
            auto& result = out_.teams[id.index];
            ++result.matches;
            result.group_gap_sum += gap;
        }
    }

    TeamId play_knockout(TeamId a, TeamId b, Stage stage)
    {
        auto const& ta = this->team(a);
        auto const& tb = this->team(b);
        auto [ra, rb] = match_ratings(ta, tb);
        bool const a_wins = rng_.bernoulli(win_expectancy(ra, rb));
        TeamId const winner = a_wins ? a : b;

        MatchRecord record;
        record.stage = stage;
        record.team_a = a;
        record.team_b = b;
        record.rating_a = ra;
        record.rating_b = rb;
        record.winner = winner;
        out_.log.push_back(record);

        for (auto id : {a, b})
        {
            auto& result = out_.teams[id.index];
            ++result.matches;
            result.furthest = stage;
            if (stage == Stage::round_of_16)
                result.reached_round_of_16 = true;
        }
        return winner;
    }

    //! Plays a bracket (adjacent winners meet) from `first_stage` through the final.
    void play_bracket(std::vector<TeamId> entrants, Stage first_stage)
    {
        auto stage = first_stage;
        while (entrants.size() > 1)
        {
            std::vector<TeamId> next;
            next.reserve(entrants.size() / 2);
            for (std::size_t i = 0; i + 1 < entrants.size(); i += 2)
                next.push_back(this->play_knockout(entrants[i], entrants[i + 1], stage));
            entrants = std::move(next);
            stage = stage == Stage::round_of_32 ? Stage::round_of_16
                                                : static_cast<Stage>(static_cast<int>(stage) + 1);
        }
        out_.champion = entrants.front();
    }

    void official_knockout(std::vector<RankedGroupTeams> const& ranked)
    {
        std::vector<ThirdPlaced> thirds;
        thirds.reserve(ranked.size());
        for (auto const& group : ranked)
        {
            auto const& s = group.standings[2];
            thirds.push_back({group.by_rank[2], s.points, s.goal_difference(), s.goals_for,
                              this->team(group.by_rank[2]).elo});
        }
        auto const order = rank_third_placed(thirds);
        std::vector<TeamId> qualified;
        for (int i = 0; i < 8; ++i)
            qualified.push_back(thirds[order[i]].team);

        auto const pairs = build_bracket_official(ranked, qualified, rng_);
        out_.first_knockout_round = pairs;
        std::vector<TeamId> entrants;
        for (auto const& [a, b] : pairs)
        {
            entrants.push_back(a);
            entrants.push_back(b);
        }
        // Survivors of the Round of 32 reach the Round of 16.
        this->play_bracket(std::move(entrants), Stage::round_of_32);
    }

    void imbalanced_knockout(std::vector<RankedGroupTeams> const& ranked)
    {
        auto const bracket = build_bracket_imbalanced(ranked, rng_);
        out_.first_knockout_round = bracket.playoff_round;
        std::vector<TeamId> playoff_winners;
        for (auto const& [a, b] : bracket.playoff_round)
            playoff_winners.push_back(this->play_knockout(a, b, Stage::playoff_round));

        std::vector<TeamId> entrants;
        for (int k = 0; k < 8; ++k)
        {
            entrants.push_back(ranked[k].by_rank[0]);
            entrants.push_back(playoff_winners[bracket.r16_opponent[k]]);
        }
        this->play_bracket(std::move(entrants), Stage::round_of_16);
    }

    DrawContext const& ctx_;
    Stream& rng_;
    TournamentOutcome out_;
};

}  // namespace

std::string_view to_string(Stage stage)
{
    switch (stage)
    {
        case Stage::group: return "group";
        case Stage::round_of_32: return "round_of_32";
        case Stage::playoff_round: return "playoff_round";
        case Stage::round_of_16: return "round_of_16";
        case Stage::quarterfinal: return "quarterfinal";
        case Stage::semifinal: return "semifinal";
        case Stage::final: return "final";
    }
    return "?";
}

PlayoffSlate make_playoff_slate(TeamTable const& table)
{
    auto entrants = table.playoff_entrants();
    std::array<int, confederation_count> count{};
    for (auto id : entrants)
        ++count[static_cast<int>(table[id].confederation)];
    auto n = [&](Confederation c) { return count[static_cast<int>(c)]; };
    if (n(Confederation::AFC) != 1 || n(Confederation::CAF) != 1 || n(Confederation::CONMEBOL) != 1
        || n(Confederation::OFC) != 1 || n(Confederation::CONCACAF) != 2)
    {
        throw ValidationError(
            "play-off slate must hold one AFC, CAF, CONMEBOL, OFC team and two CONCACAF teams");
    }
    std::stable_sort(entrants.begin(), entrants.end(),
                     [&](TeamId a, TeamId b) { return table[a].elo > table[b].elo; });
    PlayoffSlate slate;
    std::copy_n(entrants.begin(), 2, slate.seeded.begin());
    std::copy_n(entrants.begin() + 2, 4, slate.unseeded.begin());
    return slate;
}

std::array<TeamId, 2> simulate_interconf_playoffs(PlayoffSlate const& slate,
                                                  TeamTable const& table,
                                                  Stream& rng,
                                                  UnseededPairing pairing)
{
    auto play = [&](TeamId a, TeamId b) {
        // Neutral ground: raw ratings.
        return rng.bernoulli(win_expectancy(table[a].elo, table[b].elo)) ? a : b;
    };
    auto const& u = slate.unseeded;
    std::array<std::array<int, 2>, 2> semis{};
    switch (pairing)
    {
        case UnseededPairing::one_four: semis = {{{0, 3}, {1, 2}}}; break;
        case UnseededPairing::one_three: semis = {{{0, 2}, {1, 3}}}; break;
        case UnseededPairing::one_two: semis = {{{0, 1}, {2, 3}}}; break;
    }
    TeamId const first = play(u[semis[0][0]], u[semis[0][1]]);
    TeamId const second = play(u[semis[1][0]], u[semis[1][1]]);
    return {play(slate.seeded[0], first), play(slate.seeded[1], second)};
}

DrawContext make_draw_context(FormatSpec const& format,
                              TeamTable const& table,
                              std::array<TeamId, 2> const& playoff_winners,
                              GroupAssignment assignment)
{
    if (static_cast<int>(assignment.groups.size()) != format.group_count)
        throw ValidationError("draw does not have the format's group count");

    DrawContext ctx{format, table, playoff_winners, std::move(assignment), {}, {}};
    if (table[ctx.playoff_winners[1]].elo > table[ctx.playoff_winners[0]].elo)
        std::swap(ctx.playoff_winners[0], ctx.playoff_winners[1]);

    for (std::size_t g = 0; g < ctx.assignment.groups.size(); ++g)
    {
        auto const& drawn = ctx.assignment.groups[g];
        if (drawn.size() != group_size)
            throw ValidationError("every group must hold four teams");
        GroupTeams group;
        group.tier = ctx.assignment.tier[g];
        std::array<std::array<double, group_size>, group_size> rates{};
        for (int i = 0; i < group_size; ++i)
            group.ids[i] = drawn[i].id;
        for (int i = 0; i < group_size; ++i)
        {
            for (int j = i + 1; j < group_size; ++j)
            {
                auto [ri, rj] = group_match_rates(table[group.ids[i]], table[group.ids[j]]);
                rates[i][j] = ri.lambda;
                rates[j][i] = rj.lambda;
            }
        }
        ctx.groups.push_back(group);
        ctx.rates.push_back(rates);
    }
    return ctx;
}

DrawContext prepare_draw(FormatSpec const& format,
                         TeamTable const& table,
                         Stream& rng,
                         std::optional<PotOverride> forced,
                         DrawConstraints const& constraints)
{
    auto const slate = make_playoff_slate(table);
    auto const winners = simulate_interconf_playoffs(slate, table, rng);
    std::optional<std::pair<TeamId, int>> override_pot;
    if (forced)
        override_pot = std::pair{forced->team, forced->pot};
    auto potted = assign_pots(table, format, winners, override_pot);
    auto assignment = sample_tournament_draw(potted, format, constraints, rng);
    return make_draw_context(format, potted, winners, std::move(assignment));
}

std::vector<std::pair<TeamId, TeamId>>
build_bracket_official(std::span<RankedGroupTeams const> groups,
                       std::span<TeamId const> qualified_thirds,
                       Stream& rng)
{
    if (groups.size() != 12 || qualified_thirds.size() != 8)
        throw ValidationError("official bracket needs 12 groups and 8 third-placed teams");

    std::array<TeamId, 8> thirds{};
    std::copy(qualified_thirds.begin(), qualified_thirds.end(), thirds.begin());
    shuffle(std::span<TeamId>(thirds), rng);

    auto winner = [&](int g) { return groups[g].by_rank[0]; };
    auto runner_up = [&](int g) { return groups[g].by_rank[1]; };

    // Groups A..F are 0..5; the second half (G..L) mirrors the first.
    std::vector<std::pair<TeamId, TeamId>> pairs;
    int next_third = 0;
    for (int half = 0; half < 2; ++half)
    {
        int const o = 6 * half;
        enum { A, B, C, D, E, F };
        pairs.emplace_back(winner(o + B), thirds[next_third++]);
        pairs.emplace_back(winner(o + A), runner_up(o + C));
        pairs.emplace_back(runner_up(o + D), runner_up(o + E));
        pairs.emplace_back(winner(o + F), thirds[next_third++]);
        pairs.emplace_back(winner(o + C), thirds[next_third++]);
        pairs.emplace_back(runner_up(o + A), runner_up(o + B));
        pairs.emplace_back(winner(o + E), thirds[next_third++]);
        pairs.emplace_back(winner(o + D), runner_up(o + F));
    }
    return pairs;
}

ImbalancedBracket build_bracket_imbalanced(std::span<RankedGroupTeams const> groups, Stream& rng)
{
    if (groups.size() != 12)
        throw ValidationError("imbalanced bracket needs 8 Tier 1 and 4 Tier 2 groups");

    std::array<TeamId, 8> tier2{};
    for (int g = 0; g < 4; ++g)
    {
        tier2[g] = groups[8 + g].by_rank[0];
        tier2[4 + g] = groups[8 + g].by_rank[1];
    }
    shuffle(std::span<TeamId>(tier2), rng);

    ImbalancedBracket bracket;
    for (int g = 0; g < 8; ++g)
        bracket.playoff_round.emplace_back(groups[g].by_rank[1], tier2[g]);
    std::iota(bracket.r16_opponent.begin(), bracket.r16_opponent.end(), 0);
    shuffle(std::span<int>(bracket.r16_opponent), rng);
    return bracket;
}

TournamentOutcome play_tournament(DrawContext const& context, Stream& rng)
{
    return Runner(context, rng).run();
}

TournamentOutcome run_tournament(FormatSpec const& format, TeamTable const& table, Stream& rng)
{
    auto const context = prepare_draw(format, table, rng);
    return play_tournament(context, rng);
}

}  // namespace groupforge
