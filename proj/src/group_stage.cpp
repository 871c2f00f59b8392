#include "groupforge/group_stage.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace groupforge {
namespace {

constexpr std::array<std::array<Fixture, 2>, 3> matchings = {{
    {{{0, 1}, {2, 3}}},
    {{{0, 2}, {1, 3}}},
    {{{0, 3}, {1, 2}}},
}};

//! A subset of group positions, at most four.
struct Block
{
    std::array<int, group_size> items{};
    int size = 0;

    int* begin() { return items.data(); }
    int* end() { return items.data() + size; }
};

struct HeadToHead
{
    int points = 0;
    int goal_difference = 0;
    int goals_for = 0;

    auto key() const { return std::tie(points, goal_difference, goals_for); }
};

class Ranker
{
  public:
    Ranker(GroupScores const& scores, std::array<double, group_size> const& elo)
        : scores_(scores), elo_(elo), standings_(compute_standings(scores))
    {
    }

    RankedGroup operator()()
    {
        Block all;
        all.size = group_size;
        std::iota(all.begin(), all.end(), 0);
        std::sort(all.begin(), all.end(), [&](int a, int b) {
            return standings_[a].points > standings_[b].points;
        });
        this->for_each_run(all, [&](int const* s) { return standings_[*s].points; },
                           [&](Block& run) { this->resolve_tied(run); });
        RankedGroup result{};
        std::copy(all.begin(), all.end(), result.begin());
        return result;
    }

  private:
    //! Calls `resolve` on each maximal run of equal `key` in a sorted block,
    //! writing the resolved order back in place.
    template<class Key, class Resolve>
    void for_each_run(Block& block, Key key, Resolve resolve)
    {
        int start = 0;
        while (start < block.size)
        {
            int stop = start + 1;
            while (stop < block.size && key(&block.items[stop]) == key(&block.items[start]))
                ++stop;
            if (stop - start > 1)
            {
                Block run;
                run.size = stop - start;
                std::copy(block.begin() + start, block.begin() + stop, run.begin());
                resolve(run);
                std::copy(run.begin(), run.end(), block.begin() + start);
            }
            start = stop;
        }
    }

    void resolve_tied(Block& block)
    {
        std::array<HeadToHead, group_size> h2h{};
        for (int a : block)
        {
            for (int b : block)
            {
                if (a == b || !scores_.played[a][b])
                    continue;
                int const gf = scores_.goals[a][b];
                int const ga = scores_.goals[b][a];
                h2h[a].points += match_points(gf, ga);
                h2h[a].goal_difference += gf - ga;
                h2h[a].goals_for += gf;
            }
        }
        std::stable_sort(block.begin(), block.end(),
                         [&](int a, int b) { return h2h[a].key() > h2h[b].key(); });

        bool const split = h2h[block.items[0]].key() != h2h[block.items[block.size - 1]].key();
        if (!split)
        {
            this->resolve_overall(block);
            return;
        }
        this->for_each_run(block, [&](int const* s) { return h2h[*s].key(); },
                           [&](Block& run) { this->resolve_tied(run); });
    }

    void resolve_overall(Block& block)
    {
        std::sort(block.begin(), block.end(), [&](int a, int b) {
            auto const& sa = standings_[a];
            auto const& sb = standings_[b];
            if (sa.goal_difference() != sb.goal_difference())
                return sa.goal_difference() > sb.goal_difference();
            if (sa.goals_for != sb.goals_for)
                return sa.goals_for > sb.goals_for;
            if (elo_[a] != elo_[b])
                return elo_[a] > elo_[b];
            return a < b;
        });
    }

    GroupScores const& scores_;
    std::array<double, group_size> const& elo_;
    Standings standings_;
};

}  // namespace

GroupSchedule GroupSchedule::with_last_round(int variant, bool swap_first_rounds)
{
    GroupSchedule schedule;
    schedule.last_round_variant = variant;
    int first = (variant + 1) % 3;
    int second = (variant + 2) % 3;
    if (swap_first_rounds)
        std::swap(first, second);
    schedule.rounds = {matchings[first], matchings[second], matchings[variant]};
    return schedule;
}

GroupSchedule make_schedule(Stream& rng)
{
    int const variant = static_cast<int>(rng.below(3));
    bool const swap = rng.below(2) == 1;
    return GroupSchedule::with_last_round(variant, swap);
}

int GroupScores::matches_played(int i) const
{
    return static_cast<int>(std::count(played[i].begin(), played[i].end(), true));
}

Standings compute_standings(GroupScores const& scores)
{
    Standings standings{};
    for (int i = 0; i < group_size; ++i)
    {
        for (int j = 0; j < group_size; ++j)
        {
            if (i == j || !scores.played[i][j])
                continue;
            auto& s = standings[i];
            s.points += match_points(scores.goals[i][j], scores.goals[j][i]);
            s.goals_for += scores.goals[i][j];
            s.goals_against += scores.goals[j][i];
            ++s.played;
        }
    }
    return standings;
}

RankedGroup rank_group(GroupScores const& scores, std::array<double, group_size> const& elo)
{
    return Ranker(scores, elo)();
}

GroupScores play_group(std::array<Team const*, group_size> const& teams,
                       GroupSchedule const& schedule,
                       Stream& rng)
{
    GroupScores scores;
    for (auto const& round : schedule.rounds)
    {
        for (auto const& fixture : round)
        {
            auto const s = simulate_group_match(*teams[fixture.first], *teams[fixture.second], rng);
            scores.record(fixture.first, fixture.second, s);
        }
    }
    return scores;
}

std::vector<int> rank_third_placed(std::span<ThirdPlaced const> entries)
{
    std::vector<int> order(entries.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        auto const& x = entries[a];
        auto const& y = entries[b];
        if (x.points != y.points)
            return x.points > y.points;
        if (x.goal_difference != y.goal_difference)
            return x.goal_difference > y.goal_difference;
        if (x.goals_for != y.goals_for)
            return x.goals_for > y.goals_for;
        if (x.elo != y.elo)
            return x.elo > y.elo;
        return a < b;
    });
    return order;
}

}  // namespace groupforge
