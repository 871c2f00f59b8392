#include "groupforge/stakeless.hpp"

#include <string>

#include "groupforge/errors.hpp"

namespace groupforge {
namespace {

// [partition][rank - 1] -> prize class
constexpr std::array<std::array<int, group_size>, partition_count> class_table = {{
    {0, 0, 1, 1},  // Q2
    {0, 0, 0, 1},  // Q3
    {0, 0, 1, 2},  // THREE_PRIZE
    {0, 1, 2, 2},  // TIER1
    {0, 0, 1, 1},  // TIER2
}};

constexpr int index_of(PrizePartition p) { return static_cast<int>(p); }

bool lies_in_two_matches(int points)
{
    return points == 0 || points == 1 || points == 2 || points == 3 || points == 4
           || points == 6;
}

void check_last_round(std::array<Fixture, 2> const& last_round)
{
    std::array<int, group_size> seen{};
    for (auto const& f : last_round)
    {
        if (f.first < 0 || f.first >= group_size || f.second < 0 || f.second >= group_size
            || f.first == f.second)
        {
            throw ValidationError("last-round fixture has invalid positions");
        }
        ++seen[f.first];
        ++seen[f.second];
    }
    for (int n : seen)
    {
        if (n != 1)
            throw ValidationError("last-round fixtures must be two disjoint pairs");
    }
}

}  // namespace

std::string_view to_string(PrizePartition p)
{
    switch (p)
    {
        case PrizePartition::Q2: return "Q2";
        case PrizePartition::Q3: return "Q3";
        case PrizePartition::THREE_PRIZE: return "THREE_PRIZE";
        case PrizePartition::TIER1: return "TIER1";
        case PrizePartition::TIER2: return "TIER2";
    }
    return "?";
}

int prize_class(PrizePartition partition, int rank)
{
    return class_table[index_of(partition)][rank - 1];
}

bool is_qualifying_class(PrizePartition partition, int prize)
{
    // Classes containing rank 1 or 2 (Q3: rank 3 as well) carry qualification.
    switch (partition)
    {
        case PrizePartition::TIER1: return prize <= 1;
        default: return prize == 0;
    }
}

void PreLastState::validate() const
{
    check_last_round(last_round);
    for (int i = 0; i < group_size; ++i)
    {
        if (scores.played[i][i])
            throw ValidationError("a team cannot play itself");
        if (scores.matches_played(i) != 2)
        {
            throw ValidationError("team at position " + std::to_string(i)
                                  + " must have played exactly two matches before the last round");
        }
        for (int j = 0; j < group_size; ++j)
        {
            if (scores.played[i][j] && (scores.goals[i][j] < 0))
                throw ValidationError("negative goal count");
        }
    }
    for (auto const& f : last_round)
    {
        if (scores.played[f.first][f.second])
            throw ValidationError("last-round fixture was already played");
    }
}

std::array<int, group_size> PreLastState::points() const
{
    auto const standings = compute_standings(scores);
    std::array<int, group_size> result{};
    for (int i = 0; i < group_size; ++i)
        result[i] = standings[i].points;
    return result;
}

int PreLastState::opponent(int team) const
{
    for (auto const& f : last_round)
    {
        if (f.first == team)
            return f.second;
        if (f.second == team)
            return f.first;
    }
    throw ValidationError("team has no last-round fixture");
}

PreLastState make_pre_last_state(GroupScores const& after_two_rounds,
                                 GroupSchedule const& schedule,
                                 std::array<Team const*, group_size> const& teams)
{
    PreLastState state;
    state.scores = after_two_rounds;
    state.last_round = schedule.last_round();
    for (int i = 0; i < group_size; ++i)
    {
        state.elo[i] = teams[i]->elo;
        state.is_host[i] = teams[i]->is_host;
    }
    return state;
}

PrizeSet reachable_prizes(std::array<int, group_size> const& points,
                          std::span<Fixture const> remaining,
                          int team,
                          PrizePartition partition)
{
    int combos = 1;
    for (std::size_t i = 0; i < remaining.size(); ++i)
        combos *= 3;

    PrizeSet result = 0;
    for (int code = 0; code < combos; ++code)
    {
        auto final_points = points;
        int c = code;
        for (auto const& f : remaining)
        {
            switch (c % 3)
            {
                case 0: final_points[f.first] += 3; break;
                case 1:
                    final_points[f.first] += 1;
                    final_points[f.second] += 1;
                    break;
                default: final_points[f.second] += 3; break;
            }
            c /= 3;
        }
        int above = 0;
        int level = 0;
        for (int other = 0; other < group_size; ++other)
        {
            if (other == team)
                continue;
            above += final_points[other] > final_points[team];
            level += final_points[other] == final_points[team];
        }
        for (int rank = 1 + above; rank <= 1 + above + level; ++rank)
            result |= PrizeSet(1u << prize_class(partition, rank));
    }
    return result;
}

PrizeSet prize_interval(PreLastState const& state, int team, PrizePartition partition)
{
    state.validate();
    return reachable_prizes(state.points(), state.last_round, team, partition);
}

PrizeSet prize_interval_from_points(std::array<int, group_size> const& points,
                                    std::array<Fixture, 2> const& last_round,
                                    int team,
                                    PrizePartition partition)
{
    check_last_round(last_round);
    for (int p : points)
    {
        if (!lies_in_two_matches(p))
        {
            throw ValidationError("points " + std::to_string(p)
                                  + " cannot be collected in two matches");
        }
    }
    return reachable_prizes(points, last_round, team, partition);
}

bool detect_stakeless(PreLastState const& state, int team, PrizePartition partition)
{
    return prize_count(prize_interval(state, team, partition)) == 1;
}

StakeStatus classify(PreLastState const& state, int team, PrizePartition partition, bool indicator)
{
    if (!indicator)
        return StakeStatus::none;
    auto const set = prize_interval(state, team, partition);
    int const prize = __builtin_ctz(set);
    return is_qualifying_class(partition, prize) ? StakeStatus::qualified : StakeStatus::eliminated;
}

double weight(PreLastState const& state, int team)
{
    int const other = state.opponent(team);
    double const own = state.elo[team] + (state.is_host[team] ? home_advantage : 0.0);
    double const theirs = state.elo[other] + (state.is_host[other] ? home_advantage : 0.0);
    return win_expectancy(own, theirs);
}

std::array<std::array<PrizeSet, partition_count>, group_size>
oracle_enumerate_all(PreLastState const& state, int max_goals)
{
    if (max_goals < 0 || max_goals > 8)
        throw ValidationError("oracle max_goals must lie in [0, 8]");
    state.validate();

    std::array<std::array<PrizeSet, partition_count>, group_size> result{};
    auto scores = state.scores;
    auto const& [f0, f1] = state.last_round;
    for (int a = 0; a <= max_goals; ++a)
    {
        for (int b = 0; b <= max_goals; ++b)
        {
            scores.record(f0.first, f0.second, {a, b});
            for (int c = 0; c <= max_goals; ++c)
            {
                for (int d = 0; d <= max_goals; ++d)
                {
                    scores.record(f1.first, f1.second, {c, d});
                    auto const order = rank_group(scores, state.elo);
                    for (int rank = 1; rank <= group_size; ++rank)
                    {
                        int const team = order[rank - 1];
                        for (auto p : all_partitions)
                            result[team][index_of(p)] |= PrizeSet(1u << prize_class(p, rank));
                    }
                }
            }
        }
    }
    return result;
}

PrizeSet oracle_enumerate(PreLastState const& state, int team, PrizePartition partition, int max_goals)
{
    return oracle_enumerate_all(state, max_goals)[team][index_of(partition)];
}

namespace {

//! Fills a record from the prize set of each partition.
template<class SetOf>
StakelessRecord make_record(double weight, int tier, SetOf set_of)
{
    StakelessRecord record;
    record.weight = weight;
    auto check = [&](PrizePartition p, bool& qualified, bool& eliminated) {
        auto const set = set_of(p);
        bool const stakeless = prize_count(set) == 1;
        if (stakeless)
        {
            record.stakeless_mask |= std::uint8_t(1u << index_of(p));
            (is_qualifying_class(p, __builtin_ctz(set)) ? qualified : eliminated) = true;
        }
        return stakeless ? record.weight : 0.0;
    };

    if (tier == 0)
    {
        bool unused_a = false;
        bool unused_e = false;
        record.w_22 = check(PrizePartition::Q2, record.a_min, record.e_max);
        record.w_31 = check(PrizePartition::Q3, record.a_max, record.e_min);
        record.w_min = check(PrizePartition::THREE_PRIZE, unused_a, unused_e);
    }
    else
    {
        auto const p = tier == 1 ? PrizePartition::TIER1 : PrizePartition::TIER2;
        record.w_min = check(p, record.a_min, record.e_min);
        record.a_max = record.a_min;
        record.e_max = record.e_min;
        record.w_22 = record.w_31 = record.w_min;
    }
    return record;
}

}  // namespace

StakelessRecord evaluate_stakeless(PreLastState const& state, int team, int tier)
{
    auto const points = state.points();
    return make_record(weight(state, team), tier, [&](PrizePartition p) {
        return reachable_prizes(points, state.last_round, team, p);
    });
}

std::string_view to_string(StakelessRule rule)
{
    return rule == StakelessRule::conservative ? "conservative" : "exhaustive";
}

StakelessRule parse_stakeless_rule(std::string_view text)
{
    if (text == "conservative")
        return StakelessRule::conservative;
    if (text == "exhaustive")
        return StakelessRule::exhaustive;
    throw ValidationError("unknown stakeless rule '" + std::string(text)
                          + "' (expected conservative or exhaustive)");
}

std::array<StakelessRecord, group_size> evaluate_group_stakeless(PreLastState const& state,
                                                                 int tier,
                                                                 StakelessRule rule,
                                                                 int max_goals)
{
    std::array<StakelessRecord, group_size> records;
    if (rule == StakelessRule::conservative)
    {
        for (int team = 0; team < group_size; ++team)
            records[team] = evaluate_stakeless(state, team, tier);
        return records;
    }
    auto const sets = oracle_enumerate_all(state, max_goals);
    for (int team = 0; team < group_size; ++team)
    {
        records[team] = make_record(weight(state, team), tier,
                                    [&](PrizePartition p) { return sets[team][index_of(p)]; });
    }
    return records;
}

}  // namespace groupforge
