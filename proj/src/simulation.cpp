#include "groupforge/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <omp.h>

#include "groupforge/draw.hpp"
#include "groupforge/elo_model.hpp"
#include "groupforge/errors.hpp"

namespace groupforge {
namespace {

struct SlotTotals
{
    std::uint64_t r16 = 0;
    std::uint64_t matches = 0;
    std::uint64_t a_min = 0;
    std::uint64_t a_max = 0;
    std::uint64_t e_min = 0;
    std::uint64_t e_max = 0;
    double group_gap = 0;
    double w_min = 0;
    double w_22 = 0;
    double w_31 = 0;
    double elo = 0;  //!< summed per draw
};

struct Accumulator
{
    std::uint64_t runs = 0;
    std::uint64_t draws = 0;
    std::array<SlotTotals, slot_count> slots{};
    std::array<std::uint64_t, report_stage_count> stage_matches{};
    std::array<double, report_stage_count> stage_gap{};
    //! Matches by the weaker participant's strength rank (index 1..48).
    std::array<std::uint64_t, slot_count + 1> all_by_rank{};
    std::array<std::uint64_t, slot_count + 1> group_by_rank{};
    std::string matchlog;

    void merge(Accumulator const& other)
    {
        runs += other.runs;
        draws += other.draws;
        for (int s = 0; s < slot_count; ++s)
        {
            auto& a = slots[s];
            auto const& b = other.slots[s];
            a.r16 += b.r16;
            a.matches += b.matches;
            a.a_min += b.a_min;
            a.a_max += b.a_max;
            a.e_min += b.e_min;
            a.e_max += b.e_max;
            a.group_gap += b.group_gap;
            a.w_min += b.w_min;
            a.w_22 += b.w_22;
            a.w_31 += b.w_31;
            a.elo += b.elo;
        }
        for (int i = 0; i < report_stage_count; ++i)
        {
            stage_matches[i] += other.stage_matches[i];
            stage_gap[i] += other.stage_gap[i];
        }
        for (int i = 0; i <= slot_count; ++i)
        {
            all_by_rank[i] += other.all_by_rank[i];
            group_by_rank[i] += other.group_by_rank[i];
        }
        matchlog += other.matchlog;
    }
};

TeamTable load_table(RunConfig const& config)
{
    return config.team_source.empty() ? default_team_table()
                                      : load_team_table_file(config.team_source);
}

void append_match(std::string& out, std::uint64_t run_id, MatchRecord const& m, TeamTable const& table)
{
    auto quoted = [&](TeamId id) { return id.valid() ? table[id].name : std::string(); };
    out += std::to_string(run_id);
    out += ',';
    out += to_string(m.stage);
    out += ',';
    out += quoted(m.team_a);
    out += ',';
    out += quoted(m.team_b);
    out += ',';
    if (m.goals_a >= 0)
        out += std::to_string(m.goals_a);
    out += ',';
    if (m.goals_b >= 0)
        out += std::to_string(m.goals_b);
    out += ',';
    out += quoted(m.winner);
    out += '\n';
}

class DrawSimulator
{
  public:
    DrawSimulator(RunConfig const& config, TeamTable const& table, FormatSpec const& format)
        : config_(config), table_(table), format_(format)
    {
    }

    void run(std::uint64_t draw, Accumulator& acc) const
    {
        auto draw_rng = Stream::derive(config_.master_seed, draw);
        auto ctx = prepare_draw(format_, table_, draw_rng, config_.forced);
        ctx.stakeless_rule = config_.stakeless_rule;

        std::vector<int> slot(table_.size(), -1);
        auto const& direct = table_.direct_qualifiers();
        for (std::size_t i = 0; i < direct.size(); ++i)
            slot[direct[i].index] = static_cast<int>(i);
        slot[ctx.playoff_winners[0].index] = playoff_slot_high;
        slot[ctx.playoff_winners[1].index] = playoff_slot_low;
        auto const ranks = strength_ranks(ctx.table, ctx.playoff_winners);

        ++acc.draws;
        for (std::size_t i = 0; i < table_.size(); ++i)
        {
            if (slot[i] >= 0)
                acc.slots[slot[i]].elo += table_.teams()[i].elo;
        }

        for (std::uint64_t s = 0; s < config_.sims_per_draw; ++s)
        {
            auto rng = Stream::derive(config_.master_seed, draw, s + 1);
            auto const outcome = play_tournament(ctx, rng);
            this->record(outcome, slot, ranks, acc);
            if (config_.emit_matchlog)
            {
                auto const run_id = draw * config_.sims_per_draw + s;
                for (auto const& m : outcome.log)
                    append_match(acc.matchlog, run_id, m, table_);
            }
        }
    }

  private:
    static void record(TournamentOutcome const& outcome,
                       std::vector<int> const& slot,
                       std::vector<int> const& ranks,
                       Accumulator& acc)
    {
        ++acc.runs;
        for (std::size_t i = 0; i < slot.size(); ++i)
        {
            if (slot[i] < 0)
                continue;
            auto const& result = outcome.teams[i];
            auto const& stake = outcome.stakeless[i];
            auto& totals = acc.slots[slot[i]];
            totals.r16 += result.reached_round_of_16;
            totals.matches += result.matches;
            totals.group_gap += result.group_gap_sum / 3.0;
            totals.a_min += stake.a_min;
            totals.a_max += stake.a_max;
            totals.e_min += stake.e_min;
            totals.e_max += stake.e_max;
            totals.w_min += stake.w_min;
            totals.w_22 += stake.w_22;
            totals.w_31 += stake.w_31;
        }
        for (auto const& m : outcome.log)
        {
            int const stage = report_stage(m.stage);
            ++acc.stage_matches[stage];
            acc.stage_gap[stage] += std::abs(m.rating_a - m.rating_b);
            int const weaker = std::max(ranks[m.team_a.index], ranks[m.team_b.index]);
            ++acc.all_by_rank[weaker];
            if (m.stage == Stage::group)
                ++acc.group_by_rank[weaker];
        }
    }

    RunConfig const& config_;
    TeamTable const& table_;
    FormatSpec const& format_;
};

MetricsReport finalize(RunConfig const& config, TeamTable const& table, Accumulator&& acc)
{
    MetricsReport report;
    report.config = config;
    report.runs = acc.runs;
    double const runs = static_cast<double>(acc.runs);

    auto const format = FormatSpec::of(config.format);
    auto const& entrants = table.playoff_entrants();
    std::optional<std::pair<TeamId, int>> forced;
    if (config.forced)
        forced = std::pair{config.forced->team, config.forced->pot};
    auto const potted = assign_pots(table, format, {entrants[0], entrants[1]}, forced);

    auto const& direct = table.direct_qualifiers();
    for (int s = 0; s < slot_count; ++s)
    {
        auto const& t = acc.slots[s];
        TeamMetrics m;
        if (s < static_cast<int>(direct.size()))
        {
            auto const& team = potted[direct[s]];
            m.name = team.name;
            m.confederation = team.confederation;
            m.pot = team.pot(config.format).value_or(0);
        }
        else
        {
            m.name = s == playoff_slot_high ? "Play-off winner (higher)" : "Play-off winner (lower)";
            m.confederation = Confederation::UEFA;
        }
        m.elo = t.elo / static_cast<double>(acc.draws);
        m.r16_probability = static_cast<double>(t.r16) / runs;
        m.r16_half_width = confidence_bound(m.r16_probability, acc.runs);
        m.expected_matches = static_cast<double>(t.matches) / runs;
        m.group_elo_gap = t.group_gap / runs;
        m.s_a_min = static_cast<double>(t.a_min) / runs;
        m.s_a_max = static_cast<double>(t.a_max) / runs;
        m.s_e_min = static_cast<double>(t.e_min) / runs;
        m.s_e_max = static_cast<double>(t.e_max) / runs;
        m.s_w_min = t.w_min / runs;
        m.s_w_22 = t.w_22 / runs;
        m.s_w_31 = t.w_31 / runs;
        report.teams.push_back(std::move(m));
    }

    for (int i = 0; i < report_stage_count; ++i)
    {
        auto const n = acc.stage_matches[i];
        report.stages.push_back({std::string(report_stage_name(i)), n,
                                 n ? acc.stage_gap[i] / static_cast<double>(n) : 0.0});
    }

    std::uint64_t const all_total = std::accumulate(acc.all_by_rank.begin(), acc.all_by_rank.end(), 0ull);
    std::uint64_t const group_total
        = std::accumulate(acc.group_by_rank.begin(), acc.group_by_rank.end(), 0ull);
    std::uint64_t all_cum = acc.all_by_rank[1];
    std::uint64_t group_cum = acc.group_by_rank[1];
    for (int k = 2; k <= slot_count; ++k)
    {
        all_cum += acc.all_by_rank[k];
        group_cum += acc.group_by_rank[k];
        report.topk.push_back({k, all_total ? double(all_cum) / double(all_total) : 0.0,
                               group_total ? double(group_cum) / double(group_total) : 0.0});
    }

    auto& agg = report.aggregates;
    agg.group_elo_gap = report.stages[0].mean_elo_gap;
    for (auto const& m : report.teams)
    {
        agg.s_a_min += m.s_a_min;
        agg.s_a_max += m.s_a_max;
        agg.s_e_min += m.s_e_min;
        agg.s_e_max += m.s_e_max;
        agg.s_w_min += m.s_w_min;
        agg.s_w_22 += m.s_w_22;
        agg.s_w_31 += m.s_w_31;
        agg.r16_probability_sum += m.r16_probability;
    }
    for (double* v : {&agg.s_a_min, &agg.s_a_max, &agg.s_e_min, &agg.s_e_max, &agg.s_w_min,
                      &agg.s_w_22, &agg.s_w_31})
    {
        *v /= slot_count;
    }
    report.matchlog = std::move(acc.matchlog);
    return report;
}

}  // namespace

int report_stage(Stage stage)
{
    switch (stage)
    {
        case Stage::group: return 0;
        case Stage::round_of_32:
        case Stage::playoff_round: return 1;
        case Stage::round_of_16: return 2;
        case Stage::quarterfinal: return 3;
        case Stage::semifinal: return 4;
        case Stage::final: return 5;
    }
    return 0;
}

std::string_view report_stage_name(int index)
{
    static constexpr std::array<std::string_view, report_stage_count> names
        = {"group", "round_of_32", "round_of_16", "quarterfinal", "semifinal", "final"};
    return names.at(index);
}

void RunConfig::validate() const
{
    if (num_draws == 0 || sims_per_draw == 0)
        throw ValidationError("draws and sims must both be positive");
    if (num_draws > total_runs() / sims_per_draw || total_runs() / sims_per_draw != num_draws)
        throw ValidationError("draws x sims overflows");
    if (threads < 0)
        throw ValidationError("thread count cannot be negative");
    if (emit_matchlog && total_runs() > matchlog_run_limit)
    {
        throw ValidationError("match log is limited to " + std::to_string(matchlog_run_limit)
                              + " runs");
    }
}

bool MetricsReport::same_statistics(MetricsReport const& other) const
{
    return runs == other.runs && teams == other.teams && stages == other.stages
           && topk == other.topk && aggregates == other.aggregates;
}

MetricsReport run_monte_carlo(RunConfig const& config)
{
    return run_monte_carlo(config, load_table(config));
}

MetricsReport run_monte_carlo(RunConfig const& config, TeamTable const& table)
{
    config.validate();
    auto const format = FormatSpec::of(config.format);
    DrawSimulator const simulator(config, table, format);

    auto const draws = static_cast<std::int64_t>(config.num_draws);
    std::vector<Accumulator> per_draw(config.num_draws);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    int const threads = config.threads > 0 ? config.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t d = 0; d < draws; ++d)
    {
        try
        {
            simulator.run(static_cast<std::uint64_t>(d), per_draw[d]);
        }
        catch (...)
        {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    Accumulator total;
    for (auto& acc : per_draw)
        total.merge(acc);
    return finalize(config, table, std::move(total));
}

MetricsReport run_monte_carlo_serial(RunConfig const& config, TeamTable const& table)
{
    config.validate();
    auto const format = FormatSpec::of(config.format);
    DrawSimulator const simulator(config, table, format);
    Accumulator total;
    for (std::uint64_t d = 0; d < config.num_draws; ++d)
        simulator.run(d, total);
    return finalize(config, table, std::move(total));
}

double confidence_bound(double p, std::uint64_t n)
{
    if (!(p >= 0 && p <= 1) || n == 0)
        throw ValidationError("confidence_bound needs p in [0, 1] and n >= 1");
    return 2.8 * std::sqrt(p * (1 - p) / static_cast<double>(n));
}

std::vector<int> strength_ranks(TeamTable const& table, std::array<TeamId, 2> const& playoff_winners)
{
    std::vector<TeamId> direct = table.direct_qualifiers();
    auto adjusted = [&](TeamId id) {
        return table[id].elo + (table[id].is_host ? home_advantage : 0.0);
    };
    std::stable_sort(direct.begin(), direct.end(),
                     [&](TeamId a, TeamId b) { return adjusted(a) > adjusted(b); });
    std::vector<int> ranks(table.size(), 0);
    for (std::size_t i = 0; i < direct.size(); ++i)
        ranks[direct[i].index] = static_cast<int>(i) + 1;
    auto winners = playoff_winners;
    if (table[winners[1]].elo > table[winners[0]].elo)
        std::swap(winners[0], winners[1]);
    ranks[winners[0].index] = slot_count - 1;
    ranks[winners[1].index] = slot_count;
    return ranks;
}

double top_k_ratio(std::span<MatchRecord const> log, std::span<int const> ranks, int k, MatchScope scope)
{
    if (k < 2 || k > slot_count)
        throw ValidationError("k must lie in [2, 48]");
    std::uint64_t total = 0;
    std::uint64_t hits = 0;
    for (auto const& m : log)
    {
        if (scope == MatchScope::group && m.stage != Stage::group)
            continue;
        ++total;
        int const a = ranks[m.team_a.index];
        int const b = ranks[m.team_b.index];
        hits += a >= 1 && b >= 1 && a <= k && b <= k;
    }
    return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
}

int default_tanking_pot(TeamTable const& table, TeamId team)
{
    auto const format = FormatSpec::imbalanced();
    auto const& entrants = table.playoff_entrants();
    auto const potted = assign_pots(table, format, {entrants[0], entrants[1]});
    auto const& t = potted[team];
    if (t.playoff_entrant)
        throw ValidationError(t.name + " is a play-off entrant and has no pot of its own");
    if (t.is_host)
        throw ValidationError("hosts are fixed in Pot 1");
    int const from = t.pot_imbalanced.value();
    int const tier = format.tier_of_pot(from);
    for (int pot = from + 1; pot <= format.pot_count(); ++pot)
    {
        if (format.tier_of_pot(pot) != tier)
            return pot;
    }
    throw ValidationError(t.name + " in Pot " + std::to_string(from)
                          + " has no weaker pot in the other tier");
}

TankingResult tanking_experiment(std::string const& team,
                                 std::optional<int> target_pot,
                                 RunConfig config,
                                 TeamTable const& table)
{
    if (config.format != FormatKind::imbalanced)
        throw ValidationError("tanking is defined for the imbalanced format only");
    auto const id = table.id_of(team);
    int const natural = default_tanking_pot(table, id);

    auto const format = FormatSpec::imbalanced();
    auto const& entrants = table.playoff_entrants();
    int const from = assign_pots(table, format, {entrants[0], entrants[1]})[id].pot_imbalanced.value();
    int const to = target_pot.value_or(natural);
    if (to <= from || to > format.pot_count())
        throw ValidationError("target pot must be weaker than Pot " + std::to_string(from));
    if (format.tier_of_pot(to) == format.tier_of_pot(from))
        throw ValidationError("target pot must belong to the other tier");

    config.forced.reset();
    config.emit_matchlog = false;
    auto const baseline = run_monte_carlo(config, table);
    config.forced = PotOverride{id, to};
    auto const changed = run_monte_carlo(config, table);

    auto const& direct = table.direct_qualifiers();
    auto const slot = std::find(direct.begin(), direct.end(), id) - direct.begin();
    TankingResult result;
    result.team = team;
    result.from_pot = from;
    result.to_pot = to;
    result.baseline = baseline.teams[slot].r16_probability;
    result.changed = changed.teams[slot].r16_probability;
    result.difference = result.changed - result.baseline;
    double const n = static_cast<double>(baseline.runs);
    result.half_width = 2.8
                        * std::sqrt(result.baseline * (1 - result.baseline) / n
                                    + result.changed * (1 - result.changed) / n);
    return result;
}

double chi_square_critical(int df, double significance)
{
    if (df < 1 || !(significance > 0 && significance < 1))
        throw ValidationError("chi-square critical value needs df >= 1 and 0 < significance < 1");
    boost::math::chi_squared_distribution<double> dist(df);
    return boost::math::quantile(boost::math::complement(dist, significance));
}

DrawAudit run_draw_audit(std::uint64_t samples_per_cell, std::uint64_t seed)
{
    if (samples_per_cell == 0)
        throw ValidationError("samples per cell must be positive");
    auto const table = default_team_table();
    constexpr std::array<std::array<std::string_view, 3>, 4> pots = {{
        {"Spain", "Argentina", "Japan"},
        {"France", "Brazil", "Morocco"},
        {"Portugal", "Senegal", "Iran"},
        {"Netherlands", "Ecuador", "Panama"},
    }};
    DrawInstance instance;
    instance.group_count = 3;
    for (auto const& names : pots)
    {
        auto& pot = instance.pots.emplace_back();
        for (auto name : names)
        {
            auto const id = table.id_of(name);
            pot.push_back({id, table[id].confederation, false});
        }
    }

    DrawConstraints const constraints;
    auto const valid = enumerate_valid(instance, constraints);
    std::map<std::vector<std::uint16_t>, std::size_t> index;
    auto key = [](GroupAssignment const& a) {
        std::vector<std::uint16_t> k;
        for (auto const& group : a.groups)
            for (auto const& e : group)
                k.push_back(e.id.index);
        return k;
    };
    for (std::size_t i = 0; i < valid.size(); ++i)
        index.emplace(key(valid[i]), i);

    DrawAudit audit;
    audit.valid_assignments = valid.size();
    audit.samples = samples_per_cell * valid.size();
    std::vector<std::uint64_t> counts(valid.size(), 0);
    auto rng = Stream::derive(seed, 0);
    for (std::uint64_t i = 0; i < audit.samples; ++i)
    {
        auto const it = index.find(key(sample_draw(instance, constraints, rng)));
        if (it == index.end())
            throw SimulationError("sampler produced an assignment outside the valid set");
        ++counts[it->second];
    }
    double const expected = static_cast<double>(samples_per_cell);
    for (auto c : counts)
        audit.statistic += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    audit.critical = chi_square_critical(static_cast<int>(valid.size()) - 1, 0.001);
    audit.passed = audit.statistic <= audit.critical;
    return audit;
}

PreLastState random_pre_last_state(Stream& rng)
{
    std::array<Team, group_size> teams;
    std::array<Team const*, group_size> pointers{};
    for (int i = 0; i < group_size; ++i)
    {
        teams[i].elo = 1200.0 + 1000.0 * rng.uniform();
        teams[i].is_host = rng.below(8) == 0;
        pointers[i] = &teams[i];
    }
    auto const schedule = make_schedule(rng);
    GroupScores scores;
    for (int r = 0; r < 2; ++r)
    {
        for (auto const& f : schedule.rounds[r])
            scores.record(f.first, f.second, simulate_group_match(teams[f.first], teams[f.second], rng));
    }
    return make_pre_last_state(scores, schedule, pointers);
}

SoundnessReport check_stakeless_soundness(std::uint64_t states, std::uint64_t seed, int max_goals)
{
    SoundnessReport report;
    auto rng = Stream::derive(seed, 0);
    for (std::uint64_t n = 0; n < states; ++n)
    {
        auto const state = random_pre_last_state(rng);
        auto const oracle = oracle_enumerate_all(state, max_goals);
        ++report.states;
        for (int team = 0; team < group_size; ++team)
        {
            for (auto p : all_partitions)
            {
                auto const detected = prize_interval(state, team, p);
                auto const realized = oracle[team][static_cast<int>(p)];
                if (prize_count(detected) == 1)
                {
                    ++report.stakeless_flags;
                    if (prize_count(realized) != 1 || (realized & ~detected) != 0)
                        ++report.violations;
                }
                else if (prize_count(realized) == 1)
                {
                    ++report.incomplete;
                }
            }
        }
    }
    return report;
}

}  // namespace groupforge
