#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "format.hpp"
#include "team_data.hpp"
#include "tournament.hpp"

namespace groupforge {

//! Tournament participants: 46 direct qualifiers then the two play-off winners.
inline constexpr int slot_count = 48;
inline constexpr int playoff_slot_high = 46;  //!< higher-rated play-off winner
inline constexpr int playoff_slot_low = 47;

//! Reporting stages; the imbalanced play-off round shares the Round of 32 column.
inline constexpr int report_stage_count = 6;
int report_stage(Stage stage);
std::string_view report_stage_name(int index);

struct RunConfig
{
    std::uint64_t num_draws = 100;
    std::uint64_t sims_per_draw = 100;
    std::uint64_t master_seed = 20241001;
    FormatKind format = FormatKind::official;
    std::string team_source;  //!< CSV path; empty for the embedded table
    int threads = 0;          //!< 0: OpenMP default
    bool emit_matchlog = false;
    StakelessRule stakeless_rule = StakelessRule::conservative;
    std::optional<PotOverride> forced;

    //! Throws ValidationError on zero draws/sims or an oversized match log.
    void validate() const;
    std::uint64_t total_runs() const { return num_draws * sims_per_draw; }
};

//! Largest run count for which a match log may be kept in memory.
inline constexpr std::uint64_t matchlog_run_limit = 100'000;

struct TeamMetrics
{
    std::string name;
    Confederation confederation = Confederation::UEFA;
    double elo = 0;  //!< mean over draws for play-off slots
    int pot = 0;     //!< 0 for play-off slots
    double r16_probability = 0;
    double r16_half_width = 0;
    double expected_matches = 0;
    double group_elo_gap = 0;  //!< mean |adjusted rating gap| of its group matches
    double s_a_min = 0;
    double s_a_max = 0;
    double s_e_min = 0;
    double s_e_max = 0;
    double s_w_min = 0;
    double s_w_22 = 0;
    double s_w_31 = 0;

    friend bool operator==(TeamMetrics const&, TeamMetrics const&) = default;
};

struct StageMetrics
{
    std::string stage;
    std::uint64_t matches = 0;
    double mean_elo_gap = 0;

    friend bool operator==(StageMetrics const&, StageMetrics const&) = default;
};

struct TopKRow
{
    int k = 0;
    double all_matches = 0;
    double group_matches = 0;

    friend bool operator==(TopKRow const&, TopKRow const&) = default;
};

//! Averages over all teams and runs.
struct Aggregates
{
    double group_elo_gap = 0;
    double s_a_min = 0;
    double s_a_max = 0;
    double s_e_min = 0;
    double s_e_max = 0;
    double s_w_min = 0;
    double s_w_22 = 0;
    double s_w_31 = 0;
    double r16_probability_sum = 0;

    friend bool operator==(Aggregates const&, Aggregates const&) = default;
};

struct MetricsReport
{
    RunConfig config;
    std::uint64_t runs = 0;
    std::vector<TeamMetrics> teams;  //!< slot order
    std::vector<StageMetrics> stages;
    std::vector<TopKRow> topk;       //!< k = 2..48
    Aggregates aggregates;
    std::string matchlog;            //!< CSV body when requested

    bool same_statistics(MetricsReport const& other) const;
};

/*!
 * Monte Carlo over draws and runs.
 *
 * Draw d uses the stream derive(seed, d) for its play-offs and group draw;
 * run s of that draw uses derive(seed, d, s + 1). Draws are distributed over
 * OpenMP threads and merged in draw order, so reports are bit-identical for
 * any thread count.
 */
MetricsReport run_monte_carlo(RunConfig const& config);
MetricsReport run_monte_carlo(RunConfig const& config, TeamTable const& table);

//! Single-threaded reference with one running accumulator.
MetricsReport run_monte_carlo_serial(RunConfig const& config, TeamTable const& table);

//! 99% confidence half-width of a proportion.
double confidence_bound(double p, std::uint64_t n);

enum class MatchScope
{
    all,
    group,
};

//! 1-based strength rank per team (46 direct by adjusted rating, then 47, 48).
std::vector<int> strength_ranks(TeamTable const& table, std::array<TeamId, 2> const& playoff_winners);

//! Share of matches in scope between two of the k strongest teams.
double top_k_ratio(std::span<MatchRecord const> log,
                   std::span<int const> ranks,
                   int k,
                   MatchScope scope);

struct TankingResult
{
    std::string team;
    int from_pot = 0;
    int to_pot = 0;
    double baseline = 0;
    double changed = 0;
    double difference = 0;
    double half_width = 0;
};

//! Strongest pot of the other tier below the team's own pot.
int default_tanking_pot(TeamTable const& table, TeamId team);

/*!
 * Round of 16 probability of a team at its true pot and when forced into a
 * weaker pot of the other tier (imbalanced format only). Both runs share
 * the master seed.
 */
TankingResult tanking_experiment(std::string const& team,
                                 std::optional<int> target_pot,
                                 RunConfig config,
                                 TeamTable const& table);

//! Critical value of the chi-square distribution with `df` degrees of freedom.
double chi_square_critical(int df, double significance);

struct DrawAudit
{
    std::uint64_t valid_assignments = 0;
    std::uint64_t samples = 0;
    double statistic = 0;
    double critical = 0;
    bool passed = false;
};

//! Goodness of fit of the draw sampler against all valid assignments of a
//! reduced three-group instance.
DrawAudit run_draw_audit(std::uint64_t samples_per_cell, std::uint64_t seed);

struct SoundnessReport
{
    std::uint64_t states = 0;
    std::uint64_t stakeless_flags = 0;
    std::uint64_t violations = 0;
    //! Flags the oracle would allow but the detector misses.
    std::uint64_t incomplete = 0;
};

//! Random group after two rounds (random ratings, schedule and scorelines).
PreLastState random_pre_last_state(Stream& rng);

//! Detector vs oracle on random states, every partition.
SoundnessReport check_stakeless_soundness(std::uint64_t states, std::uint64_t seed, int max_goals = 6);

}  // namespace groupforge
