#pragma once

#include "random.hpp"
#include "team_data.hpp"

namespace groupforge {

//! Elo win expectancy of a side rated `rating_i` against `rating_j`.
double win_expectancy(double rating_i, double rating_j);

enum class Field
{
    home,
    away,
    neutral,
};

struct GoalRate
{
    double lambda = 0;
    Field field = Field::neutral;
};

/// \name Expected goals as a function of win expectancy
/// Piecewise quartic fits for national-team matches. The away rate takes the
/// *home* side's win expectancy.
/// @{
GoalRate expected_goals_neutral(double win_exp);
GoalRate expected_goals_home(double win_exp);
GoalRate expected_goals_away(double home_win_exp);
/// @}

//! Poisson draw by sequential inversion.
int sample_poisson(double lambda, Stream& rng);
inline int sample_goals(GoalRate rate, Stream& rng) { return sample_poisson(rate.lambda, rng); }

struct Scoreline
{
    int goals_i = 0;
    int goals_j = 0;

    friend bool operator==(Scoreline const&, Scoreline const&) = default;
};

//! Goal rates of both sides in a group match (home/away if exactly one host).
std::pair<GoalRate, GoalRate> group_match_rates(Team const& team_i, Team const& team_j);

//! Independent Poisson goal counts for both sides.
Scoreline simulate_group_match(Team const& team_i, Team const& team_j, Stream& rng);

//! Probability that `team_i` advances in a knockout tie.
double knockout_win_probability(Team const& team_i, Team const& team_j);

//! Single Bernoulli draw; returns the winner.
Team const& simulate_knockout_match(Team const& team_i, Team const& team_j, Stream& rng);

}  // namespace groupforge
