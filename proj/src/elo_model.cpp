#include "groupforge/elo_model.hpp"

#include <cmath>

namespace groupforge {
namespace {

// Coefficients ordered c4, c3, c2, c1, c0.
struct Quartic
{
    double c4, c3, c2, c1, c0;

    constexpr double operator()(double x) const
    {
        return (((c4 * x + c3) * x + c2) * x + c1) * x + c0;
    }
};

constexpr Quartic neutral_low{3.90388, -0.58486, -2.98315, 3.13160, 0.33193};
constexpr Quartic neutral_high{308097.45501, -42803.04696, 2116.35304, -9.61869, 2.86899};
constexpr Quartic home_low{-5.42301, 15.49728, -12.6499, 5.36198, 0.22863};
constexpr Quartic home_high{231098.16153, -30953.10199, 1347.51495, -1.63074, 2.54747};
constexpr Quartic away_low{90173.57949, 10064.38612, 218.6628, -11.06198, 2.28291};
constexpr Quartic away_high{-1.25010, -1.99984, 6.54946, -5.83979, 2.80352};

}  // namespace

double win_expectancy(double rating_i, double rating_j)
{
    return 1.0 / (1.0 + std::pow(10.0, -(rating_i - rating_j) / 400.0));
}

GoalRate expected_goals_neutral(double win_exp)
{
    double const lambda = win_exp <= 0.9 ? neutral_low(win_exp) : neutral_high(win_exp - 0.9);
    return {lambda, Field::neutral};
}

GoalRate expected_goals_home(double win_exp)
{
    double const lambda = win_exp <= 0.9 ? home_low(win_exp) : home_high(win_exp - 0.9);
    return {lambda, Field::home};
}

GoalRate expected_goals_away(double home_win_exp)
{
    double const lambda = home_win_exp < 0.1 ? away_low(home_win_exp - 0.1)
                                             : away_high(home_win_exp);
    return {lambda, Field::away};
}

int sample_poisson(double lambda, Stream& rng)
{
    if (!(lambda > 0))
        return 0;
    double const u = rng.uniform();
    double p = std::exp(-lambda);
    double cdf = p;
    int k = 0;
    // Terminates once the pmf underflows; the remaining tail mass is below 1e-300.
    while (u >= cdf && p > 0)
    {
        ++k;
        p *= lambda / k;
        cdf += p;
    }
    return k;
}

std::pair<GoalRate, GoalRate> group_match_rates(Team const& team_i, Team const& team_j)
{
    if (team_i.is_host != team_j.is_host)
    {
        auto [r_i, r_j] = match_ratings(team_i, team_j);
        if (team_i.is_host)
        {
            double const w = win_expectancy(r_i, r_j);
            return {expected_goals_home(w), expected_goals_away(w)};
        }
        double const w = win_expectancy(r_j, r_i);
        return {expected_goals_away(w), expected_goals_home(w)};
    }
    // Two hosts: both bumped, which is the same as the raw ratings.
    double const w = win_expectancy(team_i.elo, team_j.elo);
    return {expected_goals_neutral(w), expected_goals_neutral(1.0 - w)};
}

Scoreline simulate_group_match(Team const& team_i, Team const& team_j, Stream& rng)
{
    auto [rate_i, rate_j] = group_match_rates(team_i, team_j);
    Scoreline result;
    result.goals_i = sample_goals(rate_i, rng);
    result.goals_j = sample_goals(rate_j, rng);
    return result;
}

double knockout_win_probability(Team const& team_i, Team const& team_j)
{
    auto [r_i, r_j] = match_ratings(team_i, team_j);
    return win_expectancy(r_i, r_j);
}

Team const& simulate_knockout_match(Team const& team_i, Team const& team_j, Stream& rng)
{
    return rng.bernoulli(knockout_win_probability(team_i, team_j)) ? team_i : team_j;
}

}  // namespace groupforge
