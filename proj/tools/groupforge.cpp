// Command-line front end: simulate, tanking, draw-audit, oracle-check.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "groupforge/errors.hpp"
#include "groupforge/report_io.hpp"
#include "groupforge/simulation.hpp"

namespace gf = groupforge;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_runtime = 2;

struct Options
{
    std::string format = "official";
    std::uint64_t draws = 100;
    std::uint64_t sims = 100;
    std::uint64_t seed = 20241001;
    std::string teams;
    std::string out = "results";
    std::string config;
    std::string stakeless_rule = "conservative";
    bool emit_matchlog = false;
    bool full_scale = false;
};

struct RunFlags
{
    CLI::Option* format = nullptr;
    CLI::Option* draws = nullptr;
    CLI::Option* sims = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* teams = nullptr;
    CLI::Option* stakeless_rule = nullptr;
};

RunFlags add_run_flags(CLI::App& cmd, Options& opt)
{
    RunFlags flags;
    flags.format = cmd.add_option("--format", opt.format, "official or imbalanced");
    flags.draws = cmd.add_option("--draws", opt.draws, "number of group draws");
    flags.sims = cmd.add_option("--sims", opt.sims, "tournaments simulated per draw");
    flags.seed = cmd.add_option("--seed", opt.seed, "master seed");
    flags.teams = cmd.add_option("--teams", opt.teams, "team CSV (default: embedded 2024-10-01 ratings)");
    flags.stakeless_rule = cmd.add_option("--stakeless-rule", opt.stakeless_rule,
                                          "conservative (points only) or exhaustive (all scorelines)");
    cmd.add_option("--config", opt.config, "JSON run config; explicit flags take precedence");
    cmd.add_flag("--full-scale", opt.full_scale, "1000 draws x 1000 sims");
    return flags;
}

int thread_cap()
{
    char const* env = std::getenv("GROUPFORGE_THREADS");
    if (!env || !*env)
        return 0;
    char* end = nullptr;
    long const value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 0 || value > 4096)
        throw gf::ValidationError("GROUPFORGE_THREADS must be a non-negative integer");
    return static_cast<int>(value);
}

gf::RunConfig build_config(Options const& opt, RunFlags const& flags)
{
    gf::RunConfig config;
    if (!opt.config.empty())
    {
        std::ifstream in(opt.config);
        if (!in)
            throw gf::ValidationError("cannot open run config '" + opt.config + "'");
        std::stringstream text;
        text << in.rdbuf();
        config = gf::parse_run_config(text.str(), config);
    }
    if (flags.format->count() || opt.config.empty())
        config.format = gf::parse_format(opt.format);
    if (flags.draws->count() || opt.config.empty())
        config.num_draws = opt.draws;
    if (flags.sims->count() || opt.config.empty())
        config.sims_per_draw = opt.sims;
    if (flags.seed->count() || opt.config.empty())
        config.master_seed = opt.seed;
    if (flags.stakeless_rule->count() || opt.config.empty())
        config.stakeless_rule = gf::parse_stakeless_rule(opt.stakeless_rule);
    if (flags.teams->count())
        config.team_source = opt.teams;
    if (opt.full_scale)
    {
        if (flags.draws->count() || flags.sims->count())
            throw gf::ValidationError("--full-scale cannot be combined with --draws or --sims");
        config.num_draws = 1000;
        config.sims_per_draw = 1000;
    }
    config.emit_matchlog = config.emit_matchlog || opt.emit_matchlog;
    if (int const cap = thread_cap(); cap > 0)
        config.threads = cap;
    config.validate();
    return config;
}

gf::TeamTable load_teams(gf::RunConfig const& config)
{
    return config.team_source.empty() ? gf::default_team_table()
                                      : gf::load_team_table_file(config.team_source);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monte Carlo comparison of 48-team World Cup formats"};
    app.require_subcommand(1);

    Options opt;
    auto* simulate = app.add_subcommand("simulate", "run the Monte Carlo and write all metrics");
    auto const sim_flags = add_run_flags(*simulate, opt);
    simulate->add_option("--out", opt.out, "output directory");
    simulate->add_flag("--emit-matchlog", opt.emit_matchlog, "also write matchlog.csv");

    std::string team;
    std::optional<int> pot;
    std::string tanking_out;
    auto* tanking = app.add_subcommand("tanking", "Round of 16 probability with a team moved to a weaker pot");
    auto const tank_flags = add_run_flags(*tanking, opt);
    tanking->add_option("--team", team, "team name")->required();
    tanking->add_option("--pot", pot, "target pot (default: strongest weaker pot of the other tier)");
    tanking->add_option("--out", tanking_out, "directory for tanking.json");

    std::uint64_t samples_per_cell = 200;
    std::uint64_t audit_seed = 1;
    auto* audit = app.add_subcommand("draw-audit", "chi-square uniformity test of the draw sampler");
    audit->add_option("--samples-per-cell", samples_per_cell, "expected count per valid assignment");
    audit->add_option("--seed", audit_seed, "seed");

    std::uint64_t states = 10'000;
    std::uint64_t oracle_seed = 1;
    int max_goals = 6;
    auto* oracle = app.add_subcommand("oracle-check", "stakeless detector soundness against exhaustive scorelines");
    oracle->add_option("--states", states, "random group states");
    oracle->add_option("--seed", oracle_seed, "seed");
    oracle->add_option("--max-goals", max_goals, "goal cap per side in the oracle")->check(CLI::Range(0, 8));

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try
    {
        if (simulate->parsed())
        {
            auto const config = build_config(opt, sim_flags);
            auto const report = gf::run_monte_carlo(config, load_teams(config));
            for (auto const& path : gf::write_report(report, opt.out))
                std::cout << path.string() << '\n';
            return exit_ok;
        }
        if (tanking->parsed())
        {
            if (!tank_flags.format->count())
                opt.format = "imbalanced";
            auto const config = build_config(opt, tank_flags);
            auto const result = gf::tanking_experiment(team, pot, config, load_teams(config));
            auto const text = gf::tanking_json(result, config);
            if (!tanking_out.empty())
            {
                std::filesystem::create_directories(tanking_out);
                gf::write_text(std::filesystem::path(tanking_out) / "tanking.json", text);
            }
            std::cout << text;
            return exit_ok;
        }
        if (audit->parsed())
        {
            auto const r = gf::run_draw_audit(samples_per_cell, audit_seed);
            std::cout << "valid assignments " << r.valid_assignments << ", samples " << r.samples
                      << ", chi-square " << r.statistic << " (critical " << r.critical << " at 0.001): "
                      << (r.passed ? "uniform" : "NOT uniform") << '\n';
            return r.passed ? exit_ok : exit_runtime;
        }
        if (oracle->parsed())
        {
            auto const r = gf::check_stakeless_soundness(states, oracle_seed, max_goals);
            std::cout << "states " << r.states << ", stakeless flags " << r.stakeless_flags
                      << ", violations " << r.violations << ", oracle-only singletons "
                      << r.incomplete << '\n';
            return r.violations == 0 ? exit_ok : exit_runtime;
        }
    }
    catch (gf::ValidationError const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
    catch (std::exception const& e)
    {
        std::cerr << "runtime failure: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_validation;
}
