// tamp: command-line frontend for the scene-graph task-and-motion-planning
// testbed. Subcommands: run, check, estimate, bench.
//
// Exit codes: 0 success, 2 input error, 3 planning exhaustion, 4 backend
// transport failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "tamp/llm.hpp"
#include "tamp/llm_backend.hpp"
#include "tamp/tamp.hpp"

namespace fs = std::filesystem;
using namespace tamp;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct Backends {
    std::unique_ptr<PlannerBackend> backend;
    std::unique_ptr<SemanticOracle> oracle;
};

Backends make_backends(const RunConfig& config) {
    Backends b;
    if (config.backend == "llm") {
        LlmConfig llm = LlmConfig::from_env();
        llm.temperature = config.sigma;
        b.backend = std::make_unique<LlmBackend>(llm);
        b.oracle = std::make_unique<LlmOracle>(llm);
    } else {
        b.backend = std::make_unique<ScriptedBackend>();
        b.oracle = std::make_unique<RuleOracle>(config.sigma);
    }
    return b;
}

struct RunArgs {
    std::string scene, world, mission, out;
    std::string csv, plot, ledger_in, ledger_out;
    RunConfig config;
};

int do_run(const RunArgs& args) {
    SceneGraph graph = load_scene_graph(slurp(args.scene));
    WorldConfig world = load_world_config(slurp(args.world));
    Mission mission = load_mission(slurp(args.mission));
    CostLedger ledger;
    if (!args.ledger_in.empty())
        ledger = ledger_from_json(json::parse(slurp(args.ledger_in)), world.grid.cell_size);
    Backends backends = make_backends(args.config);

    MissionRunner runner(mission, graph, world, args.config, *backends.backend, *backends.oracle,
                         std::move(ledger));
    MissionReport report = runner.run();

    write_file(args.out, report_to_json(report).dump(2) + "\n");
    if (!args.csv.empty()) write_file(args.csv, report_csv(report));
    if (!args.plot.empty())
        write_file(args.plot,
                   reports_svg({{to_string(args.config.algorithm), report}}, args.config));
    if (!args.ledger_out.empty())
        write_file(args.ledger_out, ledger_to_json(runner.ledger()).dump(2) + "\n");
    std::cout << "m_overall " << report.m_overall << "  sr_obj " << report.sr_obj << "  j_total "
              << report.j_total << "\n";
    if (report.abandoned_commands == static_cast<int>(mission.commands.size())) {
        std::cerr << "error: planning exhausted on every command\n";
        return 3;
    }
    return 0;
}

int do_check(const std::string& scene_path, const std::string& plan_path) {
    SceneGraph graph = load_scene_graph(slurp(scene_path));
    TaskPlan plan = plan_from_json(json::parse(slurp(plan_path)));
    std::vector<Violation> violations = check_feasibility(plan, HighLevelState{}, graph);
    for (const auto& v : violations)
        std::cout << "action " << v.action_index << ": " << to_string(v.rule) << " (" << v.detail
                  << ")\n";
    if (violations.empty()) std::cout << "plan is feasible\n";
    return violations.empty() ? 0 : 1;
}

int do_estimate(const std::string& scene_path, const std::string& world_path,
                const std::string& ledger_path, const std::string& plan_path,
                const RunConfig& config) {
    SceneGraph graph = load_scene_graph(slurp(scene_path));
    WorldConfig world = load_world_config(slurp(world_path));
    CostLedger ledger;
    if (!ledger_path.empty())
        ledger = ledger_from_json(json::parse(slurp(ledger_path)), world.grid.cell_size);
    TaskPlan plan = plan_from_json(json::parse(slurp(plan_path)));
    Backends backends = make_backends(config);
    EstimatorContext ctx{graph,          world.grid,        ledger, *backends.oracle,
                         config.overlap, world.robot_speed, mission_start_cell(world)};
    PlanEstimate est = score_plan(plan, HighLevelState{}, ctx);
    std::cout << "nav estimates:";
    for (double v : est.nav_estimates) std::cout << ' ' << v;
    std::cout << "\nman estimates:";
    for (double v : est.man_estimates) std::cout << ' ' << v;
    std::cout << "\nn_man_valid " << est.n_man_valid << " / " << est.man_estimates.size()
              << "\ntotal " << est.total << "\n";
    return 0;
}

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
    std::vector<std::uint64_t> seeds;
    auto dots = spec.find("..");
    if (dots != std::string::npos) {
        std::uint64_t lo = std::stoull(spec.substr(0, dots));
        std::uint64_t hi = std::stoull(spec.substr(dots + 2));
        for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) seeds.push_back(std::stoull(tok));
    }
    return seeds;
}

int do_bench(const std::string& suite, const std::string& algos_csv, const std::string& seeds_spec,
             const std::string& out_dir, RunConfig base_config) {
    std::vector<AlgorithmKind> algos;
    {
        std::stringstream ss(algos_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) algos.push_back(algorithm_from_string(tok));
    }
    std::vector<std::uint64_t> seeds = parse_seeds(seeds_spec);
    fs::create_directories(out_dir);

    std::ostringstream agg;
    agg << "scenario,algorithm,seed,m_overall,sr_obj,sr_man,cc_nav,d_nav,t_exe,j_total\n";
    for (const auto& entry : fs::directory_iterator(suite)) {
        if (entry.path().extension() != ".json") continue;
        json idx = json::parse(slurp(entry.path().string()));
        // index files name the scenario pieces; skip co-located data files
        if (!idx.is_object() || !idx.contains("scene") || !idx.contains("world") ||
            !idx.contains("mission"))
            continue;
        fs::path base = entry.path().parent_path();
        SceneGraph graph =
            load_scene_graph(slurp((base / idx.at("scene").get<std::string>()).string()));
        WorldConfig world =
            load_world_config(slurp((base / idx.at("world").get<std::string>()).string()));
        Mission mission =
            load_mission(slurp((base / idx.at("mission").get<std::string>()).string()));
        const std::string name = entry.path().stem().string();
        for (AlgorithmKind algo : algos)
            for (std::uint64_t seed : seeds) {
                RunConfig config = base_config;
                config.algorithm = algo;
                config.seed = seed;
                Backends backends = make_backends(config);
                MissionReport report =
                    run_mission(mission, graph, world, config, *backends.backend,
                                *backends.oracle);
                const std::string cell =
                    name + "_" + to_string(algo) + "_s" + std::to_string(seed);
                write_file((fs::path(out_dir) / (cell + ".json")).string(),
                           report_to_json(report).dump(2) + "\n");
                agg << name << ',' << to_string(algo) << ',' << seed << ',' << report.m_overall
                    << ',' << report.sr_obj << ',' << report.sr_man << ',' << report.cc_nav << ','
                    << report.d_nav << ',' << report.t_exe << ',' << report.j_total << "\n";
            }
    }
    write_file((fs::path(out_dir) / "aggregate.csv").string(), agg.str());
    std::cout << "wrote " << out_dir << "/aggregate.csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scene-graph task-and-motion-planning testbed"};
    app.require_subcommand(1);

    RunArgs run_args;
    std::string algo = "inter", mode = "normalized";
    auto add_config_flags = [&](CLI::App* cmd, RunConfig& config) {
        cmd->add_option("--seed", config.seed, "RNG seed");
        cmd->add_option("--backend", config.backend, "scripted|llm");
        cmd->add_option("--candidates", config.m_candidates, "M candidates");
        cmd->add_option("--sigma", config.sigma, "oracle strictness / LLM temperature");
        cmd->add_option("--gamma-nav", config.gamma_nav, "collision weight");
        cmd->add_option("--gamma-man", config.gamma_man, "failure-rate weight");
        cmd->add_option("--gamma-obj", config.gamma_obj, "fulfillment weight");
        cmd->add_option("--epsilon-d", config.overlap.epsilon_d, "overlap threshold (m)");
        cmd->add_option("--nav-mode", mode, "normalized|literal");
        cmd->add_option("--retry-budget", config.retry_budget, "manipulation attempts per action");
    };

    CLI::App* run = app.add_subcommand("run", "run a mission with one algorithm");
    run->add_option("--scene", run_args.scene)->required();
    run->add_option("--world", run_args.world)->required();
    run->add_option("--mission", run_args.mission)->required();
    run->add_option("--algo", algo, "inter|openloop|reactive");
    run->add_option("--out", run_args.out)->required();
    run->add_option("--csv", run_args.csv);
    run->add_option("--plot", run_args.plot);
    run->add_option("--ledger-in", run_args.ledger_in);
    run->add_option("--ledger-out", run_args.ledger_out);
    add_config_flags(run, run_args.config);

    std::string check_scene, check_plan;
    CLI::App* check = app.add_subcommand("check", "feasibility-check a plan");
    check->add_option("--scene", check_scene)->required();
    check->add_option("--plan", check_plan)->required();

    std::string est_scene, est_world, est_ledger, est_plan;
    RunConfig est_config;
    CLI::App* estimate = app.add_subcommand("estimate", "print a plan cost estimate breakdown");
    estimate->add_option("--scene", est_scene)->required();
    estimate->add_option("--world", est_world)->required();
    estimate->add_option("--ledger", est_ledger);
    estimate->add_option("--plan", est_plan)->required();
    add_config_flags(estimate, est_config);

    std::string suite, algos = "inter,openloop,reactive", seeds = "1..10", out_dir = "results";
    RunConfig bench_config;
    CLI::App* bench = app.add_subcommand("bench", "batch comparison over a scenario suite");
    bench->add_option("--suite", suite)->required();
    bench->add_option("--algos", algos);
    bench->add_option("--seeds", seeds);
    bench->add_option("--out", out_dir);
    add_config_flags(bench, bench_config);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            run_args.config.algorithm = algorithm_from_string(algo);
            run_args.config.overlap.nav_estimator_mode =
                mode == "literal" ? NavEstimatorMode::Literal : NavEstimatorMode::Normalized;
            return do_run(run_args);
        }
        if (*check) return do_check(check_scene, check_plan);
        if (*estimate) return do_estimate(est_scene, est_world, est_ledger, est_plan, est_config);
        if (*bench) return do_bench(suite, algos, seeds, out_dir, bench_config);
    } catch (const PlanningExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const TransportError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
