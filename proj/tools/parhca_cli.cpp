#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "parhca/bench.hpp"
#include "parhca/conflict.hpp"
#include "parhca/instances.hpp"
#include "parhca/solver.hpp"

using namespace parhca;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

struct MapArgs {
  std::string map_file;
  std::vector<int> downsample;  // {w, h}
  bool any_obstacle = false;

  void add(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--map", map_file, "MovingAI .map file");
    if (required) opt->required();
    cmd->add_option("--downsample", downsample, "Downsample the map to W H")->expected(2);
    cmd->add_flag("--any-obstacle", any_obstacle,
                  "Downsampled cell is blocked if any source cell is (default: majority)");
  }

  GridMap load() const {
    GridMap map;
    try {
      map = parse_movingai_map(read_file(map_file));
    } catch (const MapFormatError& e) {
      throw ConfigError(map_file + ": " + e.what());
    }
    if (!downsample.empty())
      map = downsample_map(map, downsample[0], downsample[1],
                           any_obstacle ? DownsampleRule::any_obstacle : DownsampleRule::majority);
    return map;
  }
};

ProblemInstance load_instance(const MapArgs& m, const std::string& scen_file) {
  auto map = m.load();
  try {
    return read_scenario(read_file(scen_file), map);
  } catch (const ScenarioError& e) {
    throw ConfigError(scen_file + ": " + e.what());
  }
}

void print_solution(const Solution& s) {
  std::cout << "sum_of_costs " << s.sum_of_costs << "\nmakespan " << s.makespan << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prioritized multi-agent path finding: HCA* and its parallel variant"};
  app.require_subcommand(1);

  // gen-instance
  auto* gen = app.add_subcommand("gen-instance", "Generate an instance solvable under any priority order");
  MapArgs gen_map;
  gen_map.add(gen, false);
  double gen_prob = 0.1;
  int gen_w = 100, gen_h = 100, gen_agents = 64;
  std::uint64_t gen_seed = 1;
  std::string gen_map_out, gen_scen_out = "-", gen_meta_out, gen_map_name = "generated.map";
  gen->add_option("--obstacle-prob", gen_prob, "Random map obstacle probability (when no --map)");
  gen->add_option("--width", gen_w, "Random map width");
  gen->add_option("--height", gen_h, "Random map height");
  gen->add_option("--agents", gen_agents, "Number of agents");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--map-out", gen_map_out, "Write the (generated or downsampled) map here");
  gen->add_option("--scen-out", gen_scen_out, "Scenario output ('-' for stdout)");
  gen->add_option("--meta-out", gen_meta_out, "Seed/sigma sidecar output");
  gen->add_option("--map-name", gen_map_name, "Map name recorded in the scenario");

  // solve-hca
  auto* hca = app.add_subcommand("solve-hca", "Solve with prioritized planning (HCA*)");
  MapArgs hca_map;
  hca_map.add(hca, true);
  std::string hca_scen, hca_paths_out;
  std::uint64_t hca_seed = 1;
  bool hca_identity = false;
  double hca_timeout = 60;
  hca->add_option("--scen", hca_scen, "Scenario file")->required();
  hca->add_option("--seed", hca_seed, "Seed for the random priority order");
  hca->add_flag("--identity-order", hca_identity, "Plan agents in scenario order");
  hca->add_option("--timeout", hca_timeout, "Timeout in seconds");
  hca->add_option("--paths-out", hca_paths_out, "Write paths here");

  // solve-variant
  auto* var = app.add_subcommand("solve-variant", "Solve with the parallel independent-set variant");
  MapArgs var_map;
  var_map.add(var, true);
  std::string var_scen, var_paths_out;
  unsigned var_workers = 1;
  int var_threshold = kDefaultExactThreshold;
  double var_rate = 8e7, var_timeout = 60;
  var->add_option("--scen", var_scen, "Scenario file")->required();
  var->add_option("--workers", var_workers, "Worker threads");
  var->add_option("--exact-threshold", var_threshold, "Largest component solved exactly");
  var->add_option("--data-rate", var_rate, "Link speed in bits per second");
  var->add_option("--timeout", var_timeout, "Timeout in seconds");
  var->add_option("--paths-out", var_paths_out, "Write paths here");

  // bench
  auto* bench = app.add_subcommand("bench", "Paired HCA* / variant benchmark");
  MapArgs bench_map;
  bench_map.add(bench, false);
  BenchmarkConfig bcfg;
  std::string bench_csv, bench_plot;
  bool bench_full = false;
  bench->add_option("--obstacle-prob", bcfg.obstacle_probability, "Random map obstacle probability");
  bench->add_option("--width", bcfg.width, "Random map width");
  bench->add_option("--height", bcfg.height, "Random map height");
  bench->add_option("--agents", bcfg.agents, "Agents per instance");
  bench->add_option("--instances", bcfg.instances, "Number of instances");
  bench->add_option("--seed", bcfg.seed, "Random seed");
  bench->add_option("--data-rate", bcfg.data_rate_bps, "Link speed in bits per second");
  bench->add_option("--workers", bcfg.workers, "Worker threads for the variant");
  bench->add_option("--timeout", bcfg.timeout_seconds, "Per-solve timeout in seconds");
  bench->add_option("--exact-threshold", bcfg.exact_threshold, "Largest component solved exactly");
  bench->add_flag("--full", bench_full, "100x100 maps, 64 agents, 100 instances");
  bench->add_option("--csv", bench_csv, "Write per-instance CSV here ('-' for stdout)");
  bench->add_option("--plot", bench_plot, "Write plot series here");

  // validate
  auto* val = app.add_subcommand("validate", "Check a path file against a scenario");
  MapArgs val_map;
  val_map.add(val, true);
  std::string val_scen, val_paths;
  val->add_option("--scen", val_scen, "Scenario file")->required();
  val->add_option("--paths", val_paths, "Path file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*gen) {
      GridMap map = gen_map.map_file.empty()
                        ? generate_random_map(gen_w, gen_h, gen_prob, gen_seed)
                        : gen_map.load();
      auto g = generate_instance(map, gen_agents, gen_seed);
      if (!gen_map_out.empty()) write_file(gen_map_out, write_movingai_map(map));
      write_file(gen_scen_out, write_scenario(g.instance, gen_map_name));
      if (!gen_meta_out.empty()) write_file(gen_meta_out, write_metadata(g.meta));
      return kExitOk;
    }

    if (*hca) {
      auto inst = load_instance(hca_map, hca_scen);
      auto order = hca_identity ? identity_order(inst.agent_count())
                                : random_order(inst.agent_count(), hca_seed);
      auto r = solve_hca(inst, order, HcaOptions{hca_timeout});
      std::cout << "status " << to_string(r.status) << "\nseconds " << r.compute_seconds << '\n';
      if (r.status != SolveStatus::success) {
        if (r.blocked_agent >= 0) std::cout << "blocked_agent " << r.blocked_agent << '\n';
        return kExitSolver;
      }
      print_solution(*r.solution);
      if (!hca_paths_out.empty()) write_file(hca_paths_out, write_paths(r.solution->paths));
      return kExitOk;
    }

    if (*var) {
      auto inst = load_instance(var_map, var_scen);
      VariantConfig cfg;
      cfg.workers = var_workers;
      cfg.exact_threshold = var_threshold;
      cfg.comm.data_rate_bps = var_rate;
      cfg.timeout_seconds = var_timeout;
      auto r = solve_variant(inst, cfg);
      std::cout << "status " << to_string(r.status) << "\niterations "
                << r.trace.iterations.size() << "\nwall_seconds " << r.trace.wall_seconds
                << "\nideal_seconds " << r.trace.ideal_seconds << '\n';
      if (r.status != SolveStatus::success) {
        if (r.blocked_agent >= 0) std::cout << "blocked_agent " << r.blocked_agent << '\n';
        return kExitSolver;
      }
      print_solution(*r.solution);
      const auto& ledger = r.trace.ledger;
      std::cout << "comm_bits " << ledger.total_bits() << "\ncomm_bits_source_goal "
                << ledger.source_goal_bits() << "\ncomm_bits_paths " << ledger.path_bits()
                << "\ncomm_bits_ig " << ledger.ig_bits() << "\ncomm_bits_rt "
                << ledger.reservation_table << "\ncomm_seconds " << comm_time(ledger, cfg.comm)
                << '\n';
      if (!var_paths_out.empty()) write_file(var_paths_out, write_paths(r.solution->paths));
      return kExitOk;
    }

    if (*bench) {
      if (bench_full) {
        bcfg.width = bcfg.height = 100;
        bcfg.agents = 64;
        bcfg.instances = 100;
      }
      if (!bench_map.map_file.empty()) bcfg.map = bench_map.load();
      auto result = run_benchmark(bcfg);
      if (!bench_csv.empty()) write_file(bench_csv, emit_csv(result.records));
      if (!bench_plot.empty()) write_file(bench_plot, emit_plot_data(result.records));
      (bench_csv == "-" ? std::cerr : std::cout) << format_summary(result.summary);
      return result.summary.successes == 0 ? kExitSolver : kExitOk;
    }

    if (*val) {
      auto inst = load_instance(val_map, val_scen);
      std::vector<TimedPath> paths;
      try {
        paths = read_paths(read_file(val_paths));
      } catch (const std::runtime_error& e) {
        throw ConfigError(val_paths + ": " + e.what());
      }
      auto violations = validate_solution(inst, paths);
      for (const auto& v : violations) std::cout << v.describe() << '\n';
      std::cout << (violations.empty() ? "ok" : "invalid") << '\n';
      return violations.empty() ? kExitOk : kExitSolver;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
