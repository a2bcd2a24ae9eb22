// ofdma: generate allocation instances, solve them, and run Monte-Carlo
// scenario sweeps.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ofdma/exact.hpp"
#include "ofdma/harness.hpp"
#include "ofdma/heuristics.hpp"
#include "ofdma/instance_io.hpp"
#include "ofdma/reports.hpp"
#include "ofdma/scenario_config.hpp"

namespace {

using namespace ofdma;

int run_gen(const std::string& config_path, const std::string& out_path, int drop_index,
            int frame_index) {
  const ScenarioConfig cfg = load_plan(config_path).scenarios().front();
  const auto frames = default_drop_channel(cfg, drop_seed(cfg, drop_index));
  if (frame_index < 0 || frame_index >= static_cast<int>(frames.size())) {
    std::cerr << "frame index out of range\n";
    return 1;
  }
  const auto targets = cfg.cbr_targets();
  const double ref_lo = 1e-12;
  const double ref_hi = 1e12;
  IlpOptions probe_limits;
  probe_limits.time_limit_s = cfg.ip_time_limit;
  probe_limits.node_limit = cfg.calibration_node_limit;
  const auto cal =
      calibrate_feasible_power(frames.front(), targets, cfg.radio, {ref_lo, ref_hi}, probe_limits);
  if (!cal.ok) {
    std::cerr << "CBR targets cannot be met at any power up to " << ref_hi << " W\n";
    return 2;
  }
  const double bs_power = cfg.power_ratio * cal.power;
  const Instance inst = Instance::with_leading_cbr(
      build_rate_matrix(frames[frame_index], bs_power, cfg.radio), targets);
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open " << out_path << '\n';
    return 1;
  }
  write_instance_csv(out, inst);
  std::cerr << "P_feas=" << format_sig9(cal.power) << " W, P_bs=" << format_sig9(bs_power)
            << " W\n";
  return 0;
}

int run_solve(const std::string& instance_path, const std::string& alg, std::uint64_t seed,
              const IlpOptions& ilp, const std::string& out_path) {
  std::ifstream in(instance_path);
  if (!in) {
    std::cerr << "cannot open " << instance_path << '\n';
    return 1;
  }
  const Instance inst = read_instance_csv(in);
  const auto t0 = std::chrono::steady_clock::now();

  std::optional<Allocation> alloc;
  double value = std::nan("");
  long nodes = 0;
  bool proven = false;
  if (alg == "heur1") {
    alloc = heur1(inst);
  } else if (alg == "heur1-noswap") {
    alloc = heur1(inst, Heur1Options{.enable_swap = false});
  } else if (alg == "heur2") {
    alloc = heur2(inst);
  } else if (alg == "random") {
    alloc = random_baseline(inst, seed);
  } else if (alg == "ip") {
    const BnbReport rep = solve_ilp(inst, ilp);
    nodes = rep.node_count;
    proven = rep.proven_optimal;
    if (rep.status != SolveStatus::kInfeasible) alloc = rep.best;
  } else if (alg == "lp") {
    const LpSolution lp = solve_lp(inst);
    if (lp.status == SolveStatus::kOptimal) value = lp.value;
    proven = lp.status == SolveStatus::kOptimal;
  } else if (alg == "oracle") {
    const OracleResult res = exhaustive_oracle(inst);
    alloc = res.best;
    proven = res.best.has_value();
  } else {
    std::cerr << "unknown algorithm '" << alg << "'\n";
    return 1;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (alloc) {
    value = comparison_objective(inst, *alloc);
    if (out_path.empty()) {
      write_allocation_csv(std::cout, *alloc);
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "cannot open " << out_path << '\n';
        return 1;
      }
      write_allocation_csv(out, *alloc);
    }
  }
  std::cout << format_sig9(value) << ',' << nodes << ',' << (proven ? 1 : 0) << ','
            << format_sig9(seconds) << '\n';
  if (std::isnan(value)) {
    std::cerr << "INFEASIBLE\n";
    return 3;
  }
  return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_dir, bool full_scale,
                 bool desk_scale) {
  SimulationPlan defaults =
      full_scale ? full_scale_plan() : desk_scale ? desk_scale_plan() : SimulationPlan{};
  const SimulationPlan plan =
      config_path.empty() ? defaults : load_plan(config_path, std::move(defaults));
  std::vector<ScenarioStats> all;
  for (const auto& cfg : plan.scenarios()) {
    std::cerr << "scenario K1=" << cfg.K1 << " power_ratio=" << cfg.power_ratio << " ..."
              << std::flush;
    all.push_back(run_scenario(cfg));
    const auto& s = all.back();
    std::cerr << " drops=" << s.drops_executed << (s.converged ? " converged" : " not converged")
              << " violations=" << s.bound_violations << '\n';
  }
  emit_reports(all, out_dir);
  long violations = 0;
  for (const auto& s : all) violations += s.bound_violations;
  return violations == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OFDMA multi-service subchannel allocation toolkit"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate one instance CSV from a scenario config");
  std::string gen_config;
  std::string gen_out;
  int gen_drop = 0;
  int gen_frame = 0;
  gen->add_option("--config", gen_config, "Scenario config file")->required();
  gen->add_option("--out", gen_out, "Output instance CSV")->required();
  gen->add_option("--drop", gen_drop, "Drop index (seeds the user placement)");
  gen->add_option("--frame", gen_frame, "Frame index within the drop");

  auto* solve = app.add_subcommand("solve", "Solve an instance CSV");
  std::string solve_instance;
  std::string solve_alg;
  std::uint64_t solve_seed = 1;
  IlpOptions solve_ilp_opts;
  solve_ilp_opts.time_limit_s = 60.0;
  std::string solve_out;
  solve->add_option("--instance", solve_instance, "Instance CSV")->required();
  solve->add_option("--alg", solve_alg, "heur1|heur1-noswap|heur2|random|ip|lp|oracle")
      ->required();
  solve->add_option("--seed", solve_seed, "Seed for the random baseline");
  solve->add_option("--time-limit", solve_ilp_opts.time_limit_s,
                    "Branch-and-bound time limit (s)");
  solve->add_option("--gap-tol", solve_ilp_opts.gap_tol,
                    "Relative optimality gap for branch-and-bound");
  solve->add_option("--node-limit", solve_ilp_opts.node_limit, "Branch-and-bound node limit");
  solve->add_option("--out", solve_out, "Write the allocation CSV here instead of stdout");

  auto* sim = app.add_subcommand("simulate", "Run a scenario grid and write report CSVs");
  std::string sim_config;
  std::string sim_out;
  bool sim_full = false;
  bool sim_desk = false;
  sim->add_option("--config", sim_config, "Scenario config file");
  sim->add_option("--out-dir", sim_out, "Directory for report CSVs")->required();
  sim->add_flag("--paper-scale", sim_full,
                "Start from the full-size grid (N=100, K1 6..12, K2=5, R_min=36)");
  sim->add_flag("--desk-scale", sim_desk,
                "Start from the laptop-size grid (N=32, K1 2..6, K2=3, R_min=12)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_gen(gen_config, gen_out, gen_drop, gen_frame);
    if (*solve) {
      return run_solve(solve_instance, solve_alg, solve_seed, solve_ilp_opts, solve_out);
    }
    if (*sim) {
      if (sim_full && sim_desk) {
        std::cerr << "simulate: --paper-scale and --desk-scale are mutually exclusive\n";
        return 1;
      }
      if (sim_config.empty() && !sim_full && !sim_desk) {
        std::cerr << "simulate: --config is required unless a preset grid is chosen\n";
        return 1;
      }
      return run_simulate(sim_config, sim_out, sim_full, sim_desk);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
