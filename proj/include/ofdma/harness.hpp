#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "ofdma/channel_gen.hpp"
#include "ofdma/exact.hpp"
#include "ofdma/scenario_config.hpp"

namespace ofdma {

struct PowerBracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct CalibrationResult {
  bool ok = false;  // false: even bracket.hi cannot satisfy the CBR targets
  double power = 0.0;
  int probes = 0;
};

// Smallest base-station power (to relative width 1e-3) at which the CBR users
// of `gains` (the first cbr_targets.size() columns) can all be served. Each
// probe searches the CBR-only integer program for any feasible point, within
// the time and node limits of `probe_limits`; a probe that runs out of effort
// counts as infeasible, so the result errs towards more power but is always
// a power at which feasibility was demonstrated.
CalibrationResult calibrate_feasible_power(const GainFrame& gains,
                                           const std::vector<double>& cbr_targets,
                                           const RadioParams& radio, PowerBracket bracket,
                                           const IlpOptions& probe_limits = {});

// Source of the per-frame channel gains of one drop, given the drop seed.
// The default draws users and fading from channel_gen.
using DropChannel =
    std::function<std::vector<GainFrame>(const ScenarioConfig&, std::uint64_t drop_seed)>;

std::vector<GainFrame> default_drop_channel(const ScenarioConfig& cfg, std::uint64_t drop_seed);

// Per-frame objectives, NaN where the scheme was not run or hit outage.
struct FrameRecord {
  std::array<double, kNumAlgorithms> objective;
  bool ip_proven = false;
};

struct AlgorithmDropStats {
  double mean = 0.0;  // over non-outage frames; NaN if none
  int feasible_frames = 0;
  int outages = 0;
  double seconds = 0.0;
};

struct DropResult {
  int drop_index = 0;
  bool calibrated = false;
  double feasible_power = 0.0;
  double bs_power = 0.0;
  std::vector<FrameRecord> frames;
  std::array<AlgorithmDropStats, kNumAlgorithms> per_algorithm{};
  int bound_violations = 0;  // LP >= IP >= heuristics broken on some frame
  int swap_violations = 0;   // HEUR1 with swap below HEUR1 without
  int ip_unproven = 0;  // IP stopped by its time or node limit
};

struct AlgorithmStats {
  double mean = 0.0;      // mean of drop means
  double variance = 0.0;  // sample variance of drop means
  int drops_used = 0;
  long frames = 0;
  long outages = 0;
  double convergence = 0.0;  // standard error / |mean|
};

struct ScenarioStats {
  ScenarioConfig config;
  std::array<std::optional<AlgorithmStats>, kNumAlgorithms> per_algorithm;
  int drops_executed = 0;
  bool converged = false;
  // Percentages over frames where both schemes produced a value (IP only when
  // proven optimal); NaN when a scheme was not run.
  double heur1_over_ip = 0.0;
  double heur2_over_ip = 0.0;
  double ip_over_lp = 0.0;
  double swap_gain = 0.0;    // (HEUR1 - HEUR1 no swap) / HEUR1 no swap
  double random_gain = 0.0;  // (HEUR1 - RANDOM) / RANDOM
  long bound_violations = 0;
  long swap_violations = 0;
  long ip_unproven = 0;
  long calibration_failures = 0;
  std::vector<DropResult> drops;
};

// Seed of drop i: scenario seed + i.
inline std::uint64_t drop_seed(const ScenarioConfig& cfg, int drop_index) {
  return cfg.seed + static_cast<std::uint64_t>(drop_index);
}

DropResult run_drop(const ScenarioConfig& cfg, int drop_index,
                    const DropChannel& channel = default_drop_channel);

// Convergence statistic of a sample of drop means.
double convergence_statistic(const std::vector<double>& drop_means);

ScenarioStats run_scenario(const ScenarioConfig& cfg,
                           const DropChannel& channel = default_drop_channel);

}  // namespace ofdma
