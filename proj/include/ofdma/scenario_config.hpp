#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ofdma/channel_gen.hpp"
#include "ofdma/rate_model.hpp"

namespace ofdma {

enum class Algorithm { kHeur1, kHeur1NoSwap, kHeur2, kRandom, kIp, kLp };

inline constexpr std::size_t kNumAlgorithms = 6;
inline constexpr std::array<Algorithm, kNumAlgorithms> kAllAlgorithms = {
    Algorithm::kHeur1, Algorithm::kHeur1NoSwap, Algorithm::kHeur2,
    Algorithm::kRandom, Algorithm::kIp, Algorithm::kLp};

inline constexpr std::size_t index_of(Algorithm a) { return static_cast<std::size_t>(a); }
std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

// One point of the evaluation grid.
struct ScenarioConfig {
  int N = 32;
  int K1 = 4;
  int K2 = 3;
  std::vector<double> R_min = {12.0};  // a single value applies to every CBR user
  double power_ratio = 2.0;
  int min_drops = 25;
  int max_drops = 1000;
  double sigma_norm = 0.02;
  ChannelConfig channel;  // carries frames_per_drop
  RadioParams radio;
  std::uint64_t seed = 1;
  std::vector<Algorithm> algorithms = {kAllAlgorithms.begin(), kAllAlgorithms.end()};
  double ip_time_limit = 60.0;  // seconds per instance
  // Branch-and-bound nodes per instance. Unlike the time limit this cap is
  // deterministic, so results do not depend on machine speed.
  long ip_node_limit = 20000;
  // Node budget of each calibration probe; a probe that exhausts it counts
  // as infeasible (see calibrate_feasible_power).
  long calibration_node_limit = 2000;

  void validate() const;
  std::vector<double> cbr_targets() const;
  bool runs(Algorithm a) const;
};

// A config file describes a grid: K1 and power_ratio may list several
// comma-separated values; every other key takes a single value.
struct SimulationPlan {
  ScenarioConfig base;
  std::vector<int> k1_values;
  std::vector<double> power_ratios;

  // K1-major order, power ratios ascending within each K1 as listed.
  std::vector<ScenarioConfig> scenarios() const;
};

// Parses `key = value` lines; '#' starts a comment. Unknown keys, repeated
// keys and malformed values throw std::runtime_error naming the line.
// Keys absent from the file keep their value in `defaults`.
SimulationPlan parse_plan(std::istream& in, SimulationPlan defaults = {});
SimulationPlan load_plan(const std::string& path, SimulationPlan defaults = {});

// Grid used for laptop-scale runs: N = 32, K1 in {2,3,4,6}, K2 = 3,
// R_min = 12, power ratio in {2,3,4}.
SimulationPlan desk_scale_plan();

// Full-size grid: N = 100, K1 in {6,8,10,12}, K2 = 5, R_min = 36, power ratio
// 2.0..4.0 in steps of 0.5, 100 frames/drop, 25..1000 drops, sigma 0.02.
SimulationPlan full_scale_plan();

}  // namespace ofdma
