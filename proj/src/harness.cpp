#include "ofdma/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ofdma/exact.hpp"
#include "ofdma/heuristics.hpp"
#include "ofdma/instance.hpp"

namespace ofdma {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kChainTol = 1e-9;

bool at_least(double a, double b) {
  return a >= b - kChainTol * std::max(1.0, std::abs(b));
}

// CBR-only problem: the first targets.size() gain columns.
bool cbr_feasible(const GainFrame& gains, const std::vector<double>& targets,
                  const RadioParams& radio, double power, const IlpOptions& limits) {
  GainFrame cbr(gains.size(), std::vector<double>(targets.size()));
  for (std::size_t n = 0; n < gains.size(); ++n) {
    std::copy_n(gains[n].begin(), targets.size(), cbr[n].begin());
  }
  const Instance inst = Instance::with_leading_cbr(build_rate_matrix(cbr, power, radio), targets);
  IlpOptions opts = limits;
  opts.gap_tol = 1.0;  // any feasible allocation settles the question
  return solve_ilp(inst, opts).status != SolveStatus::kInfeasible;
}

IlpOptions ip_limits(const ScenarioConfig& cfg) {
  IlpOptions opts;
  opts.time_limit_s = cfg.ip_time_limit;
  opts.node_limit = cfg.ip_node_limit;
  return opts;
}

IlpOptions probe_limits(const ScenarioConfig& cfg) {
  IlpOptions opts;
  opts.time_limit_s = cfg.ip_time_limit;
  opts.node_limit = cfg.calibration_node_limit;
  return opts;
}

// Power at which the weakest CBR user sees unit SNR on an average subchannel.
double reference_power(const GainFrame& gains, std::size_t users, const RadioParams& radio) {
  const double unit = snr_gap(radio.error_rate) * radio.noise_density_w_per_hz() *
                      radio.subchannel_bandwidth_hz;
  double weakest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < users; ++k) {
    double mean = 0.0;
    for (const auto& row : gains) mean += row[k];
    mean /= static_cast<double>(gains.size());
    weakest = std::min(weakest, mean);
  }
  return static_cast<double>(gains.size()) * unit / weakest;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

CalibrationResult calibrate_feasible_power(const GainFrame& gains,
                                           const std::vector<double>& cbr_targets,
                                           const RadioParams& radio, PowerBracket bracket,
                                           const IlpOptions& probe_limits) {
  if (!(bracket.lo > 0.0 && bracket.hi > bracket.lo)) {
    throw std::invalid_argument("calibrate_feasible_power: need 0 < lo < hi");
  }
  if (gains.empty() || gains.front().size() < cbr_targets.size()) {
    throw std::invalid_argument("calibrate_feasible_power: gains lack CBR columns");
  }
  CalibrationResult result;
  double highest_infeasible = 0.0;
  double lowest_feasible = std::numeric_limits<double>::infinity();
  const auto probe = [&](double p) {
    ++result.probes;
    const bool ok = cbr_feasible(gains, cbr_targets, radio, p, probe_limits);
    if (ok) {
      lowest_feasible = std::min(lowest_feasible, p);
    } else {
      highest_infeasible = std::max(highest_infeasible, p);
    }
    if (highest_infeasible >= lowest_feasible) {
      throw std::logic_error("calibrate_feasible_power: feasibility not monotone in power");
    }
    return ok;
  };

  if (!probe(bracket.hi)) return result;
  result.ok = true;
  if (probe(bracket.lo)) {
    result.power = bracket.lo;
    return result;
  }
  double lo = bracket.lo;
  double hi = bracket.hi;
  while (hi > lo * (1.0 + 1e-3)) {
    const double mid = std::sqrt(lo * hi);
    if (probe(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.power = hi;
  return result;
}

std::vector<GainFrame> default_drop_channel(const ScenarioConfig& cfg, std::uint64_t seed) {
  const UserPlacement placement = place_users(cfg.K1 + cfg.K2, cfg.channel, derive_seed(seed, 0));
  return generate_drop_gains(placement, cfg.N, cfg.channel, derive_seed(seed, 1));
}

DropResult run_drop(const ScenarioConfig& cfg, int drop_index, const DropChannel& channel) {
  cfg.validate();
  const std::uint64_t seed = drop_seed(cfg, drop_index);
  const auto frames = channel(cfg, seed);
  if (frames.empty()) throw std::runtime_error("run_drop: channel produced no frames");
  const auto targets = cfg.cbr_targets();

  DropResult drop;
  drop.drop_index = drop_index;
  for (auto& a : drop.per_algorithm) a.mean = kNaN;

  // Calibrate on the first frame; widen the upper end a few times before
  // declaring the drop an outage.
  if (targets.empty()) {
    drop.calibrated = true;
    drop.feasible_power = reference_power(frames.front(), cfg.K1 + cfg.K2, cfg.radio);
  } else {
    const double ref = reference_power(frames.front(), targets.size(), cfg.radio);
    PowerBracket bracket{ref * 1e-3, ref * 1e3};
    for (int attempt = 0; attempt < 4 && !drop.calibrated; ++attempt) {
      const auto cal =
          calibrate_feasible_power(frames.front(), targets, cfg.radio, bracket, probe_limits(cfg));
      if (cal.ok) {
        drop.calibrated = true;
        drop.feasible_power = cal.power;
      }
      bracket.lo = bracket.hi;
      bracket.hi *= 1e3;
    }
  }

  const auto num_frames = frames.size();
  drop.frames.resize(num_frames);
  std::array<double, kNumAlgorithms> sums{};
  for (auto& f : drop.frames) f.objective.fill(kNaN);

  if (!drop.calibrated) {
    for (const Algorithm a : cfg.algorithms) drop.per_algorithm[index_of(a)].outages = num_frames;
    return drop;
  }
  drop.bs_power = cfg.power_ratio * drop.feasible_power;

  for (std::size_t t = 0; t < num_frames; ++t) {
    const Instance inst = Instance::with_leading_cbr(
        build_rate_matrix(frames[t], drop.bs_power, cfg.radio), targets);
    FrameRecord& rec = drop.frames[t];

    for (const Algorithm a : cfg.algorithms) {
      const auto t0 = std::chrono::steady_clock::now();
      std::optional<Allocation> alloc;
      double value = kNaN;
      switch (a) {
        case Algorithm::kHeur1:
          alloc = heur1(inst);
          break;
        case Algorithm::kHeur1NoSwap:
          alloc = heur1(inst, Heur1Options{.enable_swap = false});
          break;
        case Algorithm::kHeur2:
          alloc = heur2(inst);
          break;
        case Algorithm::kRandom:
          alloc = random_baseline(inst, derive_seed(seed, 1000 + t));
          break;
        case Algorithm::kIp: {
          const BnbReport rep = solve_ilp(inst, ip_limits(cfg));
          if (rep.status != SolveStatus::kInfeasible) value = rep.value;
          rec.ip_proven = rep.proven_optimal;
          if (!rep.proven_optimal) ++drop.ip_unproven;
          break;
        }
        case Algorithm::kLp: {
          const LpSolution lp = solve_lp(inst);
          if (lp.status == SolveStatus::kOptimal) value = lp.value;
          break;
        }
      }
      if (alloc) value = comparison_objective(inst, *alloc);

      auto& stats = drop.per_algorithm[index_of(a)];
      stats.seconds += seconds_since(t0);
      rec.objective[index_of(a)] = value;
      if (std::isnan(value)) {
        ++stats.outages;
      } else {
        ++stats.feasible_frames;
        sums[index_of(a)] += value;
      }
    }

    // Bound chain LP >= IP >= every heuristic, on whatever subset ran.
    const auto v = [&](Algorithm a) { return rec.objective[index_of(a)]; };
    bool violated = false;
    const double lp = v(Algorithm::kLp);
    const double ip = v(Algorithm::kIp);
    for (const Algorithm h : {Algorithm::kHeur1, Algorithm::kHeur1NoSwap, Algorithm::kHeur2,
                              Algorithm::kRandom, Algorithm::kIp}) {
      if (!cfg.runs(h) || std::isnan(v(h))) continue;
      if (cfg.runs(Algorithm::kLp) && (std::isnan(lp) || !at_least(lp, v(h)))) violated = true;
      if (h != Algorithm::kIp && cfg.runs(Algorithm::kIp) && rec.ip_proven &&
          (std::isnan(ip) || !at_least(ip, v(h)))) {
        violated = true;
      }
    }
    if (violated) ++drop.bound_violations;
    if (cfg.runs(Algorithm::kHeur1) && cfg.runs(Algorithm::kHeur1NoSwap) &&
        !std::isnan(v(Algorithm::kHeur1NoSwap)) &&
        (std::isnan(v(Algorithm::kHeur1)) ||
         !at_least(v(Algorithm::kHeur1), v(Algorithm::kHeur1NoSwap)))) {
      ++drop.swap_violations;
    }
  }

  for (const Algorithm a : cfg.algorithms) {
    auto& stats = drop.per_algorithm[index_of(a)];
    if (stats.feasible_frames > 0) stats.mean = sums[index_of(a)] / stats.feasible_frames;
  }
  return drop;
}

double convergence_statistic(const std::vector<double>& drop_means) {
  const auto n = drop_means.size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  double mean = 0.0;
  for (const double x : drop_means) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (const double x : drop_means) ss += (x - mean) * (x - mean);
  const double std_error = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  if (std_error == 0.0) return 0.0;
  if (mean == 0.0) return std::numeric_limits<double>::infinity();
  return std_error / std::abs(mean);
}

namespace {

// Sum(a) / Sum(b) * 100 over frames where both are present.
double pairwise_ratio(const std::vector<DropResult>& drops, Algorithm a, Algorithm b,
                      bool need_proven_ip) {
  double sa = 0.0;
  double sb = 0.0;
  long count = 0;
  for (const auto& d : drops) {
    for (const auto& f : d.frames) {
      const double va = f.objective[index_of(a)];
      const double vb = f.objective[index_of(b)];
      if (std::isnan(va) || std::isnan(vb)) continue;
      if (need_proven_ip && !f.ip_proven) continue;
      sa += va;
      sb += vb;
      ++count;
    }
  }
  if (count == 0 || sb == 0.0) return kNaN;
  return 100.0 * sa / sb;
}

}  // namespace

ScenarioStats run_scenario(const ScenarioConfig& cfg, const DropChannel& channel) {
  cfg.validate();
  ScenarioStats stats;
  stats.config = cfg;

  std::array<std::vector<double>, kNumAlgorithms> means;
  for (int i = 0; i < cfg.max_drops; ++i) {
    DropResult drop = run_drop(cfg, i, channel);
    for (const Algorithm a : cfg.algorithms) {
      const double m = drop.per_algorithm[index_of(a)].mean;
      if (!std::isnan(m)) means[index_of(a)].push_back(m);
    }
    stats.bound_violations += drop.bound_violations;
    stats.swap_violations += drop.swap_violations;
    stats.ip_unproven += drop.ip_unproven;
    if (!drop.calibrated) ++stats.calibration_failures;
    stats.drops.push_back(std::move(drop));
    stats.drops_executed = i + 1;

    if (stats.drops_executed < cfg.min_drops) continue;
    bool all = true;
    for (const Algorithm a : cfg.algorithms) {
      if (!(convergence_statistic(means[index_of(a)]) <= cfg.sigma_norm)) all = false;
    }
    if (all) {
      stats.converged = true;
      break;
    }
  }

  for (const Algorithm a : cfg.algorithms) {
    const auto& m = means[index_of(a)];
    AlgorithmStats s;
    s.drops_used = static_cast<int>(m.size());
    for (const double x : m) s.mean += x;
    if (!m.empty()) s.mean /= static_cast<double>(m.size());
    for (const double x : m) s.variance += (x - s.mean) * (x - s.mean);
    if (m.size() > 1) s.variance /= static_cast<double>(m.size() - 1);
    s.convergence = convergence_statistic(m);
    for (const auto& d : stats.drops) {
      s.frames += d.per_algorithm[index_of(a)].feasible_frames;
      s.outages += d.per_algorithm[index_of(a)].outages;
    }
    stats.per_algorithm[index_of(a)] = s;
  }

  const auto ratio = [&](Algorithm a, Algorithm b) {
    if (!cfg.runs(a) || !cfg.runs(b)) return kNaN;
    const bool ip = a == Algorithm::kIp || b == Algorithm::kIp;
    return pairwise_ratio(stats.drops, a, b, ip);
  };
  stats.heur1_over_ip = ratio(Algorithm::kHeur1, Algorithm::kIp);
  stats.heur2_over_ip = ratio(Algorithm::kHeur2, Algorithm::kIp);
  stats.ip_over_lp = ratio(Algorithm::kIp, Algorithm::kLp);
  stats.swap_gain = ratio(Algorithm::kHeur1, Algorithm::kHeur1NoSwap) - 100.0;
  stats.random_gain = ratio(Algorithm::kHeur1, Algorithm::kRandom) - 100.0;
  return stats;
}

}  // namespace ofdma
