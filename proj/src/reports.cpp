#include "ofdma/reports.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ofdma/instance_io.hpp"

namespace ofdma {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_of(const ScenarioStats& s, Algorithm a) {
  const auto& st = s.per_algorithm[index_of(a)];
  return st && st->drops_used > 0 ? st->mean : kNaN;
}

void write_means(std::ostream& out, const ScenarioStats& s) {
  for (const Algorithm a : kAllAlgorithms) out << ',' << format_sig9(mean_of(s, a));
}

double cbr_load(const ScenarioConfig& cfg) {
  const auto targets = cfg.cbr_targets();
  const double total = std::accumulate(targets.begin(), targets.end(), 0.0);
  return total / (static_cast<double>(cfg.N) * cfg.radio.max_order);
}

std::vector<const ScenarioStats*> sorted_by(const std::vector<ScenarioStats>& stats,
                                            bool power_major) {
  std::vector<const ScenarioStats*> order;
  for (const auto& s : stats) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(), [&](const auto* a, const auto* b) {
    const auto ka = std::make_pair(a->config.power_ratio, a->config.K1);
    const auto kb = std::make_pair(b->config.power_ratio, b->config.K1);
    if (power_major) return ka < kb;
    return std::make_pair(ka.second, ka.first) < std::make_pair(kb.second, kb.first);
  });
  return order;
}

void write_file(const std::filesystem::path& path, void (*writer)(std::ostream&, const std::vector<ScenarioStats>&),
                const std::vector<ScenarioStats>& stats) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "': " + std::strerror(errno));
  }
  writer(out, stats);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void write_scenario_stats(std::ostream& out, const std::vector<ScenarioStats>& stats) {
  out << "N,K1,K2,power_ratio,mean_heur1,mean_heur1_noswap,mean_heur2,mean_random,mean_ip,"
         "mean_lp,heur1_over_ip,heur2_over_ip,ip_over_lp,drops,converged\n";
  for (const auto& s : stats) {
    const auto& c = s.config;
    out << c.N << ',' << c.K1 << ',' << c.K2 << ',' << format_sig9(c.power_ratio);
    write_means(out, s);
    out << ',' << format_sig9(s.heur1_over_ip) << ',' << format_sig9(s.heur2_over_ip) << ','
        << format_sig9(s.ip_over_lp) << ',' << s.drops_executed << ',' << (s.converged ? 1 : 0)
        << '\n';
  }
}

void write_sumrate_vs_load(std::ostream& out, const std::vector<ScenarioStats>& stats) {
  out << "power_ratio,K1,cbr_load,heur1,heur1_noswap,heur2,random,ip,lp\n";
  for (const auto* s : sorted_by(stats, true)) {
    out << format_sig9(s->config.power_ratio) << ',' << s->config.K1 << ','
        << format_sig9(cbr_load(s->config));
    write_means(out, *s);
    out << '\n';
  }
}

void write_sumrate_vs_power(std::ostream& out, const std::vector<ScenarioStats>& stats) {
  out << "K1,power_ratio,heur1,heur1_noswap,heur2,random,ip,lp\n";
  for (const auto* s : sorted_by(stats, false)) {
    out << s->config.K1 << ',' << format_sig9(s->config.power_ratio);
    write_means(out, *s);
    out << '\n';
  }
}

void write_swap_effect(std::ostream& out, const std::vector<ScenarioStats>& stats) {
  out << "K1,power_ratio,heur1,heur1_noswap,gain_percent\n";
  for (const auto& s : stats) {
    out << s.config.K1 << ',' << format_sig9(s.config.power_ratio) << ','
        << format_sig9(mean_of(s, Algorithm::kHeur1)) << ','
        << format_sig9(mean_of(s, Algorithm::kHeur1NoSwap)) << ',' << format_sig9(s.swap_gain)
        << '\n';
  }
}

void emit_reports(const std::vector<ScenarioStats>& stats, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "scenario_stats.csv", write_scenario_stats, stats);
  write_file(out_dir / "sumrate_vs_load.csv", write_sumrate_vs_load, stats);
  write_file(out_dir / "sumrate_vs_power.csv", write_sumrate_vs_power, stats);
  write_file(out_dir / "swap_effect.csv", write_swap_effect, stats);
}

}  // namespace ofdma
