#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ofdma/harness.hpp"

namespace ofdma {

// Writes scenario_stats.csv, sumrate_vs_load.csv, sumrate_vs_power.csv and
// swap_effect.csv into out_dir (created if missing). Every numeric field uses
// 9 significant digits; schemes that were not run print as "nan".
//
// scenario_stats.csv
//   N,K1,K2,power_ratio,mean_heur1,mean_heur1_noswap,mean_heur2,mean_random,
//   mean_ip,mean_lp,heur1_over_ip,heur2_over_ip,ip_over_lp,drops,converged
// sumrate_vs_load.csv   (sorted by power_ratio, then K1)
//   power_ratio,K1,cbr_load,heur1,heur1_noswap,heur2,random,ip,lp
// sumrate_vs_power.csv  (sorted by K1, then power_ratio)
//   K1,power_ratio,heur1,heur1_noswap,heur2,random,ip,lp
// swap_effect.csv       (scenario order)
//   K1,power_ratio,heur1,heur1_noswap,gain_percent
void emit_reports(const std::vector<ScenarioStats>& stats, const std::filesystem::path& out_dir);

void write_scenario_stats(std::ostream& out, const std::vector<ScenarioStats>& stats);
void write_sumrate_vs_load(std::ostream& out, const std::vector<ScenarioStats>& stats);
void write_sumrate_vs_power(std::ostream& out, const std::vector<ScenarioStats>& stats);
void write_swap_effect(std::ostream& out, const std::vector<ScenarioStats>& stats);

}  // namespace ofdma
