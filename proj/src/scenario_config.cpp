#include "ofdma/scenario_config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ofdma {
namespace {

constexpr std::array<std::string_view, kNumAlgorithms> kNames = {
    "heur1", "heur1-noswap", "heur2", "random", "ip", "lp"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(trim(item));
  return items;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument(s);
  return v;
}

long long to_integer(const std::string& s) {
  std::size_t pos = 0;
  const long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument(s);
  return v;
}

int to_int(const std::string& s) { return static_cast<int>(to_integer(s)); }

}  // namespace

std::string_view algorithm_name(Algorithm a) { return kNames[index_of(a)]; }

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (std::size_t i = 0; i < kNumAlgorithms; ++i) {
    if (kNames[i] == name) return kAllAlgorithms[i];
  }
  return std::nullopt;
}

void ScenarioConfig::validate() const {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (K1 < 0 || K2 < 0 || K1 + K2 < 1) throw std::invalid_argument("need K1, K2 >= 0 and K1 + K2 >= 1");
  if (R_min.size() != 1 && static_cast<int>(R_min.size()) != K1) {
    throw std::invalid_argument("R_min needs one value or K1 values");
  }
  for (const double r : R_min) {
    if (!(r > 0.0)) throw std::invalid_argument("R_min values must be positive");
  }
  if (!(power_ratio >= 1.0)) throw std::invalid_argument("power_ratio must be >= 1");
  if (min_drops < 1 || min_drops > max_drops) {
    throw std::invalid_argument("need 1 <= min_drops <= max_drops");
  }
  if (!(sigma_norm > 0.0)) throw std::invalid_argument("sigma_norm must be positive");
  if (algorithms.empty()) throw std::invalid_argument("algorithms must not be empty");
  if (!(ip_time_limit > 0.0)) throw std::invalid_argument("ip_time_limit must be positive");
  if (ip_node_limit < 1) throw std::invalid_argument("ip_node_limit must be >= 1");
  if (calibration_node_limit < 1) {
    throw std::invalid_argument("calibration_node_limit must be >= 1");
  }
  channel.validate();
  radio.validate();
}

std::vector<double> ScenarioConfig::cbr_targets() const {
  if (R_min.size() == 1) return std::vector<double>(K1, R_min.front());
  return R_min;
}

bool ScenarioConfig::runs(Algorithm a) const {
  for (const Algorithm x : algorithms) {
    if (x == a) return true;
  }
  return false;
}

std::vector<ScenarioConfig> SimulationPlan::scenarios() const {
  std::vector<ScenarioConfig> out;
  for (const int k1 : k1_values) {
    for (const double ratio : power_ratios) {
      ScenarioConfig cfg = base;
      cfg.K1 = k1;
      cfg.power_ratio = ratio;
      out.push_back(cfg);
    }
  }
  return out;
}

SimulationPlan parse_plan(std::istream& in, SimulationPlan defaults) {
  SimulationPlan plan = std::move(defaults);
  ScenarioConfig& c = plan.base;
  if (plan.k1_values.empty()) plan.k1_values = {c.K1};
  if (plan.power_ratios.empty()) plan.power_ratios = {c.power_ratio};

  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"N", [&](const std::string& v) { c.N = to_int(v); }},
      {"K1",
       [&](const std::string& v) {
         plan.k1_values.clear();
         for (const auto& item : split_list(v)) plan.k1_values.push_back(to_int(item));
         c.K1 = plan.k1_values.front();
       }},
      {"K2", [&](const std::string& v) { c.K2 = to_int(v); }},
      {"R_min",
       [&](const std::string& v) {
         c.R_min.clear();
         for (const auto& item : split_list(v)) c.R_min.push_back(to_double(item));
       }},
      {"power_ratio",
       [&](const std::string& v) {
         plan.power_ratios.clear();
         for (const auto& item : split_list(v)) plan.power_ratios.push_back(to_double(item));
         c.power_ratio = plan.power_ratios.front();
       }},
      {"frames_per_drop", [&](const std::string& v) { c.channel.frames_per_drop = to_int(v); }},
      {"min_drops", [&](const std::string& v) { c.min_drops = to_int(v); }},
      {"max_drops", [&](const std::string& v) { c.max_drops = to_int(v); }},
      {"sigma_norm", [&](const std::string& v) { c.sigma_norm = to_double(v); }},
      {"seed", [&](const std::string& v) { c.seed = static_cast<std::uint64_t>(to_integer(v)); }},
      {"algorithms",
       [&](const std::string& v) {
         c.algorithms.clear();
         for (const auto& item : split_list(v)) {
           const auto a = parse_algorithm(item);
           if (!a) throw std::invalid_argument("unknown algorithm '" + item + "'");
           c.algorithms.push_back(*a);
         }
       }},
      {"ip_time_limit", [&](const std::string& v) { c.ip_time_limit = to_double(v); }},
      {"ip_node_limit", [&](const std::string& v) { c.ip_node_limit = to_integer(v); }},
      {"calibration_node_limit",
       [&](const std::string& v) { c.calibration_node_limit = to_integer(v); }},
      {"carrier_frequency", [&](const std::string& v) { c.channel.carrier_frequency = to_double(v); }},
      {"cell_radius", [&](const std::string& v) { c.channel.cell_radius = to_double(v); }},
      {"pathloss_exponent", [&](const std::string& v) { c.channel.pathloss_exponent = to_double(v); }},
      {"pathloss_ref_db", [&](const std::string& v) { c.channel.pathloss_ref_db = to_double(v); }},
      {"shadowing_sigma_db", [&](const std::string& v) { c.channel.shadowing_sigma_db = to_double(v); }},
      {"num_taps", [&](const std::string& v) { c.channel.num_taps = to_int(v); }},
      {"doppler_correlation",
       [&](const std::string& v) { c.channel.doppler_correlation = to_double(v); }},
      {"noise_density", [&](const std::string& v) { c.radio.noise_density_dbm_hz = to_double(v); }},
      {"subchannel_bandwidth",
       [&](const std::string& v) { c.radio.subchannel_bandwidth_hz = to_double(v); }},
      {"error_rate", [&](const std::string& v) { c.radio.error_rate = to_double(v); }},
      {"max_order", [&](const std::string& v) { c.radio.max_order = to_int(v); }},
  };

  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw std::runtime_error("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw std::runtime_error("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    try {
      it->second(value);
    } catch (const std::exception& e) {
      throw std::runtime_error("config line " + std::to_string(line_no) + ": bad value for '" +
                               key + "': " + e.what());
    }
  }
  for (const auto& cfg : plan.scenarios()) cfg.validate();
  return plan;
}

SimulationPlan load_plan(const std::string& path, SimulationPlan defaults) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_plan(in, std::move(defaults));
}

SimulationPlan desk_scale_plan() {
  SimulationPlan plan;
  plan.base.N = 32;
  plan.base.K2 = 3;
  plan.base.R_min = {12.0};
  plan.base.channel.frames_per_drop = 4;
  plan.base.min_drops = 50;
  plan.base.max_drops = 1000;
  plan.base.sigma_norm = 0.02;
  plan.base.ip_node_limit = 5000;
  plan.base.calibration_node_limit = 200;
  plan.k1_values = {2, 3, 4, 6};
  plan.power_ratios = {2.0, 3.0, 4.0};
  plan.base.K1 = plan.k1_values.front();
  plan.base.power_ratio = plan.power_ratios.front();
  return plan;
}

SimulationPlan full_scale_plan() {
  SimulationPlan plan;
  plan.base.N = 100;
  plan.base.K2 = 5;
  plan.base.R_min = {36.0};
  plan.base.channel.frames_per_drop = 100;
  plan.base.min_drops = 25;
  plan.base.max_drops = 1000;
  plan.base.sigma_norm = 0.02;
  plan.base.ip_time_limit = 60.0;
  plan.k1_values = {6, 8, 10, 12};
  plan.power_ratios = {2.0, 2.5, 3.0, 3.5, 4.0};
  plan.base.K1 = plan.k1_values.front();
  plan.base.power_ratio = plan.power_ratios.front();
  return plan;
}

}  // namespace ofdma
