#include "ofdma/rate_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ofdma {

RateMatrix RateMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("rate matrix must be non-empty");
  }
  RateMatrix m(rows.size(), rows.front().size());
  for (std::size_t n = 0; n < rows.size(); ++n) {
    if (rows[n].size() != m.num_users()) {
      throw std::invalid_argument("rate matrix rows must have equal length");
    }
    for (std::size_t k = 0; k < m.num_users(); ++k) m(n, k) = rows[n][k];
  }
  return m;
}

double RadioParams::noise_density_w_per_hz() const {
  return std::pow(10.0, (noise_density_dbm_hz - 30.0) / 10.0);
}

void RadioParams::validate() const {
  if (!(error_rate > 0.0 && error_rate < 0.5)) {
    throw std::invalid_argument("error_rate must lie in (0, 0.5)");
  }
  if (!(subchannel_bandwidth_hz > 0.0)) {
    throw std::invalid_argument("subchannel_bandwidth must be positive");
  }
  if (max_order < 1) throw std::invalid_argument("max_order must be >= 1");
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_inverse(double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::domain_error("q_inverse: p must lie in (0, 0.5), got " + std::to_string(p));
  }
  // Q is strictly decreasing; Q(0) = 0.5 and Q(40) underflows to ~0.
  double lo = 0.0;
  double hi = 40.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (q_function(mid) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  // One Newton step on Q(x) - p; the derivative is -phi(x).
  const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  if (phi > 0.0) {
    const double step = (q_function(x) - p) / phi;
    if (std::abs(step) < (hi - lo) + 1e-12) x += step;
  }
  return x;
}

double snr_gap(double error_rate) {
  const double q = q_inverse(error_rate / 4.0);
  return q * q / 3.0;
}

Cnr normalized_cnr(double gain_sq, const RadioParams& params) {
  if (gain_sq < 0.0) throw std::invalid_argument("channel gain must be non-negative");
  const double denom = snr_gap(params.error_rate) * params.noise_density_w_per_hz() *
                       params.subchannel_bandwidth_hz;
  return Cnr{gain_sq / denom};
}

double achieved_rate(double power_per_subchannel, Cnr cnr, int max_order) {
  if (power_per_subchannel < 0.0) throw std::invalid_argument("power must be non-negative");
  const double snr = power_per_subchannel * cnr.gamma;
  if (snr <= 0.0) return 0.0;
  return std::min(std::log2(1.0 + snr), static_cast<double>(max_order));
}

RateMatrix build_rate_matrix(const std::vector<std::vector<double>>& gains,
                             double bs_power, const RadioParams& params) {
  if (gains.empty() || gains.front().empty()) {
    throw std::invalid_argument("build_rate_matrix: empty gain array");
  }
  if (bs_power < 0.0) throw std::invalid_argument("build_rate_matrix: negative power");
  params.validate();

  const std::size_t num_sub = gains.size();
  const std::size_t num_users = gains.front().size();
  const double per_sub = bs_power / static_cast<double>(num_sub);
  // Same denominator for every entry; compute the gap once.
  const double denom = snr_gap(params.error_rate) * params.noise_density_w_per_hz() *
                       params.subchannel_bandwidth_hz;

  RateMatrix rates(num_sub, num_users);
  for (std::size_t n = 0; n < num_sub; ++n) {
    if (gains[n].size() != num_users) {
      throw std::invalid_argument("build_rate_matrix: ragged gain array");
    }
    for (std::size_t k = 0; k < num_users; ++k) {
      if (gains[n][k] < 0.0) throw std::invalid_argument("build_rate_matrix: negative gain");
      rates(n, k) = achieved_rate(per_sub, Cnr{gains[n][k] / denom}, params.max_order);
    }
  }
  return rates;
}

}  // namespace ofdma
