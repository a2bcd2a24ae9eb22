#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ofdma/rate_matrix.hpp"

namespace ofdma {

// Link parameters shared by every subchannel. Noise density is kept in
// dBm/Hz because that is how it is configured; use noise_density_w_per_hz()
// for arithmetic.
struct RadioParams {
  double noise_density_dbm_hz = -174.0;
  double subchannel_bandwidth_hz = 200e3;
  double error_rate = 1e-6;
  int max_order = 6;

  double noise_density_w_per_hz() const;
  void validate() const;
};

// Normalized channel-to-noise ratio of one subchannel/user pair.
struct Cnr {
  double gamma = 0.0;
};

// Standard Gaussian tail probability Q(x) = P[Z > x].
double q_function(double x);

// Inverse of q_function on (0, 0.5). Throws std::domain_error outside it.
double q_inverse(double p);

// SNR gap (1/3) * Q^{-1}(P_e / 4)^2 for target error rate P_e.
double snr_gap(double error_rate);

Cnr normalized_cnr(double gain_sq, const RadioParams& params);

// Bits per OFDMA symbol carried by one subchannel, capped at max_order.
double achieved_rate(double power_per_subchannel, Cnr cnr, int max_order);

// Rates for an N x K array of channel power gains under uniform power
// loading (P_bs / N on every subchannel). gains is row-major, one row per
// subchannel.
RateMatrix build_rate_matrix(const std::vector<std::vector<double>>& gains,
                             double bs_power, const RadioParams& params);

}  // namespace ofdma
