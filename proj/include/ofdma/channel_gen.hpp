#pragma once

#include <cstdint>
#include <vector>

namespace ofdma {

// Parametric stand-in for a macro-cell channel: log-distance path loss,
// log-normal shadowing and tapped-delay-line Rayleigh fading evolving as an
// AR(1) process from frame to frame.
struct ChannelConfig {
  double carrier_frequency = 2.5e9;  // Hz, informational only
  double cell_radius = 2000.0;       // m
  double pathloss_exponent = 3.5;
  double pathloss_ref_db = 38.0;     // dB at 1 m
  double shadowing_sigma_db = 8.0;
  int num_taps = 6;
  double doppler_correlation = 0.95;  // frame-to-frame fading correlation
  int frames_per_drop = 100;

  void validate() const;
};

inline constexpr double kExclusionRadius = 10.0;

struct UserPlacement {
  std::vector<double> distances;     // m
  std::vector<double> shadowing_db;  // dB
};

// One frame of gains: gains[n][k] for subchannel n, user k.
using GainFrame = std::vector<std::vector<double>>;

UserPlacement place_users(int num_users, const ChannelConfig& cfg, std::uint64_t seed);

// Deterministic large-scale gain PL(d) * 10^(s/10), linear.
double large_scale_gain(double distance, double shadowing_db, const ChannelConfig& cfg);

std::vector<GainFrame> generate_drop_gains(const UserPlacement& placement,
                                           int num_subchannels, const ChannelConfig& cfg,
                                           std::uint64_t seed);

// Counter-based seed derivation. Streams derived from the same base never
// collide for distinct (base, stream) pairs with overwhelming probability.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace ofdma
