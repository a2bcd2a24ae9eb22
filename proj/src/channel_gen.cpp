#include "ofdma/channel_gen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ofdma {

void ChannelConfig::validate() const {
  if (!(cell_radius > kExclusionRadius)) {
    throw std::invalid_argument("cell_radius must exceed the 10 m exclusion radius");
  }
  if (num_taps < 1) throw std::invalid_argument("num_taps must be >= 1");
  if (!(doppler_correlation >= 0.0 && doppler_correlation < 1.0)) {
    throw std::invalid_argument("doppler_correlation must lie in [0, 1)");
  }
  if (frames_per_drop < 1) throw std::invalid_argument("frames_per_drop must be >= 1");
  if (shadowing_sigma_db < 0.0) throw std::invalid_argument("shadowing_sigma_db must be >= 0");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 finalizer over base + golden-ratio-spaced stream offset
  std::uint64_t z = base + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

UserPlacement place_users(int num_users, const ChannelConfig& cfg, std::uint64_t seed) {
  if (num_users < 1) throw std::invalid_argument("place_users: need at least one user");
  cfg.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> shadow(0.0, 1.0);

  // Uniform over the annulus [r0, R]: CDF of d is (d^2 - r0^2) / (R^2 - r0^2).
  const double r0_sq = kExclusionRadius * kExclusionRadius;
  const double r_sq = cfg.cell_radius * cfg.cell_radius;

  UserPlacement p;
  p.distances.reserve(num_users);
  p.shadowing_db.reserve(num_users);
  for (int k = 0; k < num_users; ++k) {
    const double u = unit(rng);
    p.distances.push_back(std::sqrt(r0_sq + u * (r_sq - r0_sq)));
    p.shadowing_db.push_back(cfg.shadowing_sigma_db * shadow(rng));
  }
  return p;
}

double large_scale_gain(double distance, double shadowing_db, const ChannelConfig& cfg) {
  const double pl_db = cfg.pathloss_ref_db + 10.0 * cfg.pathloss_exponent * std::log10(distance);
  return std::pow(10.0, (shadowing_db - pl_db) / 10.0);
}

std::vector<GainFrame> generate_drop_gains(const UserPlacement& placement,
                                           int num_subchannels, const ChannelConfig& cfg,
                                           std::uint64_t seed) {
  if (num_subchannels < 1) throw std::invalid_argument("generate_drop_gains: N must be >= 1");
  if (placement.distances.size() != placement.shadowing_db.size()) {
    throw std::invalid_argument("generate_drop_gains: malformed placement");
  }
  cfg.validate();

  using cd = std::complex<double>;
  const auto num_users = placement.distances.size();
  const auto num_sub = static_cast<std::size_t>(num_subchannels);
  const auto taps = static_cast<std::size_t>(cfg.num_taps);
  const auto frames = static_cast<std::size_t>(cfg.frames_per_drop);

  // Uniform power-delay profile: each tap CN(0, 1/L) so E|H(n)|^2 = 1.
  const double tap_sigma = std::sqrt(0.5 / static_cast<double>(taps));
  const double rho = cfg.doppler_correlation;
  const double innovation = std::sqrt(1.0 - rho * rho);

  // DFT kernel e^{-j 2 pi n l / N}, shared by all users.
  std::vector<cd> kernel(num_sub * taps);
  for (std::size_t n = 0; n < num_sub; ++n) {
    for (std::size_t l = 0; l < taps; ++l) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>(n * l % num_sub) /
                           static_cast<double>(num_sub);
      kernel[n * taps + l] = std::polar(1.0, phase);
    }
  }

  std::vector<double> large_scale(num_users);
  for (std::size_t k = 0; k < num_users; ++k) {
    large_scale[k] = large_scale_gain(placement.distances[k], placement.shadowing_db[k], cfg);
  }

  std::vector<GainFrame> out(frames, GainFrame(num_sub, std::vector<double>(num_users)));
  constexpr double kFloor = std::numeric_limits<double>::min();

  for (std::size_t k = 0; k < num_users; ++k) {
    std::mt19937_64 rng(derive_seed(seed, k));
    std::normal_distribution<double> normal(0.0, tap_sigma);
    std::vector<cd> h(taps);
    for (auto& tap : h) tap = cd(normal(rng), normal(rng));

    for (std::size_t t = 0; t < frames; ++t) {
      if (t > 0) {
        for (auto& tap : h) tap = rho * tap + innovation * cd(normal(rng), normal(rng));
      }
      for (std::size_t n = 0; n < num_sub; ++n) {
        cd resp = 0.0;
        for (std::size_t l = 0; l < taps; ++l) resp += h[l] * kernel[n * taps + l];
        out[t][n][k] = std::max(large_scale[k] * std::norm(resp), kFloor);
      }
    }
  }
  return out;
}

}  // namespace ofdma
