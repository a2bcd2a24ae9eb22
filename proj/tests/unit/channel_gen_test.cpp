#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "ofdma/channel_gen.hpp"

namespace ofdma {
namespace {

// Small-scale fading power of user k on subchannel n, frame t, with the
// deterministic large-scale factor divided out.
std::vector<double> fading_series(const std::vector<GainFrame>& frames,
                                  const UserPlacement& p, const ChannelConfig& cfg,
                                  std::size_t n, std::size_t k) {
  const double ls = large_scale_gain(p.distances[k], p.shadowing_db[k], cfg);
  std::vector<double> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(f[n][k] / ls);
  return out;
}

double mean_of(const std::vector<double>& x) {
  double s = 0.0;
  for (const double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// Fixed placement so only the fading process varies.
UserPlacement unit_placement(int users) {
  return UserPlacement{std::vector<double>(users, 100.0), std::vector<double>(users, 0.0)};
}

TEST(PlaceUsers, DeterministicForSeed) {
  const ChannelConfig cfg;
  const auto a = place_users(20, cfg, 99);
  const auto b = place_users(20, cfg, 99);
  const auto c = place_users(20, cfg, 100);
  EXPECT_EQ(a.distances, b.distances);
  EXPECT_EQ(a.shadowing_db, b.shadowing_db);
  EXPECT_NE(a.distances, c.distances);
}

TEST(PlaceUsers, DistancesInsideAnnulusWithUniformAreaMean) {
  const ChannelConfig cfg;
  const auto p = place_users(10000, cfg, 5);
  double sum = 0.0;
  for (const double d : p.distances) {
    ASSERT_GE(d, kExclusionRadius);
    ASSERT_LE(d, cfg.cell_radius);
    sum += d;
  }
  const double mean = sum / 10000.0;
  EXPECT_NEAR(mean / (2.0 / 3.0 * cfg.cell_radius), 1.0, 0.02);
}

TEST(PlaceUsers, ShadowingHasConfiguredSpread) {
  const ChannelConfig cfg;
  const auto p = place_users(20000, cfg, 11);
  const double m = mean_of(p.shadowing_db);
  double ss = 0.0;
  for (const double s : p.shadowing_db) ss += (s - m) * (s - m);
  EXPECT_NEAR(m, 0.0, 0.2);
  EXPECT_NEAR(std::sqrt(ss / 19999.0), cfg.shadowing_sigma_db, 0.2);
}

TEST(LargeScaleGain, LogDistancePathLoss) {
  const ChannelConfig cfg;
  EXPECT_NEAR(large_scale_gain(1.0, 0.0, cfg), std::pow(10.0, -3.8), 1e-18);
  EXPECT_NEAR(large_scale_gain(100.0, 0.0, cfg), std::pow(10.0, -10.8), 1e-25);
  EXPECT_NEAR(large_scale_gain(100.0, 10.0, cfg), std::pow(10.0, -9.8), 1e-24);
}

TEST(GenerateDropGains, ShapeAndPositivity) {
  ChannelConfig cfg;
  cfg.frames_per_drop = 7;
  const auto p = place_users(4, cfg, 1);
  const auto frames = generate_drop_gains(p, 16, cfg, 2);
  ASSERT_EQ(frames.size(), 7u);
  for (const auto& f : frames) {
    ASSERT_EQ(f.size(), 16u);
    for (const auto& row : f) {
      ASSERT_EQ(row.size(), 4u);
      for (const double g : row) {
        EXPECT_GT(g, 0.0);
        EXPECT_TRUE(std::isfinite(g));
      }
    }
  }
  EXPECT_EQ(frames, generate_drop_gains(p, 16, cfg, 2));
}

TEST(GenerateDropGains, SingleTapIsFlatAcrossSubchannels) {
  ChannelConfig cfg;
  cfg.num_taps = 1;
  cfg.frames_per_drop = 3;
  const auto frames = generate_drop_gains(unit_placement(2), 8, cfg, 3);
  for (const auto& f : frames) {
    for (std::size_t n = 1; n < 8; ++n) {
      EXPECT_DOUBLE_EQ(f[n][0], f[0][0]);
      EXPECT_DOUBLE_EQ(f[n][1], f[0][1]);
    }
  }
}

TEST(GenerateDropGains, FadingHasUnitMean) {
  ChannelConfig cfg;
  cfg.doppler_correlation = 0.0;
  cfg.frames_per_drop = 20000;
  const auto p = unit_placement(1);
  const auto frames = generate_drop_gains(p, 4, cfg, 17);
  for (std::size_t n = 0; n < 4; ++n) {
    EXPECT_NEAR(mean_of(fading_series(frames, p, cfg, n, 0)), 1.0, 0.02);
  }
}

TEST(GenerateDropGains, ZeroDopplerCorrelationGivesIndependentFrames) {
  ChannelConfig cfg;
  cfg.doppler_correlation = 0.0;
  cfg.frames_per_drop = 10000;
  const auto p = unit_placement(1);
  const auto x = fading_series(generate_drop_gains(p, 1, cfg, 23), p, cfg, 0, 0);
  const std::vector<double> head(x.begin(), x.end() - 1);
  const std::vector<double> tail(x.begin() + 1, x.end());
  EXPECT_LT(std::abs(correlation(head, tail)), 3.0 / std::sqrt(10000.0));
}

TEST(GenerateDropGains, DopplerCorrelationCarriesOverFrames) {
  ChannelConfig cfg;
  cfg.doppler_correlation = 0.95;
  cfg.frames_per_drop = 20000;
  const auto p = unit_placement(1);
  const auto x = fading_series(generate_drop_gains(p, 1, cfg, 29), p, cfg, 0, 0);
  const std::vector<double> head(x.begin(), x.end() - 1);
  const std::vector<double> tail(x.begin() + 1, x.end());
  // Power of a complex Gaussian AR(1) process correlates as rho^2.
  EXPECT_NEAR(correlation(head, tail), 0.95 * 0.95, 0.03);
}

TEST(GenerateDropGains, FrequencyCorrelationFallsWithMoreTaps) {
  double previous = 2.0;
  for (const int taps : {1, 3, 6, 16}) {
    ChannelConfig cfg;
    cfg.num_taps = taps;
    cfg.doppler_correlation = 0.0;
    cfg.frames_per_drop = 4000;
    const auto p = unit_placement(1);
    const auto frames = generate_drop_gains(p, 32, cfg, 31);
    const double c = correlation(fading_series(frames, p, cfg, 0, 0),
                                 fading_series(frames, p, cfg, 1, 0));
    EXPECT_LT(c, previous) << "taps = " << taps;
    previous = c;
  }
}

TEST(GenerateDropGains, UsersFadeIndependently) {
  ChannelConfig cfg;
  cfg.doppler_correlation = 0.0;
  cfg.frames_per_drop = 10000;
  const auto p = unit_placement(2);
  const auto frames = generate_drop_gains(p, 2, cfg, 37);
  for (std::size_t n = 0; n < 2; ++n) {
    const double c = correlation(fading_series(frames, p, cfg, n, 0),
                                 fading_series(frames, p, cfg, n, 1));
    EXPECT_LT(std::abs(c), 4.0 / std::sqrt(10000.0));
  }
}

TEST(GenerateDropGains, RejectsBadArguments) {
  const ChannelConfig cfg;
  EXPECT_THROW(generate_drop_gains(unit_placement(1), 0, cfg, 1), std::invalid_argument);
  ChannelConfig bad = cfg;
  bad.num_taps = 0;
  EXPECT_THROW(generate_drop_gains(unit_placement(1), 4, bad, 1), std::invalid_argument);
  bad = cfg;
  bad.doppler_correlation = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.cell_radius = 5.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(DeriveSeed, DistinctStreamsAndBases) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t base = 0; base < 50; ++base) {
    for (std::uint64_t stream = 0; stream < 50; ++stream) {
      seen.insert(derive_seed(base, stream));
    }
  }
  EXPECT_EQ(seen.size(), 2500u);
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

}  // namespace
}  // namespace ofdma
