#pragma once

#include <cstddef>
#include <vector>

#include "ofdma/rate_matrix.hpp"

namespace ofdma {

inline constexpr int kUnassigned = -1;

// Absolute slack used whenever a delivered rate is compared with a CBR
// target, so that every solver agrees on what "meets the target" means.
inline constexpr double kRateTolerance = 1e-9;

inline bool meets_target(double delivered, double target) {
  return delivered >= target - kRateTolerance;
}

enum class UserClass { kCbr, kBe };

// One allocation problem. Users are 0-based column indices into the rate
// matrix; every user is either CBR (with a positive rate target) or BE.
class Instance {
 public:
  Instance(RateMatrix rates, std::vector<int> cbr_users, std::vector<double> cbr_targets);

  // Conventional layout used by the file format: users 0..K1-1 are CBR.
  static Instance with_leading_cbr(RateMatrix rates, std::vector<double> cbr_targets);

  const RateMatrix& rates() const { return rates_; }
  double rate(std::size_t n, std::size_t k) const { return rates_(n, k); }
  std::size_t num_subchannels() const { return rates_.num_subchannels(); }
  std::size_t num_users() const { return rates_.num_users(); }

  const std::vector<int>& cbr_users() const { return cbr_users_; }
  const std::vector<int>& be_users() const { return be_users_; }
  UserClass user_class(int k) const { return classes_[k]; }
  bool is_cbr(int k) const { return classes_[k] == UserClass::kCbr; }

  // Target for user k: R_min for CBR users, 0 for BE users.
  double target(int k) const { return targets_[k]; }
  double total_cbr_target() const;

  // Best-rate BE user on subchannel n (lowest index on ties), or kUnassigned
  // when there are no BE users.
  int best_be_user(std::size_t n) const;

 private:
  RateMatrix rates_;
  std::vector<int> cbr_users_;
  std::vector<int> be_users_;
  std::vector<UserClass> classes_;
  std::vector<double> targets_;
};

// Exclusive subchannel -> user map; kUnassigned marks an idle subchannel.
struct Allocation {
  std::vector<int> owner;

  static Allocation unassigned(std::size_t num_subchannels) {
    return Allocation{std::vector<int>(num_subchannels, kUnassigned)};
  }
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct Evaluation {
  std::vector<double> lhs;  // delivered rate per user (all users, not only CBR)
  bool feasible = false;
  double objective = 0.0;
  double raw_sum = 0.0;
};

// Throws std::invalid_argument when the allocation does not fit the instance.
Evaluation evaluate(const Instance& instance, const Allocation& alloc);

// Scalar used for every cross-scheme comparison.
double comparison_objective(const Instance& instance, const Allocation& alloc);

// Sum over subchannels of the best rate among all users: the unconstrained
// best-user allocation, an upper bound on raw_sum of any allocation.
double unconstrained_bound(const Instance& instance);

}  // namespace ofdma
