#include "ofdma/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ofdma {

Instance::Instance(RateMatrix rates, std::vector<int> cbr_users, std::vector<double> cbr_targets)
    : rates_(std::move(rates)), cbr_users_(std::move(cbr_users)) {
  if (rates_.empty()) throw std::invalid_argument("instance: empty rate matrix");
  if (cbr_users_.size() != cbr_targets.size()) {
    throw std::invalid_argument("instance: one target per CBR user required");
  }
  const auto num_users = static_cast<int>(rates_.num_users());
  classes_.assign(num_users, UserClass::kBe);
  targets_.assign(num_users, 0.0);

  for (std::size_t i = 0; i < cbr_users_.size(); ++i) {
    const int k = cbr_users_[i];
    if (k < 0 || k >= num_users) throw std::invalid_argument("instance: CBR user out of range");
    if (classes_[k] == UserClass::kCbr) throw std::invalid_argument("instance: duplicate CBR user");
    if (!(cbr_targets[i] > 0.0) || !std::isfinite(cbr_targets[i])) {
      throw std::invalid_argument("instance: CBR targets must be positive");
    }
    classes_[k] = UserClass::kCbr;
    targets_[k] = cbr_targets[i];
  }
  for (int k = 0; k < num_users; ++k) {
    if (classes_[k] == UserClass::kBe) be_users_.push_back(k);
  }
  for (std::size_t n = 0; n < rates_.num_subchannels(); ++n) {
    for (const double r : rates_.row(n)) {
      if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("instance: rates must be finite and non-negative");
      }
    }
  }
}

Instance Instance::with_leading_cbr(RateMatrix rates, std::vector<double> cbr_targets) {
  std::vector<int> cbr(cbr_targets.size());
  for (std::size_t i = 0; i < cbr.size(); ++i) cbr[i] = static_cast<int>(i);
  if (cbr.size() > rates.num_users()) {
    throw std::invalid_argument("instance: more CBR targets than users");
  }
  return Instance(std::move(rates), std::move(cbr), std::move(cbr_targets));
}

double Instance::total_cbr_target() const {
  double total = 0.0;
  for (const int k : cbr_users_) total += targets_[k];
  return total;
}

int Instance::best_be_user(std::size_t n) const {
  int best = kUnassigned;
  for (const int k : be_users_) {
    if (best == kUnassigned || rates_(n, k) > rates_(n, best)) best = k;
  }
  return best;
}

Evaluation evaluate(const Instance& instance, const Allocation& alloc) {
  const auto num_sub = instance.num_subchannels();
  const auto num_users = static_cast<int>(instance.num_users());
  if (alloc.owner.size() != num_sub) {
    throw std::invalid_argument("evaluate: allocation length " +
                                std::to_string(alloc.owner.size()) + " != N " +
                                std::to_string(num_sub));
  }
  Evaluation ev;
  ev.lhs.assign(num_users, 0.0);
  double be_sum = 0.0;
  for (std::size_t n = 0; n < num_sub; ++n) {
    const int k = alloc.owner[n];
    if (k == kUnassigned) continue;
    if (k < 0 || k >= num_users) throw std::invalid_argument("evaluate: owner out of range");
    const double r = instance.rate(n, k);
    ev.lhs[k] += r;
    ev.raw_sum += r;
    if (!instance.is_cbr(k)) be_sum += r;
  }
  ev.feasible = true;
  double cbr_credit = 0.0;
  for (const int k : instance.cbr_users()) {
    const double target = instance.target(k);
    if (meets_target(ev.lhs[k], target)) {
      cbr_credit += target;
    } else {
      ev.feasible = false;
      cbr_credit += ev.lhs[k];
    }
  }
  ev.objective = cbr_credit + be_sum;
  return ev;
}

double comparison_objective(const Instance& instance, const Allocation& alloc) {
  return evaluate(instance, alloc).objective;
}

double unconstrained_bound(const Instance& instance) {
  double total = 0.0;
  for (std::size_t n = 0; n < instance.num_subchannels(); ++n) {
    const auto row = instance.rates().row(n);
    total += *std::max_element(row.begin(), row.end());
  }
  return total;
}

}  // namespace ofdma
