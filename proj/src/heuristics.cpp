#include "ofdma/heuristics.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace ofdma {
namespace {

void tally(OpCounter* counter, std::uint64_t n = 1) {
  if (counter) counter->add(n);
}

std::vector<double> delivered_rates(const Instance& inst, const Allocation& alloc) {
  std::vector<double> lhs(inst.num_users(), 0.0);
  for (std::size_t n = 0; n < alloc.owner.size(); ++n) {
    if (alloc.owner[n] != kUnassigned) lhs[alloc.owner[n]] += inst.rate(n, alloc.owner[n]);
  }
  return lhs;
}

std::vector<int> sorted_cbr(const Instance& inst) {
  std::vector<int> cbr = inst.cbr_users();
  std::sort(cbr.begin(), cbr.end());
  return cbr;
}

// Interchange rule for owner k of n and owner k2 of n2, by class pair.
bool swap_improves(const Instance& inst, const std::vector<double>& lhs, int k, std::size_t n,
                   int k2, std::size_t n2) {
  const double r_nk = inst.rate(n, k);
  const double r_n2k = inst.rate(n2, k);
  const double r_nk2 = inst.rate(n, k2);
  const double r_n2k2 = inst.rate(n2, k2);
  const double lhs_k_after = lhs[k] + r_n2k - r_nk;
  const double lhs_k2_after = lhs[k2] + r_nk2 - r_n2k2;

  const bool k_cbr = inst.is_cbr(k);
  const bool k2_cbr = inst.is_cbr(k2);
  if (k_cbr && k2_cbr) {
    const bool fires = (r_n2k > r_nk && meets_target(lhs_k2_after, inst.target(k2))) ||
                       (r_nk2 > r_n2k2 && meets_target(lhs_k_after, inst.target(k)));
    // Both owners must stay at or above target, otherwise the swap is rolled back.
    return fires && meets_target(lhs_k_after, inst.target(k)) &&
           meets_target(lhs_k2_after, inst.target(k2));
  }
  if (!k_cbr && !k2_cbr) return r_n2k - r_nk + r_nk2 - r_n2k2 > 0.0;
  if (k_cbr) return r_nk2 > r_n2k2 && meets_target(lhs_k_after, inst.target(k));
  return r_n2k > r_nk && meets_target(lhs_k2_after, inst.target(k2));
}

}  // namespace

Allocation swap_pass(const Instance& instance, Allocation alloc, OpCounter* counter) {
  const auto num_sub = instance.num_subchannels();
  const auto num_users = static_cast<int>(instance.num_users());
  auto lhs = delivered_rates(instance, alloc);
  auto& owner = alloc.owner;

  for (int k = 0; k < num_users; ++k) {
    for (std::size_t n = 0; n < num_sub; ++n) {
      if (owner[n] != k) continue;
      bool swapped = false;
      for (int k2 = 0; k2 < num_users && !swapped; ++k2) {
        if (k2 == k) continue;
        for (std::size_t n2 = 0; n2 < num_sub; ++n2) {
          if (owner[n2] != k2) continue;
          tally(counter);
          if (!swap_improves(instance, lhs, k, n, k2, n2)) continue;
          lhs[k] += instance.rate(n2, k) - instance.rate(n, k);
          lhs[k2] += instance.rate(n, k2) - instance.rate(n2, k2);
          owner[n] = k2;
          owner[n2] = k;
          swapped = true;
          break;
        }
      }
    }
  }
  return alloc;
}

Allocation release_redundant(const Instance& instance, Allocation alloc, OpCounter* counter) {
  if (instance.be_users().empty()) return alloc;
  auto lhs = delivered_rates(instance, alloc);
  for (const int k : sorted_cbr(instance)) {
    for (std::size_t n = 0; n < alloc.owner.size(); ++n) {
      if (alloc.owner[n] != k) continue;
      tally(counter);
      const double r = instance.rate(n, k);
      if (!meets_target(lhs[k] - r, instance.target(k))) continue;
      const int best = instance.best_be_user(n);
      tally(counter, instance.be_users().size());
      lhs[k] -= r;
      lhs[best] += instance.rate(n, best);
      alloc.owner[n] = best;
    }
  }
  return alloc;
}

std::optional<Allocation> heur1(const Instance& instance, const Heur1Options& opts,
                                OpCounter* counter) {
  if (opts.swap_rounds < 1) throw std::invalid_argument("heur1: swap_rounds must be >= 1");
  const auto num_sub = instance.num_subchannels();
  const auto cbr = sorted_cbr(instance);
  Allocation alloc = Allocation::unassigned(num_sub);
  std::vector<double> lhs(instance.num_users(), 0.0);
  std::vector<char> in_pool(num_sub, 1);
  std::size_t pool_size = num_sub;

  // CBR phase: worst user by mean rate over the pool takes its best subchannel.
  for (;;) {
    int worst = kUnassigned;
    double worst_sum = 0.0;
    for (const int k : cbr) {
      if (meets_target(lhs[k], instance.target(k))) continue;
      double sum = 0.0;
      for (std::size_t n = 0; n < num_sub; ++n) {
        if (in_pool[n]) sum += instance.rate(n, k);
      }
      tally(counter, pool_size);
      // Equal pool size for every user, so comparing sums compares means.
      if (worst == kUnassigned || sum < worst_sum) {
        worst = k;
        worst_sum = sum;
      }
    }
    if (worst == kUnassigned) break;
    if (pool_size == 0) return std::nullopt;

    std::size_t best_n = num_sub;
    for (std::size_t n = 0; n < num_sub; ++n) {
      if (!in_pool[n]) continue;
      if (best_n == num_sub || instance.rate(n, worst) > instance.rate(best_n, worst)) best_n = n;
    }
    tally(counter, pool_size);
    alloc.owner[best_n] = worst;
    lhs[worst] += instance.rate(best_n, worst);
    in_pool[best_n] = 0;
    --pool_size;
  }

  // Leftovers to the best BE user.
  for (std::size_t n = 0; n < num_sub; ++n) {
    if (!in_pool[n]) continue;
    alloc.owner[n] = instance.best_be_user(n);
    tally(counter, instance.be_users().size());
  }

  if (opts.enable_swap) {
    for (int round = 0; round < opts.swap_rounds; ++round) {
      alloc = swap_pass(instance, std::move(alloc), counter);
    }
  }
  return release_redundant(instance, std::move(alloc), counter);
}

std::optional<Allocation> heur2(const Instance& instance, OpCounter* counter) {
  const auto num_sub = instance.num_subchannels();
  const auto num_users = static_cast<int>(instance.num_users());
  const auto cbr = sorted_cbr(instance);

  // Unconstrained best-user allocation.
  Allocation alloc = Allocation::unassigned(num_sub);
  for (std::size_t n = 0; n < num_sub; ++n) {
    int best = 0;
    for (int k = 1; k < num_users; ++k) {
      if (instance.rate(n, k) > instance.rate(n, best)) best = k;
    }
    tally(counter, num_users);
    alloc.owner[n] = best;
  }
  auto lhs = delivered_rates(instance, alloc);

  std::vector<int> unsatisfied;
  for (;;) {
    unsatisfied.clear();
    for (const int k : cbr) {
      if (!meets_target(lhs[k], instance.target(k))) unsatisfied.push_back(k);
    }
    if (unsatisfied.empty()) break;

    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t best_n = num_sub;
    int best_k = kUnassigned;
    for (std::size_t n = 0; n < num_sub; ++n) {
      const int owner = alloc.owner[n];
      const double owner_rate = instance.rate(n, owner);
      // The owner must be able to spare n: a BE user holding positive rate,
      // or a CBR user that stays at target without it.
      const bool removable = instance.is_cbr(owner)
                                 ? meets_target(lhs[owner] - owner_rate, instance.target(owner))
                                 : lhs[owner] > 0.0;
      tally(counter, unsatisfied.size());
      if (!removable) continue;
      for (const int k : unsatisfied) {
        const double r = instance.rate(n, k);
        if (!(r > 0.0)) continue;
        const double cost = reallocation_cost(owner_rate, r);
        if (cost < best_cost) {
          best_cost = cost;
          best_n = n;
          best_k = k;
        }
      }
    }
    if (best_k == kUnassigned) return std::nullopt;

    const int from = alloc.owner[best_n];
    lhs[from] -= instance.rate(best_n, from);
    lhs[best_k] += instance.rate(best_n, best_k);
    alloc.owner[best_n] = best_k;
  }
  return release_redundant(instance, std::move(alloc), counter);
}

std::optional<Allocation> random_baseline(const Instance& instance, std::uint64_t seed) {
  const auto num_sub = instance.num_subchannels();
  Allocation alloc = Allocation::unassigned(num_sub);
  std::vector<char> in_pool(num_sub, 1);
  std::size_t pool_size = num_sub;

  for (const int k : sorted_cbr(instance)) {
    double lhs = 0.0;
    while (!meets_target(lhs, instance.target(k))) {
      if (pool_size == 0) return std::nullopt;
      std::size_t best_n = num_sub;
      for (std::size_t n = 0; n < num_sub; ++n) {
        if (in_pool[n] && (best_n == num_sub || instance.rate(n, k) > instance.rate(best_n, k))) {
          best_n = n;
        }
      }
      alloc.owner[best_n] = k;
      lhs += instance.rate(best_n, k);
      in_pool[best_n] = 0;
      --pool_size;
    }
  }

  const auto& be = instance.be_users();
  if (be.empty()) return alloc;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, be.size() - 1);
  for (std::size_t n = 0; n < num_sub; ++n) {
    if (in_pool[n]) alloc.owner[n] = be[pick(rng)];
  }
  return alloc;
}

}  // namespace ofdma
