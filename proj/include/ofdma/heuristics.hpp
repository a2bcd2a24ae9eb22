#pragma once

#include <cstdint>
#include <optional>

#include "ofdma/instance.hpp"

namespace ofdma {

// Tally of elementary rate comparisons/accumulations, used to check the
// empirical growth of the heuristics' running time.
struct OpCounter {
  std::uint64_t ops = 0;
  void add(std::uint64_t n = 1) { ops += n; }
};

struct Heur1Options {
  bool enable_swap = true;
  int swap_rounds = 1;
};

// All procedures return std::nullopt when they cannot reach a feasible
// allocation (outage). `counter` may be null.

// Interior-point style construction: CBR users first (worst average rate
// picks its best subchannel), leftovers to the best BE user, pairwise swap
// improvement, then release of redundant CBR subchannels.
std::optional<Allocation> heur1(const Instance& instance, const Heur1Options& opts = {},
                                OpCounter* counter = nullptr);

// One sweep of the four class-pair interchange rules over all users.
Allocation swap_pass(const Instance& instance, Allocation alloc, OpCounter* counter = nullptr);

// Hands every CBR subchannel whose removal keeps its owner at or above target
// to the best BE user. No-op without BE users.
Allocation release_redundant(const Instance& instance, Allocation alloc,
                             OpCounter* counter = nullptr);

// Exterior approach: start from the unconstrained best-user allocation and
// move subchannels to unsatisfied CBR users by the cheapest rate loss per
// rate gained.
std::optional<Allocation> heur2(const Instance& instance, OpCounter* counter = nullptr);

// Cost of moving subchannel n from `owner_rate` to a candidate with
// `candidate_rate` > 0.
inline double reallocation_cost(double owner_rate, double candidate_rate) {
  return (owner_rate - candidate_rate) / candidate_rate;
}

// Semi-random baseline: each CBR user in turn takes its best remaining
// subchannels until satisfied; the rest go to uniformly random BE users.
std::optional<Allocation> random_baseline(const Instance& instance, std::uint64_t seed);

}  // namespace ofdma
