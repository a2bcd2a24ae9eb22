#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ofdma/instance.hpp"

namespace ofdma {

enum class SolveStatus { kOptimal, kFeasible, kInfeasible };

// LP relaxation of the allocation problem (subchannels may be shared).
struct LpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  double value = 0.0;              // upper bound on the comparison objective
  std::vector<double> fraction;    // N x K row-major shares rho(n, k)
  std::size_t num_users = 0;
  double share(std::size_t n, std::size_t k) const { return fraction[n * num_users + k]; }
};

LpSolution solve_lp(const Instance& instance);

struct IlpOptions {
  double time_limit_s = std::numeric_limits<double>::infinity();
  double gap_tol = 0.0;  // prune nodes whose bound * (1 - gap_tol) <= incumbent
  // Deterministic effort cap: stop once this many nodes have been created.
  long node_limit = std::numeric_limits<long>::max();
};

struct BnbReport {
  SolveStatus status = SolveStatus::kInfeasible;
  Allocation best;
  double value = 0.0;
  long node_count = 0;
  bool proven_optimal = false;
  bool time_limit_hit = false;
  bool node_limit_hit = false;
  double seconds = 0.0;
};

// Branch-and-bound with the LP relaxation as bound, warm-started from HEUR1.
// Branches on a CBR user's fractional subchannel count first, then on the
// owner of the most fractional subchannel. kOptimal means the tree was
// exhausted with gap_tol = 0; kFeasible means a feasible allocation was found
// but not proven optimal (time or node limit, or positive gap_tol).
BnbReport solve_ilp(const Instance& instance, const IlpOptions& opts = {});

// Enumerates every owner vector. Throws std::length_error when K^N > 10^7.
struct OracleResult {
  std::optional<Allocation> best;  // nullopt when no allocation is feasible
  double value = 0.0;
};
OracleResult exhaustive_oracle(const Instance& instance);

inline constexpr double kOracleMaxAssignments = 1e7;

}  // namespace ofdma
