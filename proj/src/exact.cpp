#include "ofdma/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <queue>
#include <stdexcept>

#include "ofdma/heuristics.hpp"
#include "ofdma/simplex.hpp"

namespace ofdma {
namespace {

constexpr double kIntegralTol = 1e-7;
constexpr double kConsistencyTol = 1e-6;

// A subproblem restriction: keep a single option column for a subchannel,
// drop one option column, or bound the number of subchannels a CBR user holds.
struct Decision {
  enum class Kind { kKeepOption, kExclude, kAtMost, kAtLeast };
  Kind kind;
  std::size_t target;  // subchannel, column, or CBR position
  double value;        // kept column, or count bound
};

// Per-subchannel multiple-choice LP. Each subchannel picks a convex
// combination of "options": a CBR user with positive rate on it, or the sink
// (its best BE user, or idle when there are no BE users). Giving a subchannel
// to any other BE user is dominated by the sink, and giving it to a CBR user
// with zero rate is dominated as well.
//
// The structural columns come first in every tableau the model builds, so
// decisions can be applied to the root tableau or to one rebuilt from scratch.
class LpModel {
 public:
  struct Column {
    std::size_t subchannel;
    int user;  // kUnassigned for the sink
  };

  explicit LpModel(const Instance& inst);

  bool root_feasible() const { return root_.has_value(); }
  const DenseSimplex& root() const { return *root_; }
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::size_t>& options(std::size_t n) const { return options_[n]; }

  // Objective value of a relaxed solution.
  double bound(const std::vector<double>& x) const {
    double v = constant_;
    for (std::size_t col = 0; col < columns_.size(); ++col) v += value_[col] * x[col];
    return v;
  }

  // Solves the relaxation under `decisions` with a fresh two-phase simplex.
  std::optional<DenseSimplex> solve(const std::vector<Decision>& decisions) const;

  // Adds one decision to an optimal tableau in place.
  DenseSimplex::Status apply(DenseSimplex& lp, const Decision& d) const;

  // Whether x satisfies the relaxation rows and `decisions` to tolerance;
  // guards warm-started tableaus against numerical drift.
  bool consistent(const std::vector<double>& x, const std::vector<Decision>& decisions) const;

  // Fractional number of subchannels held by each CBR user.
  std::vector<double> counts(const std::vector<double>& x) const {
    std::vector<double> c(count_rows_.size(), 0.0);
    for (std::size_t col = 0; col < columns_.size(); ++col) {
      const int u = columns_[col].user;
      if (u != kUnassigned) c[cbr_index_[u]] += x[col];
    }
    return c;
  }

  int owner_of(std::size_t col) const {
    const auto& c = columns_[col];
    return c.user == kUnassigned ? inst_.best_be_user(c.subchannel) : c.user;
  }

 private:
  const Instance& inst_;
  std::vector<Column> columns_;
  std::vector<double> value_;  // BE rate earned by a sink column, 0 otherwise
  std::vector<std::vector<std::size_t>> options_;
  std::vector<std::vector<double>> count_rows_;  // per CBR user, 1 on its columns
  std::vector<std::size_t> cbr_index_;           // user -> position in cbr_users()
  double constant_ = 0.0;
  std::optional<DenseSimplex> root_;

  // Coverage right-hand side, widened by the feasibility tolerance so every
  // allocation that evaluate() accepts stays feasible in the relaxation.
  double coverage_rhs(std::size_t cbr_index) const {
    return std::max(0.0, inst_.target(inst_.cbr_users()[cbr_index]) - kRateTolerance);
  }
};

LpModel::LpModel(const Instance& inst) : inst_(inst) {
  const auto num_sub = inst_.num_subchannels();
  const auto& cbr = inst_.cbr_users();

  options_.resize(num_sub);
  for (std::size_t n = 0; n < num_sub; ++n) {
    for (const int k : cbr) {
      if (inst_.rate(n, k) <= 0.0) continue;
      options_[n].push_back(columns_.size());
      columns_.push_back({n, k});
      value_.push_back(0.0);
    }
    const int be = inst_.best_be_user(n);
    options_[n].push_back(columns_.size());
    columns_.push_back({n, kUnassigned});
    value_.push_back(be == kUnassigned ? 0.0 : inst_.rate(n, be));
  }

  cbr_index_.assign(inst_.num_users(), 0);
  count_rows_.assign(cbr.size(), std::vector<double>(columns_.size(), 0.0));
  for (std::size_t i = 0; i < cbr.size(); ++i) cbr_index_[cbr[i]] = i;
  for (std::size_t col = 0; col < columns_.size(); ++col) {
    if (columns_[col].user != kUnassigned) count_rows_[cbr_index_[columns_[col].user]][col] = 1.0;
  }
  constant_ = inst_.total_cbr_target();
  root_ = solve({});
}

std::optional<DenseSimplex> LpModel::solve(const std::vector<Decision>& decisions) const {
  const auto num_sub = inst_.num_subchannels();
  const auto& cbr = inst_.cbr_users();
  const auto num_cbr = cbr.size();
  const std::size_t num_struct = columns_.size();

  // Count limits become extra rows over the structural columns.
  struct ExtraRow {
    const std::vector<double>* coeffs;
    double rhs;
    bool at_most;
  };
  std::vector<ExtraRow> extra;
  std::vector<char> excluded(num_struct, 0);
  for (const auto& d : decisions) {
    switch (d.kind) {
      case Decision::Kind::kKeepOption:
        for (const std::size_t col : options_[d.target]) {
          if (col != static_cast<std::size_t>(d.value)) excluded[col] = 1;
        }
        break;
      case Decision::Kind::kExclude:
        excluded[d.target] = 1;
        break;
      case Decision::Kind::kAtMost:
      case Decision::Kind::kAtLeast:
        extra.push_back({&count_rows_[d.target], d.value, d.kind == Decision::Kind::kAtMost});
        break;
    }
  }

  // Rows: convexity per subchannel, coverage per CBR user, extra rows.
  // Columns: structural, coverage surplus, extra-row slack, artificials.
  const std::size_t num_extra = extra.size();
  const std::size_t rows = num_sub + num_cbr + num_extra;
  const std::size_t surplus0 = num_struct;
  const std::size_t slack0 = surplus0 + num_cbr;
  const std::size_t artificial0 = slack0 + num_extra;
  std::vector<std::size_t> needs_artificial;
  for (std::size_t n = 0; n < num_sub; ++n) {
    if (excluded[options_[n].back()]) needs_artificial.push_back(n);
  }
  for (std::size_t i = 0; i < num_cbr; ++i) needs_artificial.push_back(num_sub + i);
  for (std::size_t l = 0; l < num_extra; ++l) {
    if (!extra[l].at_most) needs_artificial.push_back(num_sub + num_cbr + l);
  }
  const std::size_t cols = artificial0 + needs_artificial.size();

  std::vector<double> a(rows * cols, 0.0);
  std::vector<double> b(rows, 1.0);
  std::vector<std::size_t> basis(rows, cols);
  for (std::size_t col = 0; col < num_struct; ++col) {
    const auto& c = columns_[col];
    a[c.subchannel * cols + col] = 1.0;
    if (c.user == kUnassigned) {
      if (!excluded[col]) basis[c.subchannel] = col;
      continue;
    }
    a[(num_sub + cbr_index_[c.user]) * cols + col] = inst_.rate(c.subchannel, c.user);
  }
  for (std::size_t i = 0; i < num_cbr; ++i) {
    b[num_sub + i] = coverage_rhs(i);
    a[(num_sub + i) * cols + surplus0 + i] = -1.0;
  }
  for (std::size_t l = 0; l < num_extra; ++l) {
    const std::size_t row = num_sub + num_cbr + l;
    std::copy(extra[l].coeffs->begin(), extra[l].coeffs->end(), &a[row * cols]);
    b[row] = extra[l].rhs;
    a[row * cols + slack0 + l] = extra[l].at_most ? 1.0 : -1.0;
    if (extra[l].at_most) basis[row] = slack0 + l;
  }
  std::vector<double> phase1(cols, 0.0);
  for (std::size_t t = 0; t < needs_artificial.size(); ++t) {
    const std::size_t row = needs_artificial[t];
    a[row * cols + artificial0 + t] = 1.0;
    basis[row] = artificial0 + t;
    phase1[artificial0 + t] = -1.0;
  }

  DenseSimplex lp(rows, cols, std::move(a), std::move(b), std::move(phase1), std::move(basis));
  const auto check = [](DenseSimplex::Status s) {
    if (s == DenseSimplex::Status::kStalled) {
      throw std::runtime_error("LP relaxation: simplex failed to converge");
    }
    return s == DenseSimplex::Status::kOptimal;
  };
  for (std::size_t col = 0; col < num_struct; ++col) {
    if (excluded[col]) lp.fix_at_zero(col);  // nonbasic, so this only bars entry
  }
  if (!check(lp.optimize())) return std::nullopt;
  if (lp.objective_value() < -1e-9 * std::max(1.0, constant_ + static_cast<double>(rows))) {
    return std::nullopt;
  }
  for (std::size_t t = 0; t < needs_artificial.size(); ++t) {
    if (!check(lp.fix_at_zero(artificial0 + t))) return std::nullopt;
  }
  std::vector<double> phase2(cols, 0.0);
  std::copy(value_.begin(), value_.end(), phase2.begin());
  lp.set_objective(std::move(phase2));
  if (!check(lp.optimize())) return std::nullopt;
  return lp;
}

DenseSimplex::Status LpModel::apply(DenseSimplex& lp, const Decision& d) const {
  if (d.kind == Decision::Kind::kExclude) return lp.fix_at_zero(d.target);
  if (d.kind != Decision::Kind::kKeepOption) {
    return lp.add_constraint(count_rows_[d.target], d.value,
                             d.kind == Decision::Kind::kAtMost);
  }
  for (const std::size_t col : options_[d.target]) {
    if (col == static_cast<std::size_t>(d.value)) continue;
    const auto s = lp.fix_at_zero(col);
    if (s != DenseSimplex::Status::kOptimal) return s;
  }
  return DenseSimplex::Status::kOptimal;
}

bool LpModel::consistent(const std::vector<double>& x,
                         const std::vector<Decision>& decisions) const {
  const auto& cbr = inst_.cbr_users();
  std::vector<double> cover(cbr.size(), 0.0);
  for (std::size_t n = 0; n < options_.size(); ++n) {
    double total = 0.0;
    for (const std::size_t col : options_[n]) {
      total += x[col];
      const int u = columns_[col].user;
      if (u != kUnassigned) cover[cbr_index_[u]] += inst_.rate(n, u) * x[col];
    }
    if (std::abs(total - 1.0) > kConsistencyTol) return false;
  }
  for (std::size_t i = 0; i < cbr.size(); ++i) {
    const double target = inst_.target(cbr[i]);
    if (cover[i] < target - kConsistencyTol * std::max(1.0, target)) return false;
  }
  const auto c = counts(x);
  for (const auto& d : decisions) {
    switch (d.kind) {
      case Decision::Kind::kKeepOption:
        if (x[static_cast<std::size_t>(d.value)] < 1.0 - kConsistencyTol) return false;
        break;
      case Decision::Kind::kExclude:
        if (x[d.target] > kConsistencyTol) return false;
        break;
      case Decision::Kind::kAtMost:
        if (c[d.target] > d.value + kConsistencyTol) return false;
        break;
      case Decision::Kind::kAtLeast:
        if (c[d.target] < d.value - kConsistencyTol) return false;
        break;
    }
  }
  return true;
}

// Makes a rounded relaxation feasible when it leaves CBR users short: each
// short user takes the subchannel with the most rate per unit of BE rate
// given up, preferring subchannels that other CBR users can spare. Surplus is
// then released and the interchange pass tidies up.
std::optional<Allocation> repair(const Instance& inst, Allocation alloc) {
  auto lhs = evaluate(inst, alloc).lhs;
  for (const int k : inst.cbr_users()) {
    while (!meets_target(lhs[k], inst.target(k))) {
      std::size_t pick = alloc.owner.size();
      bool pick_free = false;
      double pick_score = 0.0;
      for (std::size_t n = 0; n < alloc.owner.size(); ++n) {
        const double r = inst.rate(n, k);
        const int owner = alloc.owner[n];
        if (r <= 0.0 || owner == k) continue;
        bool free = false;
        double loss = 0.0;
        if (owner != kUnassigned && inst.is_cbr(owner)) {
          if (!meets_target(lhs[owner] - inst.rate(n, owner), inst.target(owner))) continue;
          free = true;
        } else {
          loss = owner == kUnassigned ? 0.0 : inst.rate(n, owner);
          free = loss <= 0.0;
        }
        const double score = free ? r : r / loss;
        if (pick == alloc.owner.size() || (free && !pick_free) ||
            (free == pick_free && score > pick_score)) {
          pick = n;
          pick_free = free;
          pick_score = score;
        }
      }
      if (pick == alloc.owner.size()) return std::nullopt;
      const int owner = alloc.owner[pick];
      if (owner != kUnassigned) lhs[owner] -= inst.rate(pick, owner);
      lhs[k] += inst.rate(pick, k);
      alloc.owner[pick] = k;
    }
  }
  return swap_pass(inst, release_redundant(inst, std::move(alloc)));
}

struct Node {
  double bound;
  long id;
  std::vector<Decision> decisions;
  // Pending branch: on a CBR user's subchannel count when one is fractional,
  // otherwise on the owner of the most fractional subchannel.
  bool branch_on_count;
  std::size_t branch_target;
  double branch_count;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

}  // namespace

LpSolution solve_lp(const Instance& instance) {
  LpModel model(instance);
  LpSolution sol;
  sol.num_users = instance.num_users();
  if (!model.root_feasible()) return sol;

  sol.status = SolveStatus::kOptimal;
  sol.value = model.bound(model.root().primal());
  sol.fraction.assign(instance.num_subchannels() * instance.num_users(), 0.0);
  const auto x = model.root().primal();
  for (std::size_t col = 0; col < model.columns().size(); ++col) {
    const int owner = model.owner_of(col);
    if (owner == kUnassigned || x[col] == 0.0) continue;
    sol.fraction[model.columns()[col].subchannel * sol.num_users + owner] += x[col];
  }
  return sol;
}

BnbReport solve_ilp(const Instance& instance, const IlpOptions& opts) {
  if (opts.gap_tol < 0.0) throw std::invalid_argument("solve_ilp: gap_tol must be >= 0");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  BnbReport report;
  LpModel model(instance);
  report.node_count = 1;
  if (!model.root_feasible()) {
    report.proven_optimal = true;
    report.seconds = elapsed();
    return report;
  }

  const auto num_sub = instance.num_subchannels();
  bool have_incumbent = false;
  const auto offer = [&](const Allocation& alloc) {
    const Evaluation ev = evaluate(instance, alloc);
    if (!ev.feasible) return;
    if (!have_incumbent || ev.objective > report.value) {
      have_incumbent = true;
      report.value = ev.objective;
      report.best = alloc;
    }
  };
  const auto prunable = [&](double bound) {
    return have_incumbent &&
           bound * (1.0 - opts.gap_tol) <= report.value + 1e-9 * std::max(1.0, std::abs(report.value));
  };

  if (auto warm = heur1(instance)) offer(*warm);

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;

  // Re-solves a node's relaxation from the root tableau, rebuilding from
  // scratch if the warm start stalls or drifts. nullopt means infeasible.
  const auto extend = [&](const DenseSimplex& base, const std::vector<Decision>& prior,
                          const std::vector<Decision>& added,
                          std::vector<Decision>& all) -> std::optional<DenseSimplex> {
    all = prior;
    DenseSimplex lp = base;
    bool warm_ok = true;
    for (const auto& d : added) {
      all.push_back(d);
      if (!warm_ok) continue;
      const auto s = model.apply(lp, d);
      if (s == DenseSimplex::Status::kInfeasible) return std::nullopt;
      if (s != DenseSimplex::Status::kOptimal) warm_ok = false;
    }
    if (warm_ok && model.consistent(lp.primal(), all)) return lp;
    return model.solve(all);
  };

  // Scores an LP-solved node: harvests integral or rounded allocations and
  // queues it for branching when it can still improve on the incumbent.
  const auto process = [&](const DenseSimplex& lp, std::vector<Decision> decisions) {
    const auto x = lp.primal();
    const double bound = model.bound(x);
    if (prunable(bound)) return;

    Allocation rounded = Allocation::unassigned(num_sub);
    bool integral = true;
    std::size_t branch_n = num_sub;
    double most_fractional = 0.0;
    for (std::size_t n = 0; n < num_sub; ++n) {
      std::size_t pick = model.options(n).front();
      for (const std::size_t col : model.options(n)) {
        if (x[col] > x[pick]) pick = col;
        const double frac = std::min(x[col], 1.0 - x[col]);
        if (frac > kIntegralTol) {
          integral = false;
          if (frac > most_fractional) {
            most_fractional = frac;
            branch_n = n;
          }
        }
      }
      rounded.owner[n] = model.owner_of(pick);
    }
    offer(rounded);
    if (!integral) {
      if (auto fixed = repair(instance, std::move(rounded))) offer(*fixed);
    }
    if (integral || prunable(bound)) return;

    // Reduced-cost fixing: every column is at most 1, so a nonbasic column
    // whose reduced cost alone drags the bound under the incumbent stays at
    // zero throughout this subtree.
    for (std::size_t col = 0; col < model.columns().size(); ++col) {
      if (lp.is_basic(col) || lp.is_forbidden(col)) continue;
      if (prunable(bound - lp.reduced_cost(col))) {
        decisions.push_back({Decision::Kind::kExclude, col, 0.0});
      }
    }

    Node node{bound, next_id++, std::move(decisions), false, branch_n, 0.0};
    const auto counts = model.counts(x);
    double count_frac = kIntegralTol;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const double frac = std::abs(counts[i] - std::round(counts[i]));
      if (frac > count_frac) {
        count_frac = frac;
        node.branch_on_count = true;
        node.branch_target = i;
        node.branch_count = counts[i];
      }
    }
    open.push(std::move(node));
  };

  process(model.root(), {});

  bool exhausted = true;
  while (!open.empty()) {
    // Best-first: once the top node is dominated, so is everything left.
    if (prunable(open.top().bound)) break;
    if (elapsed() > opts.time_limit_s) {
      report.time_limit_hit = true;
      exhausted = false;
      break;
    }
    if (report.node_count >= opts.node_limit) {
      report.node_limit_hit = true;
      exhausted = false;
      break;
    }
    Node node = open.top();
    open.pop();

    std::vector<Decision> decisions;
    const auto lp = extend(model.root(), {}, node.decisions, decisions);
    if (!lp) continue;

    std::vector<Decision> children;
    if (node.branch_on_count) {
      children.push_back({Decision::Kind::kAtMost, node.branch_target,
                          std::floor(node.branch_count)});
      children.push_back({Decision::Kind::kAtLeast, node.branch_target,
                          std::ceil(node.branch_count)});
    } else {
      for (const std::size_t col : model.options(node.branch_target)) {
        children.push_back({Decision::Kind::kKeepOption, node.branch_target,
                            static_cast<double>(col)});
      }
    }
    for (const Decision& d : children) {
      ++report.node_count;
      std::vector<Decision> child_decisions;
      if (const auto child = extend(*lp, node.decisions, {d}, child_decisions)) {
        process(*child, std::move(child_decisions));
      }
    }
  }

  if (have_incumbent) {
    const bool proven = exhausted && opts.gap_tol == 0.0;
    report.status = proven ? SolveStatus::kOptimal : SolveStatus::kFeasible;
    report.proven_optimal = proven;
  } else {
    report.proven_optimal = exhausted;
  }
  report.seconds = elapsed();
  return report;
}

OracleResult exhaustive_oracle(const Instance& instance) {
  const auto num_sub = instance.num_subchannels();
  const auto num_users = static_cast<int>(instance.num_users());
  if (std::pow(static_cast<double>(num_users), static_cast<double>(num_sub)) >
      kOracleMaxAssignments) {
    throw std::length_error("exhaustive_oracle: K^N exceeds 1e7 assignments");
  }
  OracleResult result;
  Allocation alloc{std::vector<int>(num_sub, 0)};
  for (;;) {
    const Evaluation ev = evaluate(instance, alloc);
    if (ev.feasible && (!result.best || ev.objective > result.value)) {
      result.best = alloc;
      result.value = ev.objective;
    }
    std::size_t pos = num_sub;
    while (pos > 0) {
      --pos;
      if (++alloc.owner[pos] < num_users) break;
      alloc.owner[pos] = 0;
      if (pos == 0) return result;
    }
    if (num_sub == 0) return result;
  }
}

}  // namespace ofdma
