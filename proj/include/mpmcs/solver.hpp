#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mpmcs/encoder.hpp"
#include "mpmcs/fault_tree.hpp"

namespace mpmcs {

struct SolveBudget {
  std::chrono::milliseconds wall_time{60'000};
  // Prune solutions costing more than this; leaves Optimal semantics intact
  // for solutions within the bound, otherwise the search ends Unknown.
  std::optional<std::int64_t> cost_bound;
};

enum class SolveStatus : std::uint8_t { Optimal, Feasible, Infeasible, Unknown };

const char* to_string(SolveStatus status);
SolveStatus status_from_string(const std::string& text);

struct MaxSatOutcome {
  SolveStatus status = SolveStatus::Unknown;
  // Total assignment indexed by variable (index 0 unused); present for
  // Optimal and Feasible.
  std::optional<std::vector<bool>> model;
  // Sum of falsified soft weights under `model`, recomputed from the
  // instance, never trusted from search bookkeeping.
  std::optional<std::int64_t> cost;
  std::string strategy_id;
  std::chrono::milliseconds elapsed{0};
  // Costs of successive incumbents, non-increasing within one run.
  std::vector<std::int64_t> incumbent_costs;
};

// A single exact or heuristic solving procedure. run() must honor the wall
// clock budget, poll `stop` regularly, and return Unknown promptly once it
// flips.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string id() const = 0;
  virtual MaxSatOutcome run(const WcnfInstance& instance,
                            const SolveBudget& budget,
                            const std::atomic<bool>& stop) = 0;
};

// Exact branch-and-bound over the soft (event) variables with unit
// propagation on hard clauses. Auxiliary variables are never decided for
// encoder-shaped instances: the two-sided Tseitin clauses propagate them.
// Ties between optimal solutions resolve to the lexicographically smallest
// falsified-variable set.
//   "bnb-lex":    ascending variable order, cheaper polarity first
//   "bnb-weight": descending weight order, costlier polarity first
std::unique_ptr<Strategy> make_strategy(const std::string& name);
std::vector<std::unique_ptr<Strategy>> default_strategies();
std::vector<std::string> default_strategy_names();

// Runs one strategy to completion or budget exhaustion, then independently
// rechecks any returned model against the instance.
MaxSatOutcome solve(const WcnfInstance& instance, Strategy& strategy,
                    const SolveBudget& budget);

// Races the strategies on threads. The first to finish conclusively
// (Optimal or Infeasible) wins and the rest are cancelled; if none
// concludes within the budget, the cheapest Feasible result wins with ties
// broken by earliest completion.
MaxSatOutcome portfolio(const WcnfInstance& instance,
                        const std::vector<std::unique_ptr<Strategy>>& strategies,
                        const SolveBudget& budget);

struct MpmcsResult {
  CutSet cut_set;
  int size = 0;
  std::int64_t int_log_cost = 0;
  double log_cost = 0.0;
  double probability = 0.0;
};

// Maps a satisfying assignment back to probability space: falsified event
// variables form the cut set, cost / 10^shift is the -log probability, and
// the probability is the product over the cut set. Optimal outcomes are
// verified to decode to a minimal cut set; a failure there is an internal
// error, not bad input.
MpmcsResult decode(const MaxSatOutcome& outcome, const VarMap& varmap,
                   const FaultTree& tree);

// Solution JSON:
//   {"status":..,"cost":..,"size":..,"intLogCost":..,"logCost":..,
//    "probability":..,"events":[..],"strategy":..,"time_ms":..,
//    "shift":..,"logBase":..}
// Non-model statuses carry null for the solution-dependent fields.
std::string solution_to_json(const MaxSatOutcome& outcome,
                             const MpmcsResult* result, const VarMap& varmap);

struct LoadedSolution {
  SolveStatus status = SolveStatus::Unknown;
  std::optional<std::int64_t> cost;
  std::optional<CutSet> events;
  std::optional<double> probability;
  std::optional<double> log_cost;
  std::optional<int> shift;
  std::optional<double> log_base;
  std::string strategy;
};

LoadedSolution solution_from_json(const std::string& text);

}  // namespace mpmcs
