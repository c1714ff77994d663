#pragma once

#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpmcs/bool_expr.hpp"
#include "mpmcs/fault_tree.hpp"

namespace mpmcs {

// Hard-clause weight. Fits in a signed 32-bit literal weight budget while
// leaving room for soft-weight sums below it in 64 bits.
inline constexpr std::int64_t kTopWeight = 2'000'000'000;

using Clause = std::vector<int>;  // DIMACS literals, no terminating 0

struct SoftClause {
  std::int64_t weight = 0;
  Clause literals;

  bool operator==(const SoftClause&) const = default;
};

struct WcnfInstance {
  int num_vars = 0;
  std::int64_t top = kTopWeight;
  std::vector<Clause> hard;
  std::vector<SoftClause> soft;

  int num_clauses() const {
    return static_cast<int>(hard.size() + soft.size());
  }
  // True when every soft clause is a single positive literal, the shape
  // produced by encode().
  bool mpmcs_shaped() const;

  bool operator==(const WcnfInstance&) const = default;
};

// Mapping between tree nodes and solver variables. Event variables are
// 1..E in ascending NodeId order; Tseitin auxiliaries occupy the contiguous
// block [aux_from, aux_to] above them (empty when the encoding degenerated
// to a single literal).
struct VarMap {
  std::map<NodeId, int> event_to_var;
  int aux_from = 1;
  int aux_to = 0;
  int shift = 0;
  double log_base = std::numbers::e;

  int num_event_vars() const { return static_cast<int>(event_to_var.size()); }
  int num_vars() const { return std::max(num_event_vars(), aux_to); }
  int var_for(NodeId id) const;     // InvalidInput if unmapped
  NodeId node_for(int var) const;   // InvalidInput if not an event variable

  static VarMap for_tree(const FaultTree& tree);
};

// Sidecar JSON:
//   {"events":{"<nodeId>":<var>,...},"aux_from":..,"aux_to":..,
//    "shift":..,"log_base":"e"|"10"}
std::string varmap_to_json(const VarMap& map);
VarMap varmap_from_json(const std::string& text);

struct TseitinResult {
  std::vector<Clause> hard;
  int num_vars = 0;
  int aux_from = 1;
  int aux_to = 0;
};

// CNF equisatisfiable with the NNF expression, one auxiliary per internal
// vertex constrained in both directions, so auxiliaries are functions of the
// event variables. The root auxiliary is asserted as a final unit clause; a
// bare-literal expression contributes just that unit and no auxiliaries.
// Clause order follows the arena (children before parents).
TseitinResult tseitin(const BoolExpr& nnf, int num_event_vars);

// Smallest s >= 0 such that min(values) * 10^s >= 1. Values must be positive.
int compute_shift(std::span<const double> values);

struct WeightResult {
  std::map<NodeId, std::int64_t> weights;
  int shift = 0;
  bool capped = false;  // shift was lowered to keep the weight sum below top
};

// Integer soft weights w = max(1, round(-log_base(p) * 10^s)). When `shift`
// is empty, s comes from compute_shift over the -log values; either way s is
// lowered until the weight sum stays below kTopWeight (CapacityError when
// even s = 0 overflows).
WeightResult build_weights(const FaultTree& tree,
                           double log_base = std::numbers::e,
                           std::optional<int> shift = std::nullopt);

// Exposed for capacity testing: same weight rule over a bare value list of
// -log probabilities.
WeightResult weights_for_neglogs(std::span<const double> neglogs,
                                 std::optional<int> shift);

struct EncodeResult {
  WcnfInstance instance;
  VarMap varmap;
  std::map<NodeId, std::int64_t> weights;
  std::vector<std::string> warnings;
};

// Full encoding pipeline: expression of the tree, gates flipped and negated
// into NNF, Tseitin CNF as hard clauses, one positive unit soft clause per
// event variable in ascending variable order.
EncodeResult encode(const FaultTree& tree, double log_base = std::numbers::e,
                    std::optional<int> shift = std::nullopt);

}  // namespace mpmcs
