#pragma once

#include <cstdint>
#include <string>

#include "mpmcs/fault_tree.hpp"

namespace mpmcs {

// Shape parameters for random tree generation. `n` counts the nodes below
// the root: a fraction r_at of basic events ("atoms") and a fraction
// r_and + r_or of AND/OR gates. The ratios must sum to 1. Every gate draws
// `k` inputs; atoms attach to between 1 and `k` gates.
struct GenConfig {
  std::int64_t n = 0;
  double r_at = 0.8;
  double r_and = 0.1;
  double r_or = 0.1;
  int k = 3;
  std::uint64_t seed = 1;
  double prob_lo = kProbabilityFloor;
  double prob_hi = kProbabilityCeil;
};

// Throws InvalidInput when ratios do not sum to 1, k < 1, the probability
// band is not inside (0,1), or n is too small to give at least one gate and
// k atoms (the last gate fills all of its inputs from atoms).
void validate_config(const GenConfig& config);

// Deterministic pseudo-random AND/OR DAG:
//   - node counts: s = round(n * r_at) atoms, m = n - s gates, AND/OR split
//     by round(m * r_and / (r_and + r_or));
//   - the root is a single-input OR gate with id 0, fed by the first gate;
//     it is not counted in n;
//   - gate i draws k distinct inputs among later gates, topping up from the
//     atoms once fewer than k gates remain;
//   - a gate nobody consumes is wired as an extra input of a random earlier
//     gate, which keeps every node reachable from the root;
//   - each atom feeds k' ~ uniform[1,k] additional distinct gates.
// The draw sequence is part of the seed contract: equal configs produce
// byte-identical trees.
FaultTree generate(const GenConfig& config);

struct CompositionStats {
  std::int64_t nodes = 0;
  std::int64_t edges = 0;  // sum of gate fan-ins
  std::int64_t at = 0;
  std::int64_t and_gates = 0;
  std::int64_t or_gates = 0;  // for generated trees this includes the root
};

CompositionStats composition(const FaultTree& tree);

// Config JSON: {"n":..,"r_at":..,"r_and":..,"r_or":..,"k":..,"seed":..}
GenConfig config_from_json(const std::string& text);
std::string config_to_json(const GenConfig& config);

}  // namespace mpmcs
