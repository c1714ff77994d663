#pragma once

#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include "mpmcs/fault_tree.hpp"

namespace mpmcs {

// Exhaustive enumeration is exponential in the event count; refuse trees
// above this many events unless the caller raises the limit explicitly.
inline constexpr int kDefaultOracleEventLimit = 20;

// Every minimal cut set of the tree, by ascending cardinality and then
// ascending event ids within one cardinality.
//
// Enumerates subsets level by level (all 1-sets, all 2-sets, ...) and prunes
// any subset containing an already found cut set; what survives pruning and
// fails the tree is a new minimal cut set, because all of its proper subsets
// were examined at earlier levels and none was a cut set. A level where every
// subset is pruned or is itself a cut set ends the search: any larger set
// contains such a subset, hence a smaller cut set, and cannot be minimal.
//
// Throws CapacityError when the tree has more than max_events events and
// InvalidInput for max_events outside [0, 31] or trees that cannot be
// evaluated (cycles, dangling inputs, non-gate top).
std::vector<CutSet> enumerate_mcs(const FaultTree& tree,
                                  int max_events = kDefaultOracleEventLimit);

struct BruteResult {
  CutSet cut_set;
  double probability = 0.0;
  double log_cost = 0.0;  // sum of -log_base(p) over the cut set
};

// The minimal cut set with the largest joint probability; exact ties resolve
// to the lexicographically smallest event id sequence.
BruteResult mpmcs_brute(const FaultTree& tree,
                        double log_base = std::numbers::e,
                        int max_events = kDefaultOracleEventLimit);

struct BruteIntResult {
  CutSet cut_set;
  std::int64_t cost = 0;
};

// The minimal cut set minimizing the integer weight sum, ties again to the
// lexicographically smallest id sequence. Uses the same objective as the
// WCNF encoding, so the result is directly comparable with a solver run.
// Throws InvalidInput when an event id is missing from `weights`.
BruteIntResult mpmcs_brute_int(const FaultTree& tree,
                               const std::map<NodeId, std::int64_t>& weights,
                               int max_events = kDefaultOracleEventLimit);

}  // namespace mpmcs
