#include "mpmcs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "mpmcs/errors.hpp"

namespace mpmcs {

namespace {

// Straight-line evaluator over the topological order. Events read one bit of
// the occurrence mask; gates fold their children, which are guaranteed to be
// earlier in the program.
class MaskEvaluator {
 public:
  explicit MaskEvaluator(const FaultTree& tree) {
    const std::vector<std::size_t>& order = tree.topological_order();
    if (order.empty() || !tree.node(tree.top()).is_gate()) {
      throw InvalidInput("tree is not evaluable");
    }
    std::vector<int> slot_of(tree.nodes().size(), -1);
    const std::vector<NodeId>& events = tree.basic_event_ids();
    const std::size_t top_index = tree.index_of(tree.top());

    steps_.reserve(order.size());
    for (std::size_t index : order) {
      const Node& node = tree.nodes()[index];
      Step step;
      if (node.is_event()) {
        auto it = std::lower_bound(events.begin(), events.end(), node.id);
        step.bit = static_cast<int>(it - events.begin());
      } else {
        step.bit = -1;
        step.all = node.gate().op == GateOp::And;
        for (NodeId input : node.gate().inputs) {
          step.children.push_back(slot_of[tree.index_of(input)]);
        }
      }
      slot_of[index] = static_cast<int>(steps_.size());
      steps_.push_back(std::move(step));
      if (index == top_index) break;  // nothing past the top matters
    }
    root_ = static_cast<int>(steps_.size()) - 1;
    values_.resize(steps_.size());
  }

  bool fails(std::uint32_t occurring) {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const Step& step = steps_[i];
      if (step.bit >= 0) {
        values_[i] = (occurring >> step.bit) & 1u;
        continue;
      }
      bool value = step.all;
      for (int child : step.children) {
        bool v = values_[child];
        if (step.all) {
          value = value && v;
          if (!value) break;
        } else {
          value = value || v;
          if (value) break;
        }
      }
      values_[i] = value;
    }
    return values_[root_];
  }

 private:
  struct Step {
    int bit = -1;  // >= 0: event reading this mask bit
    bool all = false;
    std::vector<int> children;
  };
  std::vector<Step> steps_;
  std::vector<char> values_;
  int root_ = 0;
};

CutSet mask_to_cut(std::uint32_t mask, const std::vector<NodeId>& events) {
  CutSet out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (mask & (1u << i)) out.insert(events[i]);
  }
  return out;
}

}  // namespace

std::vector<CutSet> enumerate_mcs(const FaultTree& tree, int max_events) {
  if (max_events < 0 || max_events > 31) {
    throw InvalidInput("max_events must be within [0, 31]");
  }
  const std::vector<NodeId> events = tree.basic_event_ids();
  const int e = static_cast<int>(events.size());
  if (e > max_events) {
    throw CapacityError("tree has " + std::to_string(e) +
                        " events, enumeration limit is " +
                        std::to_string(max_events));
  }

  MaskEvaluator evaluator(tree);
  std::vector<std::uint32_t> found;

  for (int size = 1; size <= e; ++size) {
    std::size_t alive = 0;
    std::uint32_t mask = (1u << size) - 1u;
    const std::uint32_t end = e == 31 ? 0x80000000u : (1u << e);
    while (mask < end) {
      bool pruned = false;
      for (std::uint32_t mcs : found) {
        if ((mask & mcs) == mcs) {
          pruned = true;
          break;
        }
      }
      if (!pruned) {
        if (evaluator.fails(mask)) {
          found.push_back(mask);
        } else {
          ++alive;
        }
      }
      // Gosper's hack: next mask with the same popcount.
      std::uint32_t low = mask & -mask;
      std::uint32_t ripple = mask + low;
      mask = ripple | (((mask ^ ripple) >> 2) / low);
    }
    // No survivor can grow into a new minimal cut set.
    if (alive == 0) break;
  }

  std::vector<CutSet> out;
  out.reserve(found.size());
  for (std::uint32_t mask : found) out.push_back(mask_to_cut(mask, events));
  std::sort(out.begin(), out.end(), [](const CutSet& a, const CutSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return out;
}

BruteResult mpmcs_brute(const FaultTree& tree, double log_base,
                        int max_events) {
  if (!(log_base > 1.0)) throw InvalidInput("log base must exceed 1");
  const std::vector<CutSet> all = enumerate_mcs(tree, max_events);
  if (all.empty()) throw InvalidInput("tree has no cut set");

  BruteResult best;
  bool first = true;
  for (const CutSet& cs : all) {
    double probability = joint_probability(tree, cs);
    bool better =
        first || probability > best.probability ||
        (probability == best.probability &&
         std::lexicographical_compare(cs.begin(), cs.end(),
                                      best.cut_set.begin(),
                                      best.cut_set.end()));
    if (better) {
      best.cut_set = cs;
      best.probability = probability;
      first = false;
    }
  }
  best.log_cost = 0.0;
  for (NodeId id : best.cut_set) {
    best.log_cost +=
        -std::log(tree.node(id).event().probability) / std::log(log_base);
  }
  return best;
}

BruteIntResult mpmcs_brute_int(const FaultTree& tree,
                               const std::map<NodeId, std::int64_t>& weights,
                               int max_events) {
  const std::vector<CutSet> all = enumerate_mcs(tree, max_events);
  if (all.empty()) throw InvalidInput("tree has no cut set");

  BruteIntResult best;
  bool first = true;
  for (const CutSet& cs : all) {
    std::int64_t cost = 0;
    for (NodeId id : cs) {
      auto it = weights.find(id);
      if (it == weights.end()) {
        throw InvalidInput("missing weight for event " + std::to_string(id));
      }
      cost += it->second;
    }
    bool better =
        first || cost < best.cost ||
        (cost == best.cost &&
         std::lexicographical_compare(cs.begin(), cs.end(),
                                      best.cut_set.begin(),
                                      best.cut_set.end()));
    if (better) {
      best.cut_set = cs;
      best.cost = cost;
      first = false;
    }
  }
  return best;
}

}  // namespace mpmcs
