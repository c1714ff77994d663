#include "mpmcs/fault_tree.hpp"

#include <algorithm>
#include <sstream>

#include "mpmcs/errors.hpp"

namespace mpmcs {

namespace {

constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

}  // namespace

FaultTree::FaultTree(std::vector<Node> nodes, NodeId top)
    : nodes_(std::move(nodes)), top_(top) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i].id == nodes_[i - 1].id) {
      throw InvalidInput("duplicate node id " + std::to_string(nodes_[i].id));
    }
  }

  children_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.is_event()) {
      event_ids_.push_back(n.id);
      continue;
    }
    children_[i].reserve(n.gate().inputs.size());
    for (NodeId in : n.gate().inputs) {
      if (has(in)) {
        children_[i].push_back(index_of(in));
      } else {
        children_[i].push_back(kNoIndex);
        dangling_ = true;
      }
    }
  }

  // Kahn's algorithm over gate -> input edges; a complete order certifies
  // acyclicity and gives evaluate() its bottom-up sweep.
  std::vector<std::size_t> pending(nodes_.size(), 0);  // unresolved inputs
  std::vector<std::vector<std::size_t>> users(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t c : children_[i]) {
      if (c == kNoIndex) continue;
      ++pending[i];
      users[c].push_back(i);
    }
  }
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (pending[i] == 0) queue.push_back(i);
  }
  while (!queue.empty()) {
    std::size_t i = queue.back();
    queue.pop_back();
    topo_.push_back(i);
    for (std::size_t u : users[i]) {
      if (--pending[u] == 0) queue.push_back(u);
    }
  }
  acyclic_ = topo_.size() == nodes_.size();
  if (!acyclic_ || dangling_) topo_.clear();
}

bool FaultTree::has(NodeId id) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), id,
      [](const Node& n, NodeId v) { return n.id < v; });
  return it != nodes_.end() && it->id == id;
}

std::size_t FaultTree::index_of(NodeId id) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), id,
      [](const Node& n, NodeId v) { return n.id < v; });
  if (it == nodes_.end() || it->id != id) {
    throw InvalidInput("unknown node id " + std::to_string(id));
  }
  return static_cast<std::size_t>(it - nodes_.begin());
}

const Node& FaultTree::node(NodeId id) const { return nodes_[index_of(id)]; }

const std::vector<std::size_t>& FaultTree::children_of(std::size_t index) const {
  return children_[index];
}

bool ValidationReport::valid() const {
  for (const Violation& v : violations) {
    if (v.severity == Severity::Error) return false;
  }
  return true;
}

bool ValidationReport::has(ViolationKind kind) const {
  for (const Violation& v : violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << (v.severity == Severity::Error ? "error" : "warning") << ": node "
        << v.node << ": " << v.message << '\n';
  }
  return out.str();
}

ValidationReport validate(const FaultTree& tree) {
  ValidationReport report;
  auto add = [&report](Severity sev, ViolationKind kind, NodeId node,
                       std::string message) {
    report.violations.push_back({sev, kind, node, std::move(message)});
  };

  if (!tree.has(tree.top())) {
    add(Severity::Error, ViolationKind::TopMissing, tree.top(),
        "top node does not exist");
  } else if (!tree.node(tree.top()).is_gate()) {
    add(Severity::Error, ViolationKind::TopNotGate, tree.top(),
        "top node is not a gate");
  }

  for (const Node& n : tree.nodes()) {
    if (n.is_event()) {
      double p = n.event().probability;
      if (!(p > 0.0) || !(p < 1.0)) {
        add(Severity::Error, ViolationKind::ProbabilityOutOfRange, n.id,
            "probability must lie strictly between 0 and 1");
      }
      continue;
    }
    const Gate& g = n.gate();
    if (g.inputs.empty()) {
      add(Severity::Error, ViolationKind::EmptyGateInputs, n.id,
          "gate has no inputs");
    }
    std::vector<NodeId> sorted = g.inputs;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] == sorted[i - 1]) {
        add(Severity::Error, ViolationKind::DuplicateInput, n.id,
            "duplicate input " + std::to_string(sorted[i]));
        break;
      }
    }
    for (NodeId in : g.inputs) {
      if (!tree.has(in)) {
        add(Severity::Error, ViolationKind::UnknownInput, n.id,
            "input " + std::to_string(in) + " does not exist");
      }
    }
  }

  if (!tree.is_acyclic()) {
    // Pin the report on one node that sits on a cycle: rerun the peeling and
    // name the smallest leftover id.
    std::vector<std::size_t> pending(tree.size(), 0);
    std::vector<std::vector<std::size_t>> users(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) {
      for (std::size_t c : tree.children_of(i)) {
        if (c == static_cast<std::size_t>(-1)) continue;
        ++pending[i];
        users[c].push_back(i);
      }
    }
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < tree.size(); ++i) {
      if (pending[i] == 0) queue.push_back(i);
    }
    std::size_t done = 0;
    while (!queue.empty()) {
      std::size_t i = queue.back();
      queue.pop_back();
      ++done;
      for (std::size_t u : users[i]) {
        if (--pending[u] == 0) queue.push_back(u);
      }
    }
    for (std::size_t i = 0; i < tree.size(); ++i) {
      if (pending[i] > 0) {
        add(Severity::Error, ViolationKind::CycleDetected, tree.nodes()[i].id,
            "node lies on a cycle");
        break;
      }
    }
    (void)done;
  }

  // Reachability from the top, over edges that resolve. Unreachable nodes do
  // not affect analysis results, so they only warrant a warning.
  if (tree.has(tree.top())) {
    std::vector<bool> seen(tree.size(), false);
    std::vector<std::size_t> stack = {tree.index_of(tree.top())};
    seen[stack[0]] = true;
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t c : tree.children_of(i)) {
        if (c == static_cast<std::size_t>(-1) || seen[c]) continue;
        seen[c] = true;
        stack.push_back(c);
      }
    }
    for (std::size_t i = 0; i < tree.size(); ++i) {
      if (!seen[i]) {
        add(Severity::Warning, ViolationKind::Unreachable, tree.nodes()[i].id,
            "node is not reachable from the top");
      }
    }
  }

  return report;
}

namespace {

void require_evaluable(const FaultTree& tree) {
  if (!tree.has(tree.top()) || !tree.node(tree.top()).is_gate()) {
    throw InvalidInput("tree has no gate at the top");
  }
  if (tree.has_dangling_inputs()) {
    throw InvalidInput("tree has unresolved gate inputs");
  }
  if (!tree.is_acyclic()) {
    throw InvalidInput("tree contains a cycle");
  }
}

}  // namespace

bool evaluate(const FaultTree& tree, const CutSet& occurring) {
  require_evaluable(tree);
  for (NodeId id : occurring) {
    if (!tree.has(id) || !tree.node(id).is_event()) {
      throw InvalidInput("occurring set names non-event node " +
                         std::to_string(id));
    }
  }

  std::vector<char> value(tree.size(), 0);
  for (std::size_t i : tree.topological_order()) {
    const Node& n = tree.nodes()[i];
    if (n.is_event()) {
      value[i] = occurring.count(n.id) ? 1 : 0;
      continue;
    }
    bool conj = n.gate().op == GateOp::And;
    bool v = conj;
    for (std::size_t c : tree.children_of(i)) {
      if (conj) {
        v = v && value[c];
      } else {
        v = v || value[c];
      }
    }
    value[i] = v ? 1 : 0;
  }
  return value[tree.index_of(tree.top())] != 0;
}

bool is_cut_set(const FaultTree& tree, const CutSet& events) {
  return evaluate(tree, events);
}

bool is_minimal_cut_set(const FaultTree& tree, const CutSet& events) {
  if (!is_cut_set(tree, events)) return false;
  for (NodeId id : events) {
    CutSet reduced = events;
    reduced.erase(id);
    if (is_cut_set(tree, reduced)) return false;
  }
  return true;
}

double joint_probability(const FaultTree& tree, const CutSet& events) {
  if (events.empty()) {
    throw InvalidInput("joint probability of an empty set is undefined");
  }
  double product = 1.0;
  for (NodeId id : events) {
    if (!tree.has(id) || !tree.node(id).is_event()) {
      throw InvalidInput("set names non-event node " + std::to_string(id));
    }
    product *= tree.node(id).event().probability;
  }
  return product;
}

}  // namespace mpmcs
