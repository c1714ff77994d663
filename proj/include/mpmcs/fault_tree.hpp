#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace mpmcs {

using NodeId = std::uint32_t;

// Probabilities are kept strictly inside (0,1); ingestion clamps to this
// closed band instead of rejecting boundary values.
inline constexpr double kProbabilityFloor = 1e-9;
inline constexpr double kProbabilityCeil = 1.0 - 1e-9;

enum class GateOp : std::uint8_t { And, Or };

struct BasicEvent {
  double probability = 0.0;
};

struct Gate {
  GateOp op = GateOp::And;
  std::vector<NodeId> inputs;
};

struct Node {
  NodeId id = 0;
  std::variant<BasicEvent, Gate> kind;

  bool is_event() const { return std::holds_alternative<BasicEvent>(kind); }
  bool is_gate() const { return std::holds_alternative<Gate>(kind); }
  const BasicEvent& event() const { return std::get<BasicEvent>(kind); }
  const Gate& gate() const { return std::get<Gate>(kind); }
};

// A set of basic-event ids. Used both for "these events occur" queries and
// for cut sets.
using CutSet = std::set<NodeId>;

// Immutable AND/OR fault tree over basic events. Nodes form a DAG rooted at
// the top node; shared subtrees are allowed. The structure itself tolerates
// inconsistent states (dangling inputs, cycles, bad probabilities) so that
// validate() can report them; only duplicate ids are rejected outright.
class FaultTree {
 public:
  FaultTree(std::vector<Node> nodes, NodeId top);

  NodeId top() const { return top_; }
  const std::vector<Node>& nodes() const { return nodes_; }  // ascending id
  std::size_t size() const { return nodes_.size(); }

  bool has(NodeId id) const;
  const Node& node(NodeId id) const;  // InvalidInput if unknown

  // Ascending ids of all basic events. This ordering is the canonical
  // event-variable numbering used by the encoder (event i -> variable i+1).
  const std::vector<NodeId>& basic_event_ids() const { return event_ids_; }

  // Internal dense indexing, exposed for traversal-heavy helpers.
  std::size_t index_of(NodeId id) const;                 // InvalidInput if unknown
  const std::vector<std::size_t>& children_of(std::size_t index) const;
  // Dense indices in dependency order (inputs before the gates that use
  // them). Empty when the tree is cyclic or has dangling inputs.
  const std::vector<std::size_t>& topological_order() const { return topo_; }
  bool is_acyclic() const { return acyclic_; }
  bool has_dangling_inputs() const { return dangling_; }

 private:
  std::vector<Node> nodes_;                       // sorted by id
  std::vector<std::vector<std::size_t>> children_;  // dense child indices per node
  std::vector<std::size_t> topo_;
  std::vector<NodeId> event_ids_;
  NodeId top_ = 0;
  bool acyclic_ = false;
  bool dangling_ = false;
};

enum class Severity : std::uint8_t { Error, Warning };

enum class ViolationKind : std::uint8_t {
  TopMissing,
  TopNotGate,
  EmptyGateInputs,
  DuplicateInput,
  UnknownInput,
  ProbabilityOutOfRange,
  CycleDetected,
  Unreachable,
};

struct Violation {
  Severity severity = Severity::Error;
  ViolationKind kind = ViolationKind::TopMissing;
  NodeId node = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  // True when no error-severity violation is present; warnings (such as
  // unreachable nodes) do not make a tree invalid.
  bool valid() const;
  bool has(ViolationKind kind) const;
  std::string to_string() const;
};

ValidationReport validate(const FaultTree& tree);

// Truth value of the top event when exactly the given basic events occur.
// Requires an acyclic tree whose gate inputs all resolve; members of
// `occurring` must name basic events of this tree.
bool evaluate(const FaultTree& tree, const CutSet& occurring);

bool is_cut_set(const FaultTree& tree, const CutSet& events);

// A cut set is minimal iff dropping any single event stops it from being a
// cut set. Single-element removal suffices: the tree is monotone (AND/OR
// gates over positive events), so if some proper subset were still a cut
// set, growing it back one element at a time would keep it a cut set, and in
// particular the specific (|S|-1)-subset on that chain would be one.
bool is_minimal_cut_set(const FaultTree& tree, const CutSet& events);

// Product of the member events' probabilities under independence.
// The set must be nonempty and name basic events of this tree.
double joint_probability(const FaultTree& tree, const CutSet& events);

}  // namespace mpmcs
