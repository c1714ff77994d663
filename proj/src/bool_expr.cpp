#include "mpmcs/bool_expr.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "mpmcs/errors.hpp"

namespace mpmcs {

std::size_t BoolExpr::internal_count() const {
  std::size_t n = 0;
  for (const Vertex& v : vertices) {
    if (v.op != Op::Leaf) ++n;
  }
  return n;
}

BoolExpr to_expression(const FaultTree& tree) {
  if (!tree.has(tree.top()) || !tree.node(tree.top()).is_gate()) {
    throw InvalidInput("tree has no gate at the top");
  }
  if (tree.has_dangling_inputs() || !tree.is_acyclic()) {
    throw InvalidInput("tree is not a well-formed DAG");
  }

  const std::vector<NodeId>& events = tree.basic_event_ids();
  std::vector<std::int32_t> var_of(tree.size(), 0);
  for (std::size_t rank = 0; rank < events.size(); ++rank) {
    var_of[tree.index_of(events[rank])] = static_cast<std::int32_t>(rank + 1);
  }

  BoolExpr expr;
  std::vector<std::int32_t> built(tree.size(), -1);

  // Bottom-up over the dependency order; shared tree nodes map to shared
  // vertices, and single-input gates contribute no vertex of their own.
  for (std::size_t i : tree.topological_order()) {
    const Node& n = tree.nodes()[i];
    if (n.is_event()) {
      BoolExpr::Vertex leaf;
      leaf.op = BoolExpr::Op::Leaf;
      leaf.var = var_of[i];
      expr.vertices.push_back(std::move(leaf));
      built[i] = static_cast<std::int32_t>(expr.vertices.size() - 1);
      continue;
    }
    const auto& children = tree.children_of(i);
    if (children.empty()) {
      throw InvalidInput("gate " + std::to_string(n.id) + " has no inputs");
    }
    if (children.size() == 1) {
      built[i] = built[children[0]];
      continue;
    }
    BoolExpr::Vertex v;
    v.op = n.gate().op == GateOp::And ? BoolExpr::Op::And : BoolExpr::Op::Or;
    v.children.reserve(children.size());
    for (std::size_t c : children) v.children.push_back(built[c]);
    expr.vertices.push_back(std::move(v));
    built[i] = static_cast<std::int32_t>(expr.vertices.size() - 1);
  }

  expr.root = built[tree.index_of(tree.top())];

  // Drop vertices not reachable from the root (events outside the top's
  // cone never enter the expression).
  std::vector<bool> live(expr.vertices.size(), false);
  std::vector<std::int32_t> stack = {expr.root};
  live[expr.root] = true;
  while (!stack.empty()) {
    std::int32_t i = stack.back();
    stack.pop_back();
    for (std::int32_t c : expr.vertices[i].children) {
      if (!live[c]) {
        live[c] = true;
        stack.push_back(c);
      }
    }
  }
  BoolExpr compact;
  std::vector<std::int32_t> remap(expr.vertices.size(), -1);
  for (std::size_t i = 0; i < expr.vertices.size(); ++i) {
    if (!live[i]) continue;
    BoolExpr::Vertex v = expr.vertices[i];
    for (std::int32_t& c : v.children) c = remap[c];
    compact.vertices.push_back(std::move(v));
    remap[i] = static_cast<std::int32_t>(compact.vertices.size() - 1);
  }
  compact.root = remap[expr.root];
  return compact;
}

namespace {

void require_negation_free(const BoolExpr& expr) {
  for (const BoolExpr::Vertex& v : expr.vertices) {
    if (v.op == BoolExpr::Op::Leaf && v.negated) {
      throw InvalidInput("expression already carries negations");
    }
  }
}

}  // namespace

BoolExpr flip_gates(const BoolExpr& expr) {
  require_negation_free(expr);
  BoolExpr out = expr;
  for (BoolExpr::Vertex& v : out.vertices) {
    if (v.op == BoolExpr::Op::And) {
      v.op = BoolExpr::Op::Or;
    } else if (v.op == BoolExpr::Op::Or) {
      v.op = BoolExpr::Op::And;
    }
  }
  return out;
}

BoolExpr negate_to_nnf(const BoolExpr& expr) {
  require_negation_free(expr);
  BoolExpr out = flip_gates(expr);
  for (BoolExpr::Vertex& v : out.vertices) {
    if (v.op == BoolExpr::Op::Leaf) v.negated = true;
  }
  return out;
}

bool eval(const BoolExpr& expr, const std::vector<bool>& assignment) {
  std::vector<char> value(expr.vertices.size(), 0);
  for (std::size_t i = 0; i < expr.vertices.size(); ++i) {
    const BoolExpr::Vertex& v = expr.vertices[i];
    if (v.op == BoolExpr::Op::Leaf) {
      if (v.var <= 0 || static_cast<std::size_t>(v.var) >= assignment.size()) {
        throw InvalidInput("assignment does not cover variable " +
                           std::to_string(v.var));
      }
      bool b = assignment[v.var];
      value[i] = (v.negated ? !b : b) ? 1 : 0;
      continue;
    }
    bool conj = v.op == BoolExpr::Op::And;
    bool b = conj;
    for (std::int32_t c : v.children) {
      if (conj) {
        b = b && value[c] != 0;
      } else {
        b = b || value[c] != 0;
      }
    }
    value[i] = b ? 1 : 0;
  }
  return value[expr.root] != 0;
}

namespace {

bool equal_rec(const BoolExpr& a, std::int32_t ia, const BoolExpr& b,
               std::int32_t ib,
               std::map<std::pair<std::int32_t, std::int32_t>, bool>& memo) {
  auto key = std::make_pair(ia, ib);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  const BoolExpr::Vertex& va = a.at(ia);
  const BoolExpr::Vertex& vb = b.at(ib);
  bool eq = va.op == vb.op;
  if (eq && va.op == BoolExpr::Op::Leaf) {
    eq = va.var == vb.var && va.negated == vb.negated;
  } else if (eq) {
    eq = va.children.size() == vb.children.size();
    for (std::size_t i = 0; eq && i < va.children.size(); ++i) {
      eq = equal_rec(a, va.children[i], b, vb.children[i], memo);
    }
  }
  memo[key] = eq;
  return eq;
}

void print_rec(const BoolExpr& expr, std::int32_t index, std::ostream& out) {
  const BoolExpr::Vertex& v = expr.at(index);
  if (v.op == BoolExpr::Op::Leaf) {
    if (v.negated) out << '~';
    out << 'x' << v.var;
    return;
  }
  const char* sep = v.op == BoolExpr::Op::And ? " & " : " | ";
  out << '(';
  for (std::size_t i = 0; i < v.children.size(); ++i) {
    if (i > 0) out << sep;
    print_rec(expr, v.children[i], out);
  }
  out << ')';
}

}  // namespace

bool structurally_equal(const BoolExpr& a, const BoolExpr& b) {
  if (a.root < 0 || b.root < 0) return a.root == b.root;
  std::map<std::pair<std::int32_t, std::int32_t>, bool> memo;
  return equal_rec(a, a.root, b, b.root, memo);
}

std::string to_string(const BoolExpr& expr) {
  if (expr.root < 0) return "<empty>";
  std::ostringstream out;
  print_rec(expr, expr.root, out);
  return out.str();
}

}  // namespace mpmcs
