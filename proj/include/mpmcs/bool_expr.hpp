#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpmcs/fault_tree.hpp"

namespace mpmcs {

// AND/OR expression DAG over numbered event variables. Vertices live in an
// arena where children always precede their parents, so bottom-up passes are
// plain forward loops. Negation appears only on leaves.
struct BoolExpr {
  enum class Op : std::uint8_t { And, Or, Leaf };

  struct Vertex {
    Op op = Op::Leaf;
    std::vector<std::int32_t> children;  // arena indices, internal vertices only
    std::int32_t var = 0;                // 1-based event variable, leaves only
    bool negated = false;                // leaves only
  };

  std::vector<Vertex> vertices;
  std::int32_t root = -1;

  const Vertex& at(std::int32_t index) const { return vertices[index]; }
  bool root_is_leaf() const { return vertices[root].op == Op::Leaf; }
  std::size_t internal_count() const;
};

// Expression of the top event in terms of event variables 1..E, numbered by
// ascending basic-event id. Shared subtrees become shared vertices, and
// single-input gates collapse to their input.
BoolExpr to_expression(const FaultTree& tree);

// Swaps every AND for an OR and vice versa, leaves untouched.
// The input must be negation-free.
BoolExpr flip_gates(const BoolExpr& expr);

// Negation-normal form of the complement: gate kinds swap and every leaf is
// negated. The input must be negation-free.
BoolExpr negate_to_nnf(const BoolExpr& expr);

// Truth value under the assignment; `assignment[v]` holds variable v's value
// (index 0 unused).
bool eval(const BoolExpr& expr, const std::vector<bool>& assignment);

// Structural equality modulo vertex numbering: equal ops, equal leaf
// literals, children pairwise equal in order.
bool structurally_equal(const BoolExpr& a, const BoolExpr& b);

// Rendering such as "(x1 & x2) | ~x3", for diagnostics.
std::string to_string(const BoolExpr& expr);

}  // namespace mpmcs
