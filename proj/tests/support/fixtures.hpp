#pragma once

#include <utility>
#include <vector>

#include "mpmcs/fault_tree.hpp"

namespace fixtures {

// Seven-event fire-protection-system style tree used across the tests:
//
//   top 14 = OR(10, 13)
//   10 = AND(1, 2)       11 = OR(6, 7)
//   12 = AND(5, 11)      13 = OR(3, 4, 12)
//
// Minimal cut sets: {1,2}, {3}, {4}, {5,6}, {5,7}. With the default
// probabilities below, {1,2} is the most probable one (0.9 * 0.8 = 0.72).
inline mpmcs::FaultTree fps_tree(double p1 = 0.9, double p2 = 0.8,
                                 double rest = 0.1) {
  using mpmcs::BasicEvent;
  using mpmcs::Gate;
  using mpmcs::GateOp;
  using mpmcs::Node;

  std::vector<Node> nodes;
  nodes.push_back(Node{1, BasicEvent{p1}});
  nodes.push_back(Node{2, BasicEvent{p2}});
  for (mpmcs::NodeId id = 3; id <= 7; ++id) {
    nodes.push_back(Node{id, BasicEvent{rest}});
  }
  nodes.push_back(Node{10, Gate{GateOp::And, {1, 2}}});
  nodes.push_back(Node{11, Gate{GateOp::Or, {6, 7}}});
  nodes.push_back(Node{12, Gate{GateOp::And, {5, 11}}});
  nodes.push_back(Node{13, Gate{GateOp::Or, {3, 4, 12}}});
  nodes.push_back(Node{14, Gate{GateOp::Or, {10, 13}}});
  return mpmcs::FaultTree(std::move(nodes), 14);
}

// Two-event series system: top = AND(1, 2). The only cut set is {1, 2}.
inline mpmcs::FaultTree and_pair(double p1 = 0.5, double p2 = 0.5) {
  using mpmcs::BasicEvent;
  using mpmcs::Gate;
  using mpmcs::GateOp;
  using mpmcs::Node;

  std::vector<Node> nodes;
  nodes.push_back(Node{1, BasicEvent{p1}});
  nodes.push_back(Node{2, BasicEvent{p2}});
  nodes.push_back(Node{3, Gate{GateOp::And, {1, 2}}});
  return mpmcs::FaultTree(std::move(nodes), 3);
}

}  // namespace fixtures
