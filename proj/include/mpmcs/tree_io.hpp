#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mpmcs/fault_tree.hpp"

namespace mpmcs {

struct LoadedTree {
  FaultTree tree;
  // One entry per leaf whose probability was clamped into
  // [kProbabilityFloor, kProbabilityCeil] during ingestion.
  std::vector<std::string> warnings;
};

// Versioned JSON document:
//   {"version":1,"top":<id>,
//    "nodes":[{"id":..,"kind":"event","p":..},
//             {"id":..,"kind":"and"|"or","inputs":[..]}]}
// Serialization is deterministic: nodes ascend by id and numbers use the
// shortest round-tripping form, so equal trees produce equal bytes.
std::string tree_to_json(const FaultTree& tree);
void save_tree(const FaultTree& tree, const std::filesystem::path& path);

LoadedTree tree_from_json(const std::string& text);  // ParseError on bad input
LoadedTree load_tree(const std::filesystem::path& path);

// Graphviz rendering for visual inspection; not a stable format.
std::string tree_to_dot(const FaultTree& tree);

}  // namespace mpmcs
