#include "mpmcs/tree_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mpmcs/errors.hpp"

namespace mpmcs {

namespace {

using nlohmann::json;

json node_to_json(const Node& n) {
  json j;
  j["id"] = n.id;
  if (n.is_event()) {
    j["kind"] = "event";
    j["p"] = n.event().probability;
  } else {
    j["kind"] = n.gate().op == GateOp::And ? "and" : "or";
    j["inputs"] = n.gate().inputs;
  }
  return j;
}

}  // namespace

std::string tree_to_json(const FaultTree& tree) {
  json doc;
  doc["version"] = 1;
  doc["top"] = tree.top();
  json nodes = json::array();
  for (const Node& n : tree.nodes()) nodes.push_back(node_to_json(n));
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

void save_tree(const FaultTree& tree, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");
  out << tree_to_json(tree);
}

LoadedTree tree_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("tree JSON: ") + e.what());
  }

  if (!doc.is_object()) throw ParseError("tree JSON: document is not an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer() ||
      doc["version"].get<std::int64_t>() != 1) {
    throw ParseError("tree JSON: missing or unsupported version (expected 1)");
  }
  if (!doc.contains("top") || !doc["top"].is_number_unsigned()) {
    throw ParseError("tree JSON: missing non-negative integer field 'top'");
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ParseError("tree JSON: missing array field 'nodes'");
  }

  std::vector<Node> nodes;
  std::vector<std::string> warnings;
  for (const json& j : doc["nodes"]) {
    if (!j.is_object()) throw ParseError("tree JSON: node entry is not an object");
    if (!j.contains("id") || !j["id"].is_number_unsigned()) {
      throw ParseError("tree JSON: node without non-negative integer 'id'");
    }
    std::uint64_t wide = j["id"].get<std::uint64_t>();
    if (wide > 0xffffffffull) {
      throw ParseError("tree JSON: node id " + std::to_string(wide) +
                       " out of range");
    }
    Node n;
    n.id = static_cast<NodeId>(wide);
    if (!j.contains("kind") || !j["kind"].is_string()) {
      throw ParseError("tree JSON: node " + std::to_string(n.id) +
                       " has no string 'kind'");
    }
    std::string kind = j["kind"].get<std::string>();
    if (kind == "event") {
      if (!j.contains("p") || !j["p"].is_number()) {
        throw ParseError("tree JSON: event " + std::to_string(n.id) +
                         " has no numeric 'p'");
      }
      double p = j["p"].get<double>();
      double clamped = p;
      if (!(clamped > kProbabilityFloor)) clamped = kProbabilityFloor;
      if (!(clamped < kProbabilityCeil)) clamped = kProbabilityCeil;
      if (clamped != p) {
        std::ostringstream w;
        w << "event " << n.id << ": probability " << p << " clamped to "
          << clamped;
        warnings.push_back(w.str());
      }
      n.kind = BasicEvent{clamped};
    } else if (kind == "and" || kind == "or") {
      Gate g;
      g.op = kind == "and" ? GateOp::And : GateOp::Or;
      if (!j.contains("inputs") || !j["inputs"].is_array()) {
        throw ParseError("tree JSON: gate " + std::to_string(n.id) +
                         " has no array 'inputs'");
      }
      for (const json& in : j["inputs"]) {
        if (!in.is_number_unsigned()) {
          throw ParseError("tree JSON: gate " + std::to_string(n.id) +
                           " has a non-integer input");
        }
        std::uint64_t iv = in.get<std::uint64_t>();
        if (iv > 0xffffffffull) {
          throw ParseError("tree JSON: gate " + std::to_string(n.id) +
                           " input out of range");
        }
        g.inputs.push_back(static_cast<NodeId>(iv));
      }
      n.kind = std::move(g);
    } else {
      throw ParseError("tree JSON: node " + std::to_string(n.id) +
                       " has unknown kind '" + kind + "'");
    }
    nodes.push_back(std::move(n));
  }

  try {
    FaultTree tree(std::move(nodes), static_cast<NodeId>(doc["top"].get<std::uint64_t>()));
    return LoadedTree{std::move(tree), std::move(warnings)};
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("tree JSON: ") + e.what());
  }
}

LoadedTree load_tree(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return tree_from_json(buf.str());
}

std::string tree_to_dot(const FaultTree& tree) {
  std::ostringstream out;
  out << "digraph fault_tree {\n  rankdir=TB;\n";
  for (const Node& n : tree.nodes()) {
    if (n.is_event()) {
      out << "  n" << n.id << " [shape=circle,label=\"e" << n.id << "\\np="
          << n.event().probability << "\"];\n";
    } else {
      const char* label = n.gate().op == GateOp::And ? "AND" : "OR";
      const char* shape = n.gate().op == GateOp::And ? "box" : "house";
      out << "  n" << n.id << " [shape=" << shape << ",label=\"" << label
          << "\\n" << n.id << "\"];\n";
    }
  }
  for (const Node& n : tree.nodes()) {
    if (!n.is_gate()) continue;
    for (NodeId in : n.gate().inputs) {
      out << "  n" << n.id << " -> n" << in << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace mpmcs
