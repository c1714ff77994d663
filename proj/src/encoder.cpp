#include "mpmcs/encoder.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mpmcs/errors.hpp"

namespace mpmcs {

bool WcnfInstance::mpmcs_shaped() const {
  for (const SoftClause& s : soft) {
    if (s.literals.size() != 1 || s.literals[0] <= 0) return false;
  }
  return true;
}

int VarMap::var_for(NodeId id) const {
  auto it = event_to_var.find(id);
  if (it == event_to_var.end()) {
    throw InvalidInput("node " + std::to_string(id) + " has no variable");
  }
  return it->second;
}

NodeId VarMap::node_for(int var) const {
  for (const auto& [id, v] : event_to_var) {
    if (v == var) return id;
  }
  throw InvalidInput("variable " + std::to_string(var) +
                     " does not map to an event");
}

VarMap VarMap::for_tree(const FaultTree& tree) {
  VarMap map;
  int next = 1;
  for (NodeId id : tree.basic_event_ids()) {
    map.event_to_var.emplace(id, next++);
  }
  map.aux_from = next;
  map.aux_to = next - 1;
  return map;
}

std::string varmap_to_json(const VarMap& map) {
  nlohmann::json doc;
  nlohmann::json events = nlohmann::json::object();
  for (const auto& [id, var] : map.event_to_var) {
    events[std::to_string(id)] = var;
  }
  doc["events"] = std::move(events);
  doc["aux_from"] = map.aux_from;
  doc["aux_to"] = map.aux_to;
  doc["shift"] = map.shift;
  doc["log_base"] = map.log_base == 10.0 ? "10" : "e";
  return doc.dump(2) + "\n";
}

VarMap varmap_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("varmap JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("events") || !doc["events"].is_object() ||
      !doc.contains("aux_from") || !doc.contains("aux_to") ||
      !doc.contains("shift") || !doc.contains("log_base")) {
    throw ParseError("varmap JSON: expected events/aux_from/aux_to/shift/log_base");
  }
  VarMap map;
  for (const auto& [key, value] : doc["events"].items()) {
    std::uint64_t id = 0;
    try {
      id = std::stoull(key);
    } catch (const std::exception&) {
      throw ParseError("varmap JSON: bad node id '" + key + "'");
    }
    if (id > 0xffffffffull || !value.is_number_integer()) {
      throw ParseError("varmap JSON: bad event entry '" + key + "'");
    }
    map.event_to_var.emplace(static_cast<NodeId>(id), value.get<int>());
  }
  map.aux_from = doc["aux_from"].get<int>();
  map.aux_to = doc["aux_to"].get<int>();
  map.shift = doc["shift"].get<int>();
  std::string base = doc["log_base"].is_string()
                         ? doc["log_base"].get<std::string>()
                         : std::string();
  if (base == "e") {
    map.log_base = std::numbers::e;
  } else if (base == "10") {
    map.log_base = 10.0;
  } else {
    throw ParseError("varmap JSON: log_base must be \"e\" or \"10\"");
  }
  return map;
}

TseitinResult tseitin(const BoolExpr& nnf, int num_event_vars) {
  if (nnf.root < 0) throw InvalidInput("empty expression");

  TseitinResult result;
  result.aux_from = num_event_vars + 1;
  result.aux_to = num_event_vars;

  // Literal each vertex contributes to its parents: leaves are event
  // literals, internal vertices get fresh auxiliaries in arena order.
  std::vector<int> lit_of(nnf.vertices.size(), 0);
  int next_aux = num_event_vars + 1;
  for (std::size_t i = 0; i < nnf.vertices.size(); ++i) {
    const BoolExpr::Vertex& v = nnf.vertices[i];
    if (v.op == BoolExpr::Op::Leaf) {
      if (v.var < 1 || v.var > num_event_vars) {
        throw InvalidInput("leaf variable " + std::to_string(v.var) +
                           " outside 1.." + std::to_string(num_event_vars));
      }
      lit_of[i] = v.negated ? -v.var : v.var;
    } else {
      lit_of[i] = next_aux++;
    }
  }
  result.aux_to = next_aux - 1;
  result.num_vars = std::max(num_event_vars, result.aux_to);

  for (std::size_t i = 0; i < nnf.vertices.size(); ++i) {
    const BoolExpr::Vertex& v = nnf.vertices[i];
    if (v.op == BoolExpr::Op::Leaf) continue;
    int z = lit_of[i];
    if (v.op == BoolExpr::Op::Or) {
      // z -> (c1 | ... | cn), then (ci -> z) for each child.
      Clause big;
      big.push_back(-z);
      for (std::int32_t c : v.children) big.push_back(lit_of[c]);
      result.hard.push_back(std::move(big));
      for (std::int32_t c : v.children) {
        result.hard.push_back(Clause{z, -lit_of[c]});
      }
    } else {
      // z -> ci for each child, then (c1 & ... & cn) -> z.
      for (std::int32_t c : v.children) {
        result.hard.push_back(Clause{-z, lit_of[c]});
      }
      Clause big;
      big.push_back(z);
      for (std::int32_t c : v.children) big.push_back(-lit_of[c]);
      result.hard.push_back(std::move(big));
    }
  }

  result.hard.push_back(Clause{lit_of[nnf.root]});
  return result;
}

int compute_shift(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("compute_shift over an empty list");
  double lo = values[0];
  for (double v : values) {
    if (!(v > 0.0)) throw InvalidInput("compute_shift requires positive values");
    lo = std::min(lo, v);
  }
  int s = 0;
  while (lo < std::pow(10.0, -s)) {
    ++s;
    if (s > 400) throw CapacityError("shift exceeds representable range");
  }
  return s;
}

WeightResult weights_for_neglogs(std::span<const double> neglogs,
                                 std::optional<int> shift) {
  if (neglogs.empty()) throw InvalidInput("no values to weight");
  for (double v : neglogs) {
    if (!(v > 0.0)) throw InvalidInput("-log values must be positive");
  }
  int s = shift ? *shift : compute_shift(neglogs);
  if (s < 0) throw InvalidInput("shift must be non-negative");

  WeightResult result;
  for (;;) {
    double scale = std::pow(10.0, s);
    std::int64_t sum = 0;
    std::vector<std::int64_t> weights(neglogs.size());
    for (std::size_t i = 0; i < neglogs.size(); ++i) {
      double scaled = neglogs[i] * scale;
      // A single weight at or above top already overflows the soft budget;
      // saturating here avoids llround overflow at large shifts.
      std::int64_t w = scaled >= static_cast<double>(kTopWeight)
                           ? kTopWeight
                           : std::llround(scaled);
      if (w < 1) w = 1;
      weights[i] = w;
      sum += w;
    }
    if (sum < kTopWeight) {
      result.shift = s;
      for (std::size_t i = 0; i < neglogs.size(); ++i) {
        result.weights.emplace(static_cast<NodeId>(i), weights[i]);
      }
      return result;
    }
    if (s == 0) {
      throw CapacityError("soft weight sum cannot fit below the hard weight");
    }
    --s;
    result.capped = true;
  }
}

WeightResult build_weights(const FaultTree& tree, double log_base,
                           std::optional<int> shift) {
  if (!(log_base > 1.0)) throw InvalidInput("log base must exceed 1");
  const std::vector<NodeId>& events = tree.basic_event_ids();
  if (events.empty()) throw InvalidInput("tree has no basic events");

  std::vector<double> neglogs;
  neglogs.reserve(events.size());
  double base_ln = std::log(log_base);
  for (NodeId id : events) {
    double p = tree.node(id).event().probability;
    if (!(p > 0.0) || !(p < 1.0)) {
      throw InvalidInput("event " + std::to_string(id) +
                         " probability outside (0,1)");
    }
    neglogs.push_back(-std::log(p) / base_ln);
  }

  WeightResult raw = weights_for_neglogs(neglogs, shift);
  WeightResult result;
  result.shift = raw.shift;
  result.capped = raw.capped;
  for (std::size_t i = 0; i < events.size(); ++i) {
    result.weights.emplace(events[i], raw.weights.at(static_cast<NodeId>(i)));
  }
  return result;
}

EncodeResult encode(const FaultTree& tree, double log_base,
                    std::optional<int> shift) {
  EncodeResult result;

  BoolExpr f = to_expression(tree);
  BoolExpr flipped = flip_gates(f);
  BoolExpr nnf = negate_to_nnf(flipped);

  result.varmap = VarMap::for_tree(tree);
  int num_events = result.varmap.num_event_vars();
  if (num_events == 0) throw InvalidInput("tree has no basic events");

  TseitinResult ts = tseitin(nnf, num_events);

  WeightResult weights = build_weights(tree, log_base, shift);
  if (weights.capped) {
    result.warnings.push_back(
        "shift lowered to " + std::to_string(weights.shift) +
        " to keep the soft weight sum below the hard weight");
  }

  result.varmap.aux_from = ts.aux_from;
  result.varmap.aux_to = ts.aux_to;
  result.varmap.shift = weights.shift;
  result.varmap.log_base = log_base;
  result.weights = weights.weights;

  result.instance.num_vars = ts.num_vars;
  result.instance.top = kTopWeight;
  result.instance.hard = std::move(ts.hard);
  result.instance.soft.reserve(weights.weights.size());
  for (const auto& [id, var] : result.varmap.event_to_var) {
    result.instance.soft.push_back(SoftClause{weights.weights.at(id), Clause{var}});
  }
  return result;
}

}  // namespace mpmcs
