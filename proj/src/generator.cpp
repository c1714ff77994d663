#include "mpmcs/generator.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mpmcs/errors.hpp"
#include "mpmcs/rng.hpp"

namespace mpmcs {

void validate_config(const GenConfig& config) {
  if (config.n < 1) throw InvalidInput("n must be positive");
  if (config.k < 1) throw InvalidInput("k must be at least 1");
  if (config.r_at < 0 || config.r_and < 0 || config.r_or < 0) {
    throw InvalidInput("ratios must be non-negative");
  }
  if (std::abs(config.r_at + config.r_and + config.r_or - 1.0) > 1e-9) {
    throw InvalidInput("ratios must sum to 1");
  }
  if (config.r_and + config.r_or <= 0.0) {
    throw InvalidInput("gate ratio must be positive");
  }
  if (!(config.prob_lo > 0.0) || !(config.prob_hi < 1.0) ||
      !(config.prob_lo <= config.prob_hi)) {
    throw InvalidInput("probability band must satisfy 0 < lo <= hi < 1");
  }

  std::int64_t s = std::llround(static_cast<double>(config.n) * config.r_at);
  std::int64_t m = config.n - s;
  if (m < 1) throw InvalidInput("n and r_at leave no room for a gate");
  if (s < config.k) {
    throw InvalidInput(
        "need at least k atoms so the last gate can fill its inputs");
  }
}

FaultTree generate(const GenConfig& config) {
  validate_config(config);

  const std::int64_t s = std::llround(static_cast<double>(config.n) * config.r_at);
  const std::int64_t m = config.n - s;
  const std::int64_t and_count = std::llround(
      static_cast<double>(m) * (config.r_and / (config.r_and + config.r_or)));
  const int k = config.k;

  // Ids: root 0, gates 1..m in sequence order, atoms m+1..m+s.
  auto gate_id = [m](std::int64_t i) { return static_cast<NodeId>(i); };
  auto atom_id = [m](std::int64_t j) { return static_cast<NodeId>(m + j); };

  Rng rng(config.seed);

  std::vector<GateOp> ops(static_cast<std::size_t>(m), GateOp::And);
  for (std::int64_t i = and_count; i < m; ++i) {
    ops[static_cast<std::size_t>(i)] = GateOp::Or;
  }
  rng.shuffle(ops);

  std::vector<double> probability(static_cast<std::size_t>(s));
  for (std::int64_t j = 0; j < s; ++j) {
    probability[static_cast<std::size_t>(j)] =
        rng.real(config.prob_lo, config.prob_hi);
  }

  std::vector<std::vector<NodeId>> inputs(static_cast<std::size_t>(m) + 1);
  inputs[0].push_back(gate_id(1));  // root consumes the first gate

  std::vector<bool> consumed(static_cast<std::size_t>(m) + 1, false);
  consumed[1] = true;
  // atom_parents[j] lists gates already fed by atom j+1, kept sorted.
  std::vector<std::vector<std::int64_t>> atom_parents(
      static_cast<std::size_t>(s));

  for (std::int64_t i = 1; i <= m; ++i) {
    std::int64_t ahead = m - i;
    std::int64_t from_gates = std::min<std::int64_t>(k, ahead);
    auto& in = inputs[static_cast<std::size_t>(i)];

    if (from_gates > 0) {
      auto picks = rng.sample(static_cast<std::uint32_t>(ahead),
                              static_cast<std::uint32_t>(from_gates));
      for (std::uint32_t off : picks) {
        std::int64_t j = i + 1 + off;
        in.push_back(gate_id(j));
        consumed[static_cast<std::size_t>(j)] = true;
      }
    }
    std::int64_t deficit = k - from_gates;
    if (deficit > 0) {
      auto picks = rng.sample(static_cast<std::uint32_t>(s),
                              static_cast<std::uint32_t>(deficit));
      for (std::uint32_t off : picks) {
        std::int64_t j = off + 1;
        in.push_back(atom_id(j));
        auto& parents = atom_parents[static_cast<std::size_t>(j - 1)];
        parents.insert(std::lower_bound(parents.begin(), parents.end(), i), i);
      }
    }

    // Every gate after the first must feed something that was wired before
    // it; otherwise nothing downstream would ever reach it from the root.
    if (i > 1 && !consumed[static_cast<std::size_t>(i)]) {
      std::int64_t h = 1 + static_cast<std::int64_t>(
                               rng.below(static_cast<std::uint64_t>(i - 1)));
      inputs[static_cast<std::size_t>(h)].push_back(gate_id(i));
      consumed[static_cast<std::size_t>(i)] = true;
    }
  }

  for (std::int64_t j = 1; j <= s; ++j) {
    int want = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    const auto& parents = atom_parents[static_cast<std::size_t>(j - 1)];
    std::vector<std::int64_t> eligible;
    eligible.reserve(static_cast<std::size_t>(m) - parents.size());
    for (std::int64_t i = 1; i <= m; ++i) {
      if (!std::binary_search(parents.begin(), parents.end(), i)) {
        eligible.push_back(i);
      }
    }
    std::int64_t take = std::min<std::int64_t>(want,
                                               static_cast<std::int64_t>(eligible.size()));
    if (take <= 0) continue;
    auto picks = rng.sample(static_cast<std::uint32_t>(eligible.size()),
                            static_cast<std::uint32_t>(take));
    for (std::uint32_t off : picks) {
      inputs[static_cast<std::size_t>(eligible[off])].push_back(atom_id(j));
    }
  }

  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(m + s) + 1);
  nodes.push_back(Node{0, Gate{GateOp::Or, std::move(inputs[0])}});
  for (std::int64_t i = 1; i <= m; ++i) {
    nodes.push_back(Node{gate_id(i),
                         Gate{ops[static_cast<std::size_t>(i - 1)],
                              std::move(inputs[static_cast<std::size_t>(i)])}});
  }
  for (std::int64_t j = 1; j <= s; ++j) {
    nodes.push_back(
        Node{atom_id(j), BasicEvent{probability[static_cast<std::size_t>(j - 1)]}});
  }

  return FaultTree(std::move(nodes), 0);
}

CompositionStats composition(const FaultTree& tree) {
  CompositionStats stats;
  stats.nodes = static_cast<std::int64_t>(tree.size());
  for (const Node& n : tree.nodes()) {
    if (n.is_event()) {
      ++stats.at;
      continue;
    }
    stats.edges += static_cast<std::int64_t>(n.gate().inputs.size());
    if (n.gate().op == GateOp::And) {
      ++stats.and_gates;
    } else {
      ++stats.or_gates;
    }
  }
  return stats;
}

GenConfig config_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config JSON: document is not an object");

  GenConfig config;
  auto require_number = [&doc](const char* key) {
    if (!doc.contains(key) || !doc[key].is_number()) {
      throw ParseError(std::string("config JSON: missing numeric field '") +
                       key + "'");
    }
  };
  require_number("n");
  require_number("r_at");
  require_number("r_and");
  require_number("r_or");
  config.n = doc["n"].get<std::int64_t>();
  config.r_at = doc["r_at"].get<double>();
  config.r_and = doc["r_and"].get<double>();
  config.r_or = doc["r_or"].get<double>();
  if (doc.contains("k")) config.k = doc["k"].get<int>();
  if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
  return config;
}

std::string config_to_json(const GenConfig& config) {
  nlohmann::json doc;
  doc["n"] = config.n;
  doc["r_at"] = config.r_at;
  doc["r_and"] = config.r_and;
  doc["r_or"] = config.r_or;
  doc["k"] = config.k;
  doc["seed"] = config.seed;
  return doc.dump(2) + "\n";
}

}  // namespace mpmcs
