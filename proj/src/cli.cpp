#include "mpmcs/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "mpmcs/encoder.hpp"
#include "mpmcs/errors.hpp"
#include "mpmcs/oracle.hpp"
#include "mpmcs/solver.hpp"
#include "mpmcs/tree_io.hpp"
#include "mpmcs/wcnf_io.hpp"

namespace mpmcs::cli {

namespace {

int guard(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerify;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("cannot write " + path);
}

// Empty path and "-" mean stdout.
void write_output(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::vector<std::unique_ptr<Strategy>> pick_strategies(
    const std::vector<std::string>& names) {
  if (names.empty()) return default_strategies();
  std::vector<std::unique_ptr<Strategy>> out;
  for (const std::string& name : names) out.push_back(make_strategy(name));
  return out;
}

int exit_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
    case SolveStatus::Infeasible:
      return kExitOk;
    case SolveStatus::Feasible:
    case SolveStatus::Unknown:
      return kExitBudget;
  }
  return kExitBudget;
}

void report_outcome(const MaxSatOutcome& outcome, std::ostream& err) {
  err << "status: " << to_string(outcome.status);
  if (outcome.cost) err << " cost: " << *outcome.cost;
  err << " strategy: "
      << (outcome.strategy_id.empty() ? "none" : outcome.strategy_id)
      << " time_ms: " << outcome.elapsed.count() << "\n";
}

}  // namespace

int run_generate(const GenerateOptions& options, std::ostream& out,
                 std::ostream& err) {
  return guard(err, [&] {
    FaultTree tree = generate(options.config);
    write_output(options.out, tree_to_json(tree), out);
    if (!options.dot.empty()) write_file(options.dot, tree_to_dot(tree));
    CompositionStats stats = composition(tree);
    err << "generated: nodes " << stats.nodes << " edges " << stats.edges
        << " at " << stats.at << " and " << stats.and_gates << " or "
        << stats.or_gates << "\n";
    return kExitOk;
  });
}

int run_encode(const EncodeOptions& options, std::ostream& out,
               std::ostream& err) {
  return guard(err, [&] {
    LoadedTree loaded = load_tree(options.tree_path);
    for (const std::string& warning : loaded.warnings) {
      err << "warning: " << warning << "\n";
    }
    ValidationReport report = validate(loaded.tree);
    if (!report.valid()) {
      err << "error: invalid tree\n" << report.to_string();
      return kExitUsage;
    }

    EncodeResult encoded =
        encode(loaded.tree, options.log_base, options.shift);
    for (const std::string& warning : encoded.warnings) {
      err << "warning: " << warning << "\n";
    }
    write_output(options.out, emit_wcnf(encoded.instance), out);

    std::string varmap_path = options.varmap_out;
    if (varmap_path.empty() && !options.out.empty() && options.out != "-") {
      varmap_path = options.out + ".varmap.json";
    }
    if (!varmap_path.empty()) {
      write_file(varmap_path, varmap_to_json(encoded.varmap));
    }
    err << "encoded: vars " << encoded.instance.num_vars << " clauses "
        << encoded.instance.num_clauses() << " shift "
        << encoded.varmap.shift << "\n";
    return kExitOk;
  });
}

int run_solve(const SolveOptions& options, std::ostream& out,
              std::ostream& err) {
  return guard(err, [&] {
    WcnfInstance instance = load_wcnf(options.wcnf_path);

    VarMap varmap;
    bool have_map = false;
    if (!options.varmap_path.empty()) {
      varmap = varmap_from_json(read_file(options.varmap_path));
      have_map = true;
    } else {
      varmap.shift = options.shift.value_or(0);
      varmap.log_base = options.log_base;
    }

    std::optional<FaultTree> tree;
    if (!options.tree_path.empty()) {
      LoadedTree loaded = load_tree(options.tree_path);
      tree.emplace(std::move(loaded.tree));
    }

    SolveBudget budget;
    budget.wall_time = options.budget;
    auto strategies = pick_strategies(options.strategies);
    MaxSatOutcome outcome = portfolio(instance, strategies, budget);

    MpmcsResult result;
    bool have_result = false;
    if (outcome.model && have_map && tree) {
      result = decode(outcome, varmap, *tree);
      have_result = true;
    }
    write_output(options.out,
                 solution_to_json(outcome, have_result ? &result : nullptr,
                                  varmap),
                 out);
    report_outcome(outcome, err);
    return exit_for(outcome.status);
  });
}

int run_verify(const VerifyOptions& options, std::ostream& out,
               std::ostream& err) {
  return guard(err, [&] {
    LoadedTree loaded = load_tree(options.tree_path);
    const FaultTree& tree = loaded.tree;
    LoadedSolution solution =
        solution_from_json(read_file(options.solution_path));

    auto fail = [&err](const std::string& reason) {
      err << "error: verification failed: " << reason << "\n";
      return kExitVerify;
    };

    if (solution.status == SolveStatus::Unknown) {
      out << "verify: nothing to check for an unknown result\n";
      return kExitOk;
    }

    const std::vector<NodeId> events = tree.basic_event_ids();
    if (solution.status == SolveStatus::Infeasible) {
      CutSet everything(events.begin(), events.end());
      if (!everything.empty() && is_cut_set(tree, everything)) {
        return fail("the tree has cut sets but the solution claims none");
      }
      out << "verify: infeasibility confirmed\n";
      return kExitOk;
    }

    if (!solution.events) {
      throw InvalidInput("solution carries no events to verify");
    }
    const CutSet& cut = *solution.events;
    if (!is_cut_set(tree, cut)) {
      return fail("events do not form a cut set");
    }
    if (!is_minimal_cut_set(tree, cut)) {
      return fail("cut set is not minimal");
    }

    double probability = joint_probability(tree, cut);
    if (solution.probability) {
      double diff = std::fabs(probability - *solution.probability);
      if (diff > 1e-9 * std::max(probability, *solution.probability)) {
        return fail("stored probability disagrees with the tree");
      }
    }

    double log_base = solution.log_base.value_or(options.log_base);
    int shift_used = solution.shift.value_or(0);
    if (solution.shift && solution.cost) {
      WeightResult weights =
          build_weights(tree, log_base, shift_used);
      std::int64_t expected = 0;
      for (NodeId id : cut) {
        auto it = weights.weights.find(id);
        if (it == weights.weights.end()) {
          return fail("cut set names an unknown event");
        }
        expected += it->second;
      }
      if (expected != *solution.cost) {
        return fail("stored cost disagrees with the event weights");
      }
      if (static_cast<int>(events.size()) <= options.max_events) {
        BruteIntResult brute = mpmcs_brute_int(
            tree, weights.weights, options.max_events);
        if (solution.status == SolveStatus::Optimal &&
            *solution.cost != brute.cost) {
          return fail("cost is not the exhaustive optimum");
        }
        if (*solution.cost < brute.cost) {
          return fail("cost undercuts the exhaustive optimum");
        }
      }
    }

    if (solution.log_cost && solution.shift) {
      // Every weight carries up to half a unit of rounding at the chosen
      // shift, plus one unit from the minimum-weight floor.
      double tolerance =
          (0.5 * static_cast<double>(cut.size()) + 1.0) /
          std::pow(10.0, shift_used);
      double exact = -std::log(probability) / std::log(log_base);
      if (std::fabs(*solution.log_cost - exact) > tolerance + 1e-9) {
        return fail("stored log cost disagrees with the probability");
      }
    }

    out << "verify: ok (" << to_string(solution.status) << ", "
        << cut.size() << " events)\n";
    return kExitOk;
  });
}

int run_bench(const BenchCliOptions& options, std::ostream& out,
              std::ostream& err) {
  return guard(err, [&] {
    std::vector<BenchCase> suite = default_suite(options.scale, options.k);
    std::vector<BenchCase> selected;
    if (options.ids.empty()) {
      selected = std::move(suite);
    } else {
      for (int id : options.ids) {
        if (id < 1 || id > static_cast<int>(suite.size())) {
          throw InvalidInput("case id " + std::to_string(id) +
                             " is outside 1.." +
                             std::to_string(suite.size()));
        }
        selected.push_back(suite[static_cast<std::size_t>(id - 1)]);
      }
    }

    std::vector<BenchRow> rows = run_suite(selected, options.run);
    out << rows_to_table(rows);
    if (!options.csv_out.empty()) {
      write_file(options.csv_out, rows_to_csv(rows));
    }
    err << "bench: " << rows.size() << " cases done\n";
    return kExitOk;
  });
}

int run_pipeline(const PipelineOptions& options, std::ostream& out,
                 std::ostream& err) {
  return guard(err, [&] {
    FaultTree tree = generate(options.config);
    if (!options.tree_out.empty()) save_tree(tree, options.tree_out);

    EncodeResult encoded = encode(tree, options.log_base, options.shift);
    for (const std::string& warning : encoded.warnings) {
      err << "warning: " << warning << "\n";
    }
    if (!options.wcnf_out.empty()) {
      save_wcnf(encoded.instance, options.wcnf_out);
    }
    if (!options.varmap_out.empty()) {
      write_file(options.varmap_out, varmap_to_json(encoded.varmap));
    }

    SolveBudget budget;
    budget.wall_time = options.budget;
    auto strategies = pick_strategies(options.strategies);
    MaxSatOutcome outcome = portfolio(encoded.instance, strategies, budget);

    MpmcsResult result;
    bool have_result = false;
    if (outcome.model) {
      result = decode(outcome, encoded.varmap, tree);
      have_result = true;
    }
    write_output(options.out,
                 solution_to_json(outcome, have_result ? &result : nullptr,
                                  encoded.varmap),
                 out);
    report_outcome(outcome, err);
    return exit_for(outcome.status);
  });
}

}  // namespace mpmcs::cli
