#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpmcs/cli.hpp"
#include "mpmcs/errors.hpp"
#include "mpmcs/solver.hpp"

namespace {

using mpmcs::InvalidInput;

double parse_log_base(const std::string& text) {
  if (text == "e") return std::numbers::e;
  if (text == "10") return 10.0;
  throw InvalidInput("--log-base must be e or 10");
}

std::optional<int> parse_shift(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    int value = std::stoi(text, &used);
    if (used != text.size() || value < 0) throw InvalidInput("");
    return value;
  } catch (...) {
    throw InvalidInput("--shift must be auto or a non-negative integer");
  }
}

void parse_ratios(const std::string& text, mpmcs::GenConfig& config) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw InvalidInput("");
    } catch (...) {
      throw InvalidInput("--r expects three comma-separated numbers");
    }
  }
  if (values.size() != 3) {
    throw InvalidInput("--r expects exactly three ratios, e.g. 0.8,0.1,0.1");
  }
  config.r_at = values[0];
  config.r_and = values[1];
  config.r_or = values[2];
}

std::vector<int> parse_cases(const std::string& text) {
  std::vector<int> ids;
  if (text.empty() || text == "all") return ids;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t dash = item.find('-');
    try {
      if (dash == std::string::npos) {
        std::size_t used = 0;
        ids.push_back(std::stoi(item, &used));
        if (used != item.size()) throw InvalidInput("");
      } else {
        std::size_t used_lo = 0;
        std::size_t used_hi = 0;
        std::string lo_text = item.substr(0, dash);
        std::string hi_text = item.substr(dash + 1);
        int lo = std::stoi(lo_text, &used_lo);
        int hi = std::stoi(hi_text, &used_hi);
        if (used_lo != lo_text.size() || used_hi != hi_text.size() ||
            lo > hi) {
          throw InvalidInput("");
        }
        for (int id = lo; id <= hi; ++id) ids.push_back(id);
      }
    } catch (...) {
      throw InvalidInput("--cases expects ids like 1,5,20-30");
    }
  }
  return ids;
}

// Shared flag values, overridable per invocation through MPMCS_* variables.
struct GlobalFlags {
  std::uint64_t seed = 1;
  std::string log_base = "e";
  std::string shift = "auto";
  int k = 3;
  std::int64_t budget_ms = 60'000;
  std::vector<std::string> strategies;
  int jobs = 1;
  double scale = 1.0;
};

void add_global_flags(CLI::App& app, GlobalFlags& flags) {
  app.add_option("--seed", flags.seed, "Generator seed")
      ->envname("MPMCS_SEED");
  app.add_option("--log-base", flags.log_base,
                 "Logarithm base for weights: e or 10")
      ->check(CLI::IsMember({"e", "10"}))
      ->envname("MPMCS_LOG_BASE");
  app.add_option("--shift", flags.shift,
                 "Decimal weight shift: auto or a non-negative integer")
      ->envname("MPMCS_SHIFT");
  app.add_option("--k", flags.k, "Gate fan-in for generation")
      ->envname("MPMCS_K");
  app.add_option("--budget-ms", flags.budget_ms,
                 "Solve budget in milliseconds")
      ->check(CLI::PositiveNumber)
      ->envname("MPMCS_BUDGET_MS");
  app.add_option("--strategies", flags.strategies,
                 "Comma-separated solver strategies")
      ->delimiter(',')
      ->envname("MPMCS_STRATEGIES");
  app.add_option("--jobs", flags.jobs, "Parallel bench workers")
      ->check(CLI::PositiveNumber)
      ->envname("MPMCS_JOBS");
  app.add_option("--scale", flags.scale, "Multiplier for bench sizes")
      ->check(CLI::PositiveNumber)
      ->envname("MPMCS_SCALE");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Random AND/OR fault trees, their maximum probability minimal cut "
      "sets via weighted partial MaxSAT, and tooling around both"};
  app.require_subcommand(1);

  GlobalFlags flags;
  add_global_flags(app, flags);

  int rc = 0;
  auto run = [&rc](auto&& body) {
    try {
      rc = body();
    } catch (const mpmcs::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = mpmcs::cli::kExitUsage;
    }
  };

  // generate
  auto* generate = app.add_subcommand(
      "generate", "Generate a random fault tree as JSON");
  generate->fallthrough();
  std::int64_t gen_n = 0;
  std::string gen_ratios;
  double gen_p_lo = mpmcs::kProbabilityFloor;
  double gen_p_hi = mpmcs::kProbabilityCeil;
  std::string gen_out;
  std::string gen_dot;
  generate->add_option("--n", gen_n, "Nodes below the root")->required();
  generate->add_option("--r", gen_ratios,
                       "Atom,AND,OR ratios, e.g. 0.8,0.1,0.1");
  generate->add_option("--p-lo", gen_p_lo, "Probability band lower end");
  generate->add_option("--p-hi", gen_p_hi, "Probability band upper end");
  generate->add_option("--out,-o", gen_out, "Tree JSON path, - for stdout");
  generate->add_option("--dot", gen_dot, "Also write a Graphviz view here");
  generate->callback([&] {
    run([&] {
      mpmcs::cli::GenerateOptions options;
      options.config.n = gen_n;
      options.config.k = flags.k;
      options.config.seed = flags.seed;
      options.config.prob_lo = gen_p_lo;
      options.config.prob_hi = gen_p_hi;
      if (!gen_ratios.empty()) parse_ratios(gen_ratios, options.config);
      options.out = gen_out;
      options.dot = gen_dot;
      return mpmcs::cli::run_generate(options, std::cout, std::cerr);
    });
  });

  // encode
  auto* encode = app.add_subcommand(
      "encode", "Encode a fault tree JSON as weighted partial MaxSAT");
  encode->fallthrough();
  std::string enc_tree;
  std::string enc_out;
  std::string enc_varmap;
  encode->add_option("tree", enc_tree, "Tree JSON path")->required();
  encode->add_option("--out,-o", enc_out, "WCNF path, - for stdout");
  encode->add_option("--varmap", enc_varmap,
                     "Variable map JSON path (default <out>.varmap.json)");
  encode->callback([&] {
    run([&] {
      mpmcs::cli::EncodeOptions options;
      options.tree_path = enc_tree;
      options.out = enc_out;
      options.varmap_out = enc_varmap;
      options.log_base = parse_log_base(flags.log_base);
      options.shift = parse_shift(flags.shift);
      return mpmcs::cli::run_encode(options, std::cout, std::cerr);
    });
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Solve a WCNF instance exactly");
  solve->fallthrough();
  std::string solve_wcnf;
  std::string solve_varmap;
  std::string solve_tree;
  std::string solve_out;
  solve->add_option("wcnf", solve_wcnf, "WCNF path")->required();
  solve->add_option("--varmap", solve_varmap,
                    "Variable map JSON for event decoding");
  solve->add_option("--tree", solve_tree,
                    "Tree JSON for probabilities and verification");
  solve->add_option("--out,-o", solve_out,
                    "Solution JSON path, - for stdout");
  solve->callback([&] {
    run([&] {
      mpmcs::cli::SolveOptions options;
      options.wcnf_path = solve_wcnf;
      options.varmap_path = solve_varmap;
      options.tree_path = solve_tree;
      options.out = solve_out;
      options.budget = std::chrono::milliseconds(flags.budget_ms);
      options.strategies = flags.strategies;
      options.log_base = parse_log_base(flags.log_base);
      options.shift = parse_shift(flags.shift);
      return mpmcs::cli::run_solve(options, std::cout, std::cerr);
    });
  });

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Check a solution JSON against its fault tree");
  verify->fallthrough();
  std::string verify_tree;
  std::string verify_solution;
  int verify_max_events = 20;
  verify->add_option("--tree", verify_tree, "Tree JSON path")->required();
  verify->add_option("--solution", verify_solution, "Solution JSON path")
      ->required();
  verify->add_option("--max-events", verify_max_events,
                     "Exhaustive cross-check ceiling");
  verify->callback([&] {
    run([&] {
      mpmcs::cli::VerifyOptions options;
      options.tree_path = verify_tree;
      options.solution_path = verify_solution;
      options.log_base = parse_log_base(flags.log_base);
      options.max_events = verify_max_events;
      return mpmcs::cli::run_verify(options, std::cout, std::cerr);
    });
  });

  // bench
  auto* bench = app.add_subcommand(
      "bench", "Run the built-in generator/solver grid");
  bench->fallthrough();
  std::string bench_cases = "all";
  std::string bench_csv;
  std::string bench_dir;
  bench->add_option("--cases", bench_cases, "Ids to run, e.g. 1,5,20-30");
  bench->add_option("--csv", bench_csv, "Also write rows as CSV here");
  bench->add_option("--out-dir", bench_dir,
                    "Keep per-case tree/WCNF/varmap artifacts here");
  bench->callback([&] {
    run([&] {
      mpmcs::cli::BenchCliOptions options;
      options.ids = parse_cases(bench_cases);
      options.scale = flags.scale;
      options.k = flags.k;
      options.run.budget = std::chrono::milliseconds(flags.budget_ms);
      options.run.jobs = flags.jobs;
      options.run.strategies = flags.strategies;
      options.run.log_base = parse_log_base(flags.log_base);
      options.run.shift = parse_shift(flags.shift);
      options.run.artifact_dir = bench_dir;
      options.csv_out = bench_csv;
      return mpmcs::cli::run_bench(options, std::cout, std::cerr);
    });
  });

  // pipeline
  auto* pipeline = app.add_subcommand(
      "pipeline", "Generate, encode, solve and decode in one pass");
  pipeline->fallthrough();
  std::int64_t pipe_n = 0;
  std::string pipe_ratios;
  double pipe_p_lo = mpmcs::kProbabilityFloor;
  double pipe_p_hi = mpmcs::kProbabilityCeil;
  std::string pipe_out;
  std::string pipe_tree;
  std::string pipe_wcnf;
  std::string pipe_varmap;
  pipeline->add_option("--n", pipe_n, "Nodes below the root")->required();
  pipeline->add_option("--r", pipe_ratios,
                       "Atom,AND,OR ratios, e.g. 0.8,0.1,0.1");
  pipeline->add_option("--p-lo", pipe_p_lo, "Probability band lower end");
  pipeline->add_option("--p-hi", pipe_p_hi, "Probability band upper end");
  pipeline->add_option("--out,-o", pipe_out,
                       "Solution JSON path, - for stdout");
  pipeline->add_option("--save-tree", pipe_tree, "Keep the tree JSON here");
  pipeline->add_option("--save-wcnf", pipe_wcnf, "Keep the WCNF here");
  pipeline->add_option("--save-varmap", pipe_varmap,
                       "Keep the variable map here");
  pipeline->callback([&] {
    run([&] {
      mpmcs::cli::PipelineOptions options;
      options.config.n = pipe_n;
      options.config.k = flags.k;
      options.config.seed = flags.seed;
      options.config.prob_lo = pipe_p_lo;
      options.config.prob_hi = pipe_p_hi;
      if (!pipe_ratios.empty()) parse_ratios(pipe_ratios, options.config);
      options.log_base = parse_log_base(flags.log_base);
      options.shift = parse_shift(flags.shift);
      options.budget = std::chrono::milliseconds(flags.budget_ms);
      options.strategies = flags.strategies;
      options.out = pipe_out;
      options.tree_out = pipe_tree;
      options.wcnf_out = pipe_wcnf;
      options.varmap_out = pipe_varmap;
      return mpmcs::cli::run_pipeline(options, std::cout, std::cerr);
    });
  });

  CLI11_PARSE(app, argc, argv);
  return rc;
}
