#pragma once

#include <chrono>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mpmcs/bench.hpp"
#include "mpmcs/generator.hpp"

namespace mpmcs::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;           // conclusive result
inline constexpr int kExitUsage = 1;        // bad flags, config, capacity
inline constexpr int kExitParse = 2;        // malformed input file
inline constexpr int kExitVerify = 3;       // a check on a result failed
inline constexpr int kExitBudget = 4;       // budget ended the search early

struct GenerateOptions {
  GenConfig config;
  std::string out;  // tree JSON; empty or "-" writes stdout
  std::string dot;  // optional Graphviz side output
};

struct EncodeOptions {
  std::string tree_path;
  std::string out;         // WCNF; empty or "-" writes stdout
  std::string varmap_out;  // defaults to <out>.varmap.json for file output
  double log_base = std::numbers::e;
  std::optional<int> shift;
};

struct SolveOptions {
  std::string wcnf_path;
  std::string varmap_path;  // optional; enables event decoding
  std::string tree_path;    // optional; enables probability and verification
  std::string out;          // solution JSON; empty or "-" writes stdout
  std::chrono::milliseconds budget{60'000};
  std::vector<std::string> strategies;  // empty selects the defaults
  double log_base = std::numbers::e;
  std::optional<int> shift;
};

struct VerifyOptions {
  std::string tree_path;
  std::string solution_path;
  double log_base = std::numbers::e;
  int max_events = 20;  // exhaustive cross-check ceiling
};

struct BenchCliOptions {
  std::vector<int> ids;  // empty runs the whole grid
  double scale = 1.0;
  int k = 3;
  BenchOptions run;
  std::string csv_out;  // optional CSV side output
};

struct PipelineOptions {
  GenConfig config;
  double log_base = std::numbers::e;
  std::optional<int> shift;
  std::chrono::milliseconds budget{60'000};
  std::vector<std::string> strategies;
  std::string out;         // solution JSON; empty or "-" writes stdout
  std::string tree_out;    // optional artifacts
  std::string wcnf_out;
  std::string varmap_out;
};

// Each runner returns one of the exit codes above and never throws; errors
// land on `err` as a single "error: ..." line.
int run_generate(const GenerateOptions& options, std::ostream& out,
                 std::ostream& err);
int run_encode(const EncodeOptions& options, std::ostream& out,
               std::ostream& err);
int run_solve(const SolveOptions& options, std::ostream& out,
              std::ostream& err);
int run_verify(const VerifyOptions& options, std::ostream& out,
               std::ostream& err);
int run_bench(const BenchCliOptions& options, std::ostream& out,
              std::ostream& err);
int run_pipeline(const PipelineOptions& options, std::ostream& out,
                 std::ostream& err);

}  // namespace mpmcs::cli
