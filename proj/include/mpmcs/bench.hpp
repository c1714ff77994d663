#pragma once

#include <chrono>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "mpmcs/generator.hpp"

namespace mpmcs {

struct BenchCase {
  int id = 0;
  GenConfig config;
};

// The built-in 80-case grid: ids 1..80, twenty cases per size block
// n in {2500, 5000, 7500, 10000}, the first ten of each block with ratios
// (0.8, 0.1, 0.1) and the last ten with (0.6, 0.2, 0.2), seed equal to the
// case id. `scale` multiplies n.
std::vector<BenchCase> default_suite(double scale = 1.0, int k = 3);

struct BenchRow {
  int id = 0;
  std::int64_t n = 0;
  std::int64_t g_nodes = 0;
  std::int64_t g_edges = 0;
  std::int64_t g_at = 0;
  std::int64_t g_and = 0;
  std::int64_t g_or = 0;
  int ts_vars = 0;
  int ts_clauses = 0;
  std::string status;
  std::int64_t time_ms = 0;  // portfolio wall time only
  std::optional<int> size;
  std::optional<std::int64_t> int_log_cost;
  std::optional<double> log_cost;
  std::optional<double> probability;
};

struct BenchOptions {
  std::chrono::milliseconds budget{60'000};
  int jobs = 1;
  std::vector<std::string> strategies;  // empty selects the default portfolio
  double log_base = std::numbers::e;
  std::optional<int> shift;
  // When set, each case leaves case-<id>-<n>.tree.json, .wcnf and
  // .varmap.json behind in this directory.
  std::string artifact_dir;
};

BenchRow run_case(const BenchCase& bench_case, const BenchOptions& options);

// Runs the cases on `jobs` workers; rows come back in case order regardless
// of completion order.
std::vector<BenchRow> run_suite(const std::vector<BenchCase>& cases,
                                const BenchOptions& options);

std::string rows_to_csv(const std::vector<BenchRow>& rows);
std::string rows_to_table(const std::vector<BenchRow>& rows);

}  // namespace mpmcs
