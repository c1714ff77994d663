#include "mpmcs/bench.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "mpmcs/encoder.hpp"
#include "mpmcs/errors.hpp"
#include "mpmcs/solver.hpp"
#include "mpmcs/tree_io.hpp"
#include "mpmcs/wcnf_io.hpp"

namespace mpmcs {

namespace {

constexpr std::int64_t kSuiteSizes[] = {2500, 5000, 7500, 10000};

std::string format_double(double value) {
  std::ostringstream out;
  out.precision(6);
  out << value;
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

std::vector<std::string> row_cells(const BenchRow& row) {
  return {
      std::to_string(row.id),
      std::to_string(row.n),
      std::to_string(row.g_nodes),
      std::to_string(row.g_edges),
      std::to_string(row.g_at),
      std::to_string(row.g_and),
      std::to_string(row.g_or),
      std::to_string(row.ts_vars),
      std::to_string(row.ts_clauses),
      row.status,
      std::to_string(row.time_ms),
      row.size ? std::to_string(*row.size) : "",
      row.int_log_cost ? std::to_string(*row.int_log_cost) : "",
      row.log_cost ? format_double(*row.log_cost) : "",
      row.probability ? format_double(*row.probability) : "",
  };
}

const char* const kColumns[] = {"id",     "n",       "gNodes",     "gEdges",
                                "gAT",    "gAND",    "gOR",        "tsVars",
                                "tsClauses", "status", "time_ms",  "size",
                                "intLogCost", "logCost", "probability"};
constexpr std::size_t kNumColumns = sizeof(kColumns) / sizeof(kColumns[0]);

}  // namespace

std::vector<BenchCase> default_suite(double scale, int k) {
  if (!(scale > 0.0)) throw InvalidInput("scale must be positive");
  std::vector<BenchCase> cases;
  cases.reserve(80);
  for (int id = 1; id <= 80; ++id) {
    BenchCase c;
    c.id = id;
    int block = (id - 1) / 20;
    bool dense = (id - 1) % 20 < 10;
    c.config.n = std::llround(static_cast<double>(kSuiteSizes[block]) * scale);
    c.config.r_at = dense ? 0.8 : 0.6;
    c.config.r_and = dense ? 0.1 : 0.2;
    c.config.r_or = dense ? 0.1 : 0.2;
    c.config.k = k;
    c.config.seed = static_cast<std::uint64_t>(id);
    validate_config(c.config);
    cases.push_back(c);
  }
  return cases;
}

BenchRow run_case(const BenchCase& bench_case, const BenchOptions& options) {
  BenchRow row;
  row.id = bench_case.id;
  row.n = bench_case.config.n;

  FaultTree tree = generate(bench_case.config);
  CompositionStats stats = composition(tree);
  row.g_nodes = stats.nodes;
  row.g_edges = stats.edges;
  row.g_at = stats.at;
  row.g_and = stats.and_gates;
  row.g_or = stats.or_gates;

  EncodeResult encoded = encode(tree, options.log_base, options.shift);
  row.ts_vars = encoded.instance.num_vars;
  row.ts_clauses = encoded.instance.num_clauses();

  if (!options.artifact_dir.empty()) {
    std::filesystem::path dir(options.artifact_dir);
    std::filesystem::create_directories(dir);
    std::string stem =
        "case-" + std::to_string(row.id) + "-" + std::to_string(row.n);
    save_tree(tree, dir / (stem + ".tree.json"));
    save_wcnf(encoded.instance, dir / (stem + ".wcnf"));
    write_text(dir / (stem + ".varmap.json"), varmap_to_json(encoded.varmap));
  }

  std::vector<std::unique_ptr<Strategy>> strategies;
  if (options.strategies.empty()) {
    strategies = default_strategies();
  } else {
    for (const std::string& name : options.strategies) {
      strategies.push_back(make_strategy(name));
    }
  }

  SolveBudget budget;
  budget.wall_time = options.budget;
  auto start = std::chrono::steady_clock::now();
  MaxSatOutcome outcome = portfolio(encoded.instance, strategies, budget);
  row.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();

  row.status = to_string(outcome.status);
  if (outcome.model) {
    MpmcsResult result = decode(outcome, encoded.varmap, tree);
    row.size = result.size;
    row.int_log_cost = result.int_log_cost;
    row.log_cost = result.log_cost;
    row.probability = result.probability;
  }
  return row;
}

std::vector<BenchRow> run_suite(const std::vector<BenchCase>& cases,
                                const BenchOptions& options) {
  if (options.jobs < 1) throw InvalidInput("jobs must be at least 1");
  std::vector<BenchRow> rows(cases.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cases.size());

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= cases.size()) return;
      try {
        rows[i] = run_case(cases[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  int jobs = std::min<int>(options.jobs, static_cast<int>(cases.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string rows_to_csv(const std::vector<BenchRow>& rows) {
  std::string out;
  for (std::size_t c = 0; c < kNumColumns; ++c) {
    if (c) out += ',';
    out += kColumns[c];
  }
  out += '\n';
  for (const BenchRow& row : rows) {
    std::vector<std::string> cells = row_cells(row);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += ',';
      out += cells[c];
    }
    out += '\n';
  }
  return out;
}

std::string rows_to_table(const std::vector<BenchRow>& rows) {
  std::vector<std::vector<std::string>> grid;
  grid.emplace_back(kColumns, kColumns + kNumColumns);
  for (const BenchRow& row : rows) {
    grid.push_back(row_cells(row));
    for (std::string& cell : grid.back()) {
      if (cell.empty()) cell = "-";
    }
  }

  std::vector<std::size_t> widths(kNumColumns, 0);
  for (const auto& line : grid) {
    for (std::size_t c = 0; c < kNumColumns; ++c) {
      widths[c] = std::max(widths[c], line[c].size());
    }
  }

  std::string out;
  for (const auto& line : grid) {
    for (std::size_t c = 0; c < kNumColumns; ++c) {
      if (c) out += "  ";
      out.append(widths[c] - line[c].size(), ' ');
      out += line[c];
    }
    out += '\n';
  }
  return out;
}

}  // namespace mpmcs
