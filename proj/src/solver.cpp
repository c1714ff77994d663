#include "mpmcs/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "mpmcs/errors.hpp"

namespace mpmcs {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unknown: return "unknown";
  }
  return "unknown";
}

SolveStatus status_from_string(const std::string& text) {
  if (text == "optimal") return SolveStatus::Optimal;
  if (text == "feasible") return SolveStatus::Feasible;
  if (text == "infeasible") return SolveStatus::Infeasible;
  if (text == "unknown") return SolveStatus::Unknown;
  throw ParseError("unknown solve status '" + text + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

struct ClauseDb {
  int num_vars = 0;
  std::vector<int> arena;
  struct Ref {
    std::uint32_t offset = 0;
    std::uint32_t length = 0;
  };
  std::vector<Ref> refs;
  std::vector<int> units;
  bool empty_clause = false;

  void add(const Clause& literals) {
    if (literals.empty()) {
      empty_clause = true;
      return;
    }
    if (literals.size() == 1) {
      units.push_back(literals[0]);
      return;
    }
    refs.push_back({static_cast<std::uint32_t>(arena.size()),
                    static_cast<std::uint32_t>(literals.size())});
    arena.insert(arena.end(), literals.begin(), literals.end());
  }
};

inline std::size_t lit_slot(int lit) {
  int v = std::abs(lit);
  return static_cast<std::size_t>(2 * v + (lit < 0 ? 1 : 0));
}

// Two-watched-literal unit propagation with a trail and decision levels.
// Each instance owns a mutable copy of the clause arena because watch
// maintenance permutes literals inside clauses.
class Propagator {
 public:
  explicit Propagator(const ClauseDb& db)
      : num_vars_(db.num_vars),
        arena_(db.arena),
        refs_(db.refs),
        values_(static_cast<std::size_t>(db.num_vars) + 1, 0),
        watches_(2 * (static_cast<std::size_t>(db.num_vars) + 1)) {
    root_ok_ = !db.empty_clause;
    for (std::size_t ci = 0; ci < refs_.size(); ++ci) {
      const Ref& ref = refs_[ci];
      watches_[lit_slot(arena_[ref.offset])].push_back(
          static_cast<std::uint32_t>(ci));
      watches_[lit_slot(arena_[ref.offset + 1])].push_back(
          static_cast<std::uint32_t>(ci));
    }
    if (root_ok_) {
      for (int u : db.units) {
        if (!enqueue(u)) {
          root_ok_ = false;
          break;
        }
      }
    }
    if (root_ok_) root_ok_ = propagate();
  }

  bool root_ok() const { return root_ok_; }
  int num_vars() const { return num_vars_; }

  std::int8_t value_var(int var) const { return values_[var]; }
  std::int8_t value_lit(int lit) const {
    std::int8_t v = values_[std::abs(lit)];
    return lit < 0 ? static_cast<std::int8_t>(-v) : v;
  }

  bool enqueue(int lit) {
    std::int8_t v = value_lit(lit);
    if (v > 0) return true;
    if (v < 0) return false;
    values_[std::abs(lit)] = lit > 0 ? 1 : -1;
    trail_.push_back(lit);
    return true;
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      int p = trail_[qhead_++];
      int falsified = -p;
      auto& ws = watches_[lit_slot(falsified)];
      std::size_t keep = 0;
      bool conflict = false;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        std::uint32_t ci = ws[i];
        const Ref& ref = refs_[ci];
        int* c = arena_.data() + ref.offset;
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (value_lit(c[0]) > 0) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::uint32_t k = 2; k < ref.length; ++k) {
          if (value_lit(c[k]) >= 0) {
            std::swap(c[1], c[k]);
            watches_[lit_slot(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        if (!enqueue(c[0])) {
          for (++i; i < ws.size(); ++i) ws[keep++] = ws[i];
          conflict = true;
          break;
        }
      }
      ws.resize(keep);
      if (conflict) return false;
    }
    return true;
  }

  void push_level() { limits_.push_back(trail_.size()); }

  void pop_level() {
    std::size_t limit = limits_.back();
    limits_.pop_back();
    while (trail_.size() > limit) {
      values_[std::abs(trail_.back())] = 0;
      trail_.pop_back();
    }
    qhead_ = limit;
  }

  void pop_all() {
    while (!limits_.empty()) pop_level();
  }

  std::size_t trail_size() const { return trail_.size(); }
  const std::vector<int>& trail() const { return trail_; }
  const std::vector<std::int8_t>& values() const { return values_; }
  bool complete() const {
    return trail_.size() == static_cast<std::size_t>(num_vars_);
  }

 private:
  using Ref = ClauseDb::Ref;

  int num_vars_;
  std::vector<int> arena_;
  std::vector<Ref> refs_;
  std::vector<std::int8_t> values_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<int> trail_;
  std::vector<std::size_t> limits_;
  std::size_t qhead_ = 0;
  bool root_ok_ = true;
};

// Soft structure folded onto variables: unit soft clauses become polarity
// costs, every other soft clause gets a fresh relaxation variable r with
// (clause | r) hard and cost on r true.
struct NormalizedInstance {
  ClauseDb db;
  int orig_vars = 0;
  int total_vars = 0;
  std::vector<std::int64_t> cost_true;   // by var
  std::vector<std::int64_t> cost_false;  // by var
  std::vector<char> occurs;              // var appears in some hard clause
  std::vector<int> weighted_vars;        // cost_true != cost_false, ascending
  std::int64_t base_min = 0;
  bool shaped = false;
  const WcnfInstance* original = nullptr;

  std::int64_t weight_of(int var) const {
    return std::llabs(cost_true[var] - cost_false[var]);
  }
  int cheap_lit(int var) const {
    return cost_true[var] <= cost_false[var] ? var : -var;
  }

  static NormalizedInstance build(const WcnfInstance& instance) {
    NormalizedInstance norm;
    norm.original = &instance;
    norm.orig_vars = instance.num_vars;
    norm.shaped = instance.mpmcs_shaped();

    int relax = 0;
    for (const SoftClause& s : instance.soft) {
      if (s.literals.size() != 1) ++relax;
    }
    norm.total_vars = instance.num_vars + relax;
    norm.db.num_vars = norm.total_vars;
    norm.cost_true.assign(static_cast<std::size_t>(norm.total_vars) + 1, 0);
    norm.cost_false.assign(static_cast<std::size_t>(norm.total_vars) + 1, 0);

    for (const Clause& c : instance.hard) norm.db.add(c);
    int next_relax = instance.num_vars;
    for (const SoftClause& s : instance.soft) {
      if (s.weight < 1) throw InvalidInput("soft weight must be positive");
      if (s.literals.size() == 1) {
        int lit = s.literals[0];
        int v = std::abs(lit);
        if (v < 1 || v > instance.num_vars) {
          throw InvalidInput("soft literal outside variable range");
        }
        if (lit > 0) {
          norm.cost_false[v] += s.weight;
        } else {
          norm.cost_true[v] += s.weight;
        }
      } else {
        int r = ++next_relax;
        Clause relaxed = s.literals;
        for (int lit : relaxed) {
          int v = std::abs(lit);
          if (v < 1 || v > instance.num_vars) {
            throw InvalidInput("soft literal outside variable range");
          }
        }
        relaxed.push_back(r);
        norm.db.add(relaxed);
        norm.cost_true[r] += s.weight;
      }
    }

    for (const Clause& c : instance.hard) {
      for (int lit : c) {
        int v = std::abs(lit);
        if (v < 1 || v > instance.num_vars) {
          throw InvalidInput("hard literal outside variable range");
        }
      }
    }

    norm.occurs.assign(static_cast<std::size_t>(norm.total_vars) + 1, 0);
    for (int lit : norm.db.arena) norm.occurs[std::abs(lit)] = 1;
    for (int lit : norm.db.units) norm.occurs[std::abs(lit)] = 1;

    for (int v = 1; v <= norm.total_vars; ++v) {
      norm.base_min += std::min(norm.cost_true[v], norm.cost_false[v]);
      if (norm.cost_true[v] != norm.cost_false[v]) {
        norm.weighted_vars.push_back(v);
      }
    }
    return norm;
  }
};

struct SearchConfig {
  bool weight_descending = false;
  bool costly_first = false;
};

class BranchBoundSearch {
 public:
  BranchBoundSearch(const NormalizedInstance& norm, SearchConfig config,
                    Clock::time_point deadline,
                    const std::atomic<bool>& stop,
                    std::optional<std::int64_t> cost_bound)
      : norm_(norm),
        config_(config),
        deadline_(deadline),
        stop_(stop),
        cost_bound_(cost_bound),
        prop_(norm.db),
        scratch_(norm.db) {}

  MaxSatOutcome run() {
    MaxSatOutcome out;
    if (!prop_.root_ok()) {
      out.status = SolveStatus::Infeasible;
      return out;
    }

    // Variables outside every hard clause are free: their cheaper polarity
    // is optimal, so pin them up front.
    for (int v = 1; v <= norm_.total_vars; ++v) {
      if (!norm_.occurs[v] && prop_.value_var(v) == 0) {
        prop_.enqueue(norm_.cheap_lit(v));
      }
    }

    build_order();
    greedy_incumbent();
    if (!halted()) dfs(0);

    if (cancelled_) {
      out.status = SolveStatus::Unknown;
      return out;
    }
    if (out_of_time_) {
      out.status =
          incumbent_.has ? SolveStatus::Feasible : SolveStatus::Unknown;
    } else if (incumbent_.has) {
      // With a cost bound the search only proves optimality for incumbents
      // inside the bound; anything above it may have unexplored rivals.
      bool proven = !cost_bound_ || incumbent_.cost <= *cost_bound_;
      out.status = proven ? SolveStatus::Optimal : SolveStatus::Feasible;
    } else {
      out.status =
          cost_bound_ ? SolveStatus::Unknown : SolveStatus::Infeasible;
    }

    if (incumbent_.has &&
        (out.status == SolveStatus::Optimal ||
         out.status == SolveStatus::Feasible)) {
      std::vector<bool> model(static_cast<std::size_t>(norm_.orig_vars) + 1,
                              false);
      for (int v = 1; v <= norm_.orig_vars; ++v) {
        model[v] = incumbent_.values[v] > 0;
      }
      out.model = std::move(model);
      out.cost = incumbent_.cost;
      out.incumbent_costs = trace_;
    }
    return out;
  }

 private:
  struct Incumbent {
    bool has = false;
    std::int64_t cost = 0;
    std::vector<std::int8_t> values;
    std::vector<int> falsified;
  };

  void build_order() {
    order_ = norm_.weighted_vars;
    if (config_.weight_descending) {
      std::stable_sort(order_.begin(), order_.end(), [this](int a, int b) {
        return norm_.weight_of(a) > norm_.weight_of(b);
      });
    }
    std::vector<char> in_order(static_cast<std::size_t>(norm_.total_vars) + 1, 0);
    for (int v : order_) in_order[v] = 1;
    for (int v = 1; v <= norm_.total_vars; ++v) {
      if (!in_order[v]) order_.push_back(v);
    }
  }

  bool poll() {
    if (stop_.load(std::memory_order_relaxed)) {
      cancelled_ = true;
      return true;
    }
    if (Clock::now() >= deadline_) {
      out_of_time_ = true;
      return true;
    }
    return false;
  }

  bool halted() const { return cancelled_ || out_of_time_; }

  std::int64_t bound() const {
    std::int64_t b = incumbent_.has ? incumbent_.cost
                                    : std::numeric_limits<std::int64_t>::max();
    if (cost_bound_ && *cost_bound_ < b) b = *cost_bound_;
    return b;
  }

  void account() {
    const auto& trail = prop_.trail();
    while (accounted_ < trail.size()) {
      int lit = trail[accounted_++];
      int v = std::abs(lit);
      std::int64_t c = lit > 0 ? norm_.cost_true[v] : norm_.cost_false[v];
      extra_ += c - std::min(norm_.cost_true[v], norm_.cost_false[v]);
    }
  }

  // Exact objective of a complete assignment, from the original soft list.
  std::int64_t true_cost(const std::vector<std::int8_t>& values) const {
    std::int64_t cost = 0;
    for (const SoftClause& s : norm_.original->soft) {
      bool satisfied = false;
      for (int lit : s.literals) {
        std::int8_t v = values[std::abs(lit)];
        if ((lit > 0 && v > 0) || (lit < 0 && v < 0)) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied) cost += s.weight;
    }
    return cost;
  }

  std::vector<int> falsified_of(const std::vector<std::int8_t>& values) const {
    std::vector<int> out;
    for (int v : norm_.weighted_vars) {
      if (v > norm_.orig_vars) continue;
      std::int64_t chosen =
          values[v] > 0 ? norm_.cost_true[v] : norm_.cost_false[v];
      if (chosen > std::min(norm_.cost_true[v], norm_.cost_false[v])) {
        out.push_back(v);
      }
    }
    return out;
  }

  // Scratch run: decide `decisions` on top of the root state and propagate.
  // Returns +1 when every variable ends assigned without conflict, -1 on
  // conflict, 0 when propagation stalls early.
  int scratch_check(const std::vector<int>& decisions,
                    std::vector<std::int8_t>* values_out) {
    scratch_.pop_all();
    scratch_.push_level();
    for (int lit : decisions) {
      if (!scratch_.enqueue(lit)) return -1;
    }
    if (!scratch_.propagate()) return -1;
    if (!scratch_.complete()) return 0;
    if (values_out) *values_out = scratch_.values();
    return 1;
  }

  // One removal pass over the falsified variables, costliest first. Flipping
  // a variable to its cheap polarity keeps every previously failed removal
  // impossible (the candidate set only shrinks), so a single pass reaches a
  // state where no single flip helps.
  void shrink(std::vector<std::int8_t>& values, std::int64_t& cost) {
    std::vector<int> falsified = falsified_of(values);
    std::sort(falsified.begin(), falsified.end(), [this](int a, int b) {
      std::int64_t wa = norm_.weight_of(a);
      std::int64_t wb = norm_.weight_of(b);
      return wa != wb ? wa > wb : a < b;
    });
    for (int v : falsified) {
      if (poll()) return;
      if (norm_.shaped) {
        std::vector<int> decisions;
        decisions.reserve(norm_.weighted_vars.size());
        for (int w : norm_.weighted_vars) {
          int lit = values[w] > 0 ? w : -w;
          if (w == v) lit = norm_.cheap_lit(w);
          decisions.push_back(lit);
        }
        std::vector<std::int8_t> candidate;
        if (scratch_check(decisions, &candidate) == 1) {
          values = std::move(candidate);
          cost = true_cost(values);
        }
      } else {
        std::vector<std::int8_t> candidate = values;
        candidate[v] = static_cast<std::int8_t>(-candidate[v]);
        if (satisfies_all(candidate)) {
          std::int64_t c = true_cost(candidate);
          if (c < cost) {
            values = std::move(candidate);
            cost = c;
          }
        }
      }
    }
  }

  bool satisfies_all(const std::vector<std::int8_t>& values) const {
    auto lit_true = [&values](int lit) {
      std::int8_t v = values[std::abs(lit)];
      return (lit > 0 && v > 0) || (lit < 0 && v < 0);
    };
    for (const Clause& c : norm_.original->hard) {
      bool sat = false;
      for (int lit : c) {
        if (lit_true(lit)) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    return true;
  }

  static bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

  void offer(std::vector<std::int8_t> values, std::int64_t cost) {
    shrink(values, cost);
    std::vector<int> falsified = falsified_of(values);
    if (!incumbent_.has || cost < incumbent_.cost ||
        (cost == incumbent_.cost && lex_less(falsified, incumbent_.falsified))) {
      incumbent_.has = true;
      incumbent_.cost = cost;
      incumbent_.values = std::move(values);
      incumbent_.falsified = std::move(falsified);
      trace_.push_back(cost);
    }
  }

  // Falsify weighted variables cheapest-first until the hard clauses accept
  // the assignment; the first accepting prefix seeds the incumbent.
  void greedy_incumbent() {
    if (norm_.weighted_vars.empty()) {
      std::vector<int> decisions;
      std::vector<std::int8_t> values;
      if (scratch_check(decisions, &values) == 1) {
        std::int64_t cost = true_cost(values);
        offer(std::move(values), cost);
      }
      return;
    }
    std::vector<int> by_weight = norm_.weighted_vars;
    std::stable_sort(by_weight.begin(), by_weight.end(), [this](int a, int b) {
      return norm_.weight_of(a) < norm_.weight_of(b);
    });
    for (std::size_t prefix = 0; prefix <= by_weight.size(); ++prefix) {
      if (poll()) return;
      std::vector<int> decisions;
      decisions.reserve(by_weight.size());
      for (std::size_t i = 0; i < by_weight.size(); ++i) {
        int v = by_weight[i];
        int cheap = norm_.cheap_lit(v);
        decisions.push_back(i < prefix ? -cheap : cheap);
      }
      std::vector<std::int8_t> values;
      int verdict = scratch_check(decisions, &values);
      if (verdict == 1) {
        std::int64_t cost = true_cost(values);
        offer(std::move(values), cost);
        return;
      }
      if (verdict == 0) return;  // stalled; leave seeding to the search
    }
  }

  void dfs(std::size_t order_pos) {
    if ((++nodes_ & 63u) == 0 && poll()) return;
    if (halted()) return;
    if (!prop_.propagate()) return;
    account();
    if (norm_.base_min + extra_ > bound()) return;

    std::size_t i = order_pos;
    while (i < order_.size() && prop_.value_var(order_[i]) != 0) ++i;
    if (i == order_.size()) {
      offer(prop_.values(), true_cost(prop_.values()));
      return;
    }

    int v = order_[i];
    int cheap = norm_.cheap_lit(v);
    int first = config_.costly_first ? -cheap : cheap;
    for (int round = 0; round < 2; ++round) {
      int branch = round == 0 ? first : -first;
      std::int64_t saved_extra = extra_;
      prop_.push_level();
      bool ok = prop_.enqueue(branch);
      assert(ok);
      (void)ok;
      dfs(i + 1);
      prop_.pop_level();
      accounted_ = prop_.trail_size();
      extra_ = saved_extra;
      if (halted()) return;
    }
  }

  const NormalizedInstance& norm_;
  SearchConfig config_;
  Clock::time_point deadline_;
  const std::atomic<bool>& stop_;
  std::optional<std::int64_t> cost_bound_;
  Propagator prop_;
  Propagator scratch_;
  std::vector<int> order_;
  Incumbent incumbent_;
  std::vector<std::int64_t> trace_;
  std::int64_t extra_ = 0;
  std::size_t accounted_ = 0;
  std::uint64_t nodes_ = 0;
  bool out_of_time_ = false;
  bool cancelled_ = false;
};

class BranchBoundStrategy final : public Strategy {
 public:
  BranchBoundStrategy(std::string id, SearchConfig config)
      : id_(std::move(id)), config_(config) {}

  std::string id() const override { return id_; }

  MaxSatOutcome run(const WcnfInstance& instance, const SolveBudget& budget,
                    const std::atomic<bool>& stop) override {
    auto start = Clock::now();
    NormalizedInstance norm = NormalizedInstance::build(instance);
    BranchBoundSearch search(norm, config_, start + budget.wall_time, stop,
                             budget.cost_bound);
    MaxSatOutcome out = search.run();
    out.strategy_id = id_;
    out.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        Clock::now() - start);
    return out;
  }

 private:
  std::string id_;
  SearchConfig config_;
};

void recheck_model(const WcnfInstance& instance, const MaxSatOutcome& outcome) {
  if (!outcome.model) return;
  const std::vector<bool>& model = *outcome.model;
  if (model.size() != static_cast<std::size_t>(instance.num_vars) + 1) {
    throw Error("solver returned a model of the wrong size");
  }
  auto lit_true = [&model](int lit) {
    bool v = model[std::abs(lit)];
    return lit > 0 ? v : !v;
  };
  for (const Clause& c : instance.hard) {
    bool sat = false;
    for (int lit : c) {
      if (lit_true(lit)) {
        sat = true;
        break;
      }
    }
    if (!sat) throw Error("solver returned a model violating a hard clause");
  }
  std::int64_t cost = 0;
  for (const SoftClause& s : instance.soft) {
    bool sat = false;
    for (int lit : s.literals) {
      if (lit_true(lit)) {
        sat = true;
        break;
      }
    }
    if (!sat) cost += s.weight;
  }
  if (!outcome.cost || *outcome.cost != cost) {
    throw Error("solver cost disagrees with the recomputed soft weight sum");
  }
}

void validate_budget(const SolveBudget& budget) {
  if (budget.wall_time.count() <= 0) {
    throw InvalidInput("budget must be positive");
  }
  if (budget.cost_bound && *budget.cost_bound < 0) {
    throw InvalidInput("cost bound must be non-negative");
  }
}

}  // namespace

std::unique_ptr<Strategy> make_strategy(const std::string& name) {
  if (name == "bnb-lex") {
    return std::make_unique<BranchBoundStrategy>(
        name, SearchConfig{false, false});
  }
  if (name == "bnb-weight") {
    return std::make_unique<BranchBoundStrategy>(
        name, SearchConfig{true, true});
  }
  throw InvalidInput("unknown strategy '" + name + "'");
}

std::vector<std::string> default_strategy_names() {
  return {"bnb-lex", "bnb-weight"};
}

std::vector<std::unique_ptr<Strategy>> default_strategies() {
  std::vector<std::unique_ptr<Strategy>> out;
  for (const std::string& name : default_strategy_names()) {
    out.push_back(make_strategy(name));
  }
  return out;
}

MaxSatOutcome solve(const WcnfInstance& instance, Strategy& strategy,
                    const SolveBudget& budget) {
  validate_budget(budget);
  std::atomic<bool> stop{false};
  MaxSatOutcome outcome = strategy.run(instance, budget, stop);
  recheck_model(instance, outcome);
  return outcome;
}

MaxSatOutcome portfolio(const WcnfInstance& instance,
                        const std::vector<std::unique_ptr<Strategy>>& strategies,
                        const SolveBudget& budget) {
  validate_budget(budget);
  if (strategies.empty()) throw InvalidInput("portfolio needs a strategy");

  std::atomic<bool> stop{false};
  std::mutex mutex;
  std::vector<std::optional<MaxSatOutcome>> results(strategies.size());
  std::vector<std::size_t> finish_order;
  long winner = -1;

  std::vector<std::thread> threads;
  threads.reserve(strategies.size());
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    threads.emplace_back([&, i] {
      MaxSatOutcome out = strategies[i]->run(instance, budget, stop);
      std::lock_guard<std::mutex> lock(mutex);
      results[i] = std::move(out);
      finish_order.push_back(i);
      if (winner < 0 && (results[i]->status == SolveStatus::Optimal ||
                         results[i]->status == SolveStatus::Infeasible)) {
        winner = static_cast<long>(i);
        stop.store(true, std::memory_order_relaxed);
      }
    });
  }
  for (std::thread& t : threads) t.join();

  MaxSatOutcome chosen;
  if (winner >= 0) {
    chosen = std::move(*results[static_cast<std::size_t>(winner)]);
  } else {
    long best = -1;
    for (std::size_t idx : finish_order) {
      if (!results[idx] || results[idx]->status != SolveStatus::Feasible) {
        continue;
      }
      if (best < 0 || *results[idx]->cost <
                          *results[static_cast<std::size_t>(best)]->cost) {
        best = static_cast<long>(idx);
      }
    }
    if (best >= 0) {
      chosen = std::move(*results[static_cast<std::size_t>(best)]);
    } else {
      chosen.status = SolveStatus::Unknown;
      chosen.strategy_id = "none";
      chosen.elapsed = budget.wall_time;
    }
  }
  recheck_model(instance, chosen);
  return chosen;
}

MpmcsResult decode(const MaxSatOutcome& outcome, const VarMap& varmap,
                   const FaultTree& tree) {
  if (!outcome.model || !outcome.cost) {
    throw InvalidInput("outcome carries no model to decode");
  }
  const std::vector<bool>& model = *outcome.model;

  MpmcsResult result;
  for (const auto& [id, var] : varmap.event_to_var) {
    if (var < 1 || static_cast<std::size_t>(var) >= model.size()) {
      throw InvalidInput("variable map does not match the model");
    }
    if (!model[var]) result.cut_set.insert(id);
  }
  result.size = static_cast<int>(result.cut_set.size());
  result.int_log_cost = *outcome.cost;
  result.log_cost =
      static_cast<double>(result.int_log_cost) / std::pow(10.0, varmap.shift);

  if (result.cut_set.empty()) {
    throw Error("model decodes to an empty cut set");
  }
  result.probability = joint_probability(tree, result.cut_set);

  if (outcome.status == SolveStatus::Optimal) {
    if (!is_minimal_cut_set(tree, result.cut_set)) {
      throw Error("optimal model does not decode to a minimal cut set");
    }
  } else if (!is_cut_set(tree, result.cut_set)) {
    throw Error("model does not decode to a cut set");
  }
  return result;
}

std::string solution_to_json(const MaxSatOutcome& outcome,
                             const MpmcsResult* result, const VarMap& varmap) {
  nlohmann::json doc;
  doc["status"] = to_string(outcome.status);
  doc["strategy"] = outcome.strategy_id;
  doc["time_ms"] = outcome.elapsed.count();
  doc["shift"] = varmap.shift;
  doc["logBase"] = varmap.log_base == 10.0 ? "10" : "e";
  if (outcome.cost) {
    doc["cost"] = *outcome.cost;
    doc["intLogCost"] = *outcome.cost;
    doc["logCost"] =
        static_cast<double>(*outcome.cost) / std::pow(10.0, varmap.shift);
  } else {
    doc["cost"] = nullptr;
    doc["intLogCost"] = nullptr;
    doc["logCost"] = nullptr;
  }
  if (result) {
    doc["size"] = result->size;
    doc["probability"] = result->probability;
    nlohmann::json events = nlohmann::json::array();
    for (NodeId id : result->cut_set) events.push_back(id);
    doc["events"] = std::move(events);
  } else {
    doc["size"] = nullptr;
    doc["probability"] = nullptr;
    doc["events"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

LoadedSolution solution_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("solution JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("status") || !doc["status"].is_string()) {
    throw ParseError("solution JSON: missing string field 'status'");
  }
  LoadedSolution out;
  out.status = status_from_string(doc["status"].get<std::string>());
  if (doc.contains("strategy") && doc["strategy"].is_string()) {
    out.strategy = doc["strategy"].get<std::string>();
  }
  if (doc.contains("intLogCost") && doc["intLogCost"].is_number()) {
    out.cost = doc["intLogCost"].get<std::int64_t>();
  } else if (doc.contains("cost") && doc["cost"].is_number()) {
    out.cost = doc["cost"].get<std::int64_t>();
  }
  if (doc.contains("logCost") && doc["logCost"].is_number()) {
    out.log_cost = doc["logCost"].get<double>();
  }
  if (doc.contains("probability") && doc["probability"].is_number()) {
    out.probability = doc["probability"].get<double>();
  }
  if (doc.contains("shift") && doc["shift"].is_number_integer()) {
    out.shift = doc["shift"].get<int>();
  }
  if (doc.contains("logBase") && doc["logBase"].is_string()) {
    std::string base = doc["logBase"].get<std::string>();
    if (base == "e") {
      out.log_base = std::numbers::e;
    } else if (base == "10") {
      out.log_base = 10.0;
    } else {
      throw ParseError("solution JSON: logBase must be \"e\" or \"10\"");
    }
  }
  if (doc.contains("events") && doc["events"].is_array()) {
    CutSet events;
    for (const nlohmann::json& e : doc["events"]) {
      if (!e.is_number_unsigned()) {
        throw ParseError("solution JSON: events must be non-negative integers");
      }
      events.insert(static_cast<NodeId>(e.get<std::uint64_t>()));
    }
    out.events = std::move(events);
  }
  return out;
}

}  // namespace mpmcs
