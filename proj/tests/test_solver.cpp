#include <doctest.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mpmcs/encoder.hpp"
#include "mpmcs/errors.hpp"
#include "mpmcs/solver.hpp"
#include "support/fixtures.hpp"

using namespace mpmcs;
using namespace std::chrono_literals;

namespace {

// Returns a canned outcome after `delay`, or as soon as `stop` flips.
class ScriptedStrategy : public Strategy {
 public:
  ScriptedStrategy(std::string id, MaxSatOutcome outcome,
                   std::chrono::milliseconds delay)
      : id_(std::move(id)), outcome_(std::move(outcome)), delay_(delay) {}

  std::string id() const override { return id_; }

  MaxSatOutcome run(const WcnfInstance&, const SolveBudget&,
                    const std::atomic<bool>& stop) override {
    const auto deadline = std::chrono::steady_clock::now() + delay_;
    while (std::chrono::steady_clock::now() < deadline) {
      if (stop.load()) {
        saw_stop.store(true);
        break;
      }
      std::this_thread::sleep_for(1ms);
    }
    MaxSatOutcome out = outcome_;
    out.strategy_id = id_;
    return out;
  }

  std::atomic<bool> saw_stop{false};

 private:
  std::string id_;
  MaxSatOutcome outcome_;
  std::chrono::milliseconds delay_;
};

MaxSatOutcome canned(SolveStatus status, std::optional<std::vector<bool>> model,
                     std::optional<std::int64_t> cost) {
  MaxSatOutcome out;
  out.status = status;
  out.model = std::move(model);
  out.cost = cost;
  return out;
}

std::set<int> falsified_events(const MaxSatOutcome& outcome, int num_events) {
  REQUIRE(outcome.model.has_value());
  std::set<int> vars;
  for (int v = 1; v <= num_events; ++v) {
    if (!(*outcome.model)[static_cast<std::size_t>(v)]) vars.insert(v);
  }
  return vars;
}

bool non_increasing(const std::vector<std::int64_t>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] > xs[i - 1]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("status strings round-trip") {
  for (SolveStatus s : {SolveStatus::Optimal, SolveStatus::Feasible,
                        SolveStatus::Infeasible, SolveStatus::Unknown}) {
    CHECK(status_from_string(to_string(s)) == s);
  }
  CHECK(std::string(to_string(SolveStatus::Optimal)) == "optimal");
  CHECK_THROWS_AS(status_from_string("bogus"), ParseError);
}

TEST_CASE("strategy registry") {
  CHECK(default_strategy_names() ==
        std::vector<std::string>{"bnb-lex", "bnb-weight"});
  const auto strategies = default_strategies();
  REQUIRE(strategies.size() == 2);
  CHECK(strategies[0]->id() == "bnb-lex");
  CHECK(strategies[1]->id() == "bnb-weight");
  CHECK_THROWS_AS(make_strategy("bnb-quantum"), InvalidInput);
}

TEST_CASE("budget validation") {
  WcnfInstance instance;
  instance.num_vars = 1;
  instance.soft = {SoftClause{1, {1}}};
  auto strategy = make_strategy("bnb-lex");

  CHECK_THROWS_AS(solve(instance, *strategy, SolveBudget{0ms, {}}),
                  InvalidInput);
  CHECK_THROWS_AS(solve(instance, *strategy, SolveBudget{-5ms, {}}),
                  InvalidInput);
  CHECK_THROWS_AS(solve(instance, *strategy, SolveBudget{1s, -1}),
                  InvalidInput);
  CHECK_THROWS_AS(portfolio(instance, {}, SolveBudget{1s, {}}), InvalidInput);
}

TEST_CASE("trivial instances") {
  auto strategy = make_strategy("bnb-lex");
  const SolveBudget budget{5s, {}};

  SUBCASE("hard unit forces the soft cost") {
    WcnfInstance instance;
    instance.num_vars = 1;
    instance.top = 100;
    instance.hard = {{-1}};
    instance.soft = {SoftClause{5, {1}}};
    const MaxSatOutcome out = solve(instance, *strategy, budget);
    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.cost == 5);
    REQUIRE(out.model.has_value());
    CHECK_FALSE((*out.model)[1]);
  }

  SUBCASE("free soft variable keeps its cheap polarity") {
    WcnfInstance instance;
    instance.num_vars = 1;
    instance.top = 100;
    instance.soft = {SoftClause{5, {1}}};
    const MaxSatOutcome out = solve(instance, *strategy, budget);
    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.cost == 0);
    REQUIRE(out.model.has_value());
    CHECK((*out.model)[1]);
  }

  SUBCASE("contradictory hard units are infeasible") {
    WcnfInstance instance;
    instance.num_vars = 1;
    instance.top = 100;
    instance.hard = {{1}, {-1}};
    instance.soft = {SoftClause{5, {1}}};
    const MaxSatOutcome out = solve(instance, *strategy, budget);
    CHECK(out.status == SolveStatus::Infeasible);
    CHECK_FALSE(out.model.has_value());
    CHECK_FALSE(out.cost.has_value());
  }

  SUBCASE("empty hard clause is infeasible") {
    WcnfInstance instance;
    instance.num_vars = 2;
    instance.top = 100;
    instance.hard = {{}};
    const MaxSatOutcome out = solve(instance, *strategy, budget);
    CHECK(out.status == SolveStatus::Infeasible);
  }
}

TEST_CASE("non-unit soft clauses are handled through relaxation") {
  // x1 | x2 must hold; falsifying (~x1 | ~x2) costs 4, x1 costs 3, x2 costs 5.
  WcnfInstance instance;
  instance.num_vars = 2;
  instance.top = 1000;
  instance.hard = {{1, 2}};
  instance.soft = {SoftClause{4, {-1, -2}}, SoftClause{3, {1}},
                   SoftClause{5, {2}}};
  CHECK_FALSE(instance.mpmcs_shaped());

  for (const std::string& name : default_strategy_names()) {
    CAPTURE(name);
    auto strategy = make_strategy(name);
    const MaxSatOutcome out = solve(instance, *strategy, SolveBudget{5s, {}});
    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.cost == 3);  // x1 false, x2 true
    REQUIRE(out.model.has_value());
    CHECK(out.model->size() == 3);  // relaxation variables stay internal
    CHECK_FALSE((*out.model)[1]);
    CHECK((*out.model)[2]);
  }
}

TEST_CASE("cost bound semantics") {
  // Hard units force x1 true and x2 false; the only model costs 2.
  WcnfInstance instance;
  instance.num_vars = 2;
  instance.top = 1000;
  instance.hard = {{1}, {-2}};
  instance.soft = {SoftClause{1, {1}}, SoftClause{2, {2}}};
  auto strategy = make_strategy("bnb-lex");

  SUBCASE("bound at the optimum still proves optimality") {
    const MaxSatOutcome out = solve(instance, *strategy, SolveBudget{5s, 2});
    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.cost == 2);
  }

  SUBCASE("bound below the optimum yields Unknown when nothing is found") {
    const MaxSatOutcome out = solve(instance, *strategy, SolveBudget{5s, 1});
    CHECK(out.status == SolveStatus::Unknown);
    CHECK_FALSE(out.model.has_value());
  }

  SUBCASE("an incumbent above the bound is reported Feasible") {
    // The greedy pass finds the cost-3 optimum of this instance, but the
    // bound of 2 means the search cannot certify it.
    const EncodeResult enc = encode(fixtures::fps_tree());
    const MaxSatOutcome out =
        solve(enc.instance, *strategy, SolveBudget{5s, 2});
    CHECK(out.status == SolveStatus::Feasible);
    CHECK(out.cost == 3);
  }
}

TEST_CASE("encoded seven-event tree solves to the heaviest cut set") {
  const FaultTree tree = fixtures::fps_tree();
  const EncodeResult enc = encode(tree);
  REQUIRE(enc.varmap.shift == 1);

  for (const std::string& name : default_strategy_names()) {
    CAPTURE(name);
    auto strategy = make_strategy(name);
    const MaxSatOutcome out = solve(enc.instance, *strategy, SolveBudget{30s, {}});

    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.cost == 3);
    CHECK(out.strategy_id == name);
    CHECK(falsified_events(out, 7) == std::set<int>{1, 2});
    CHECK_FALSE(out.incumbent_costs.empty());
    CHECK(non_increasing(out.incumbent_costs));
    CHECK(out.incumbent_costs.back() == 3);

    const MpmcsResult result = decode(out, enc.varmap, tree);
    CHECK(result.cut_set == CutSet{1, 2});
    CHECK(result.size == 2);
    CHECK(result.int_log_cost == 3);
    CHECK(result.log_cost == doctest::Approx(0.3));
    CHECK(result.probability == doctest::Approx(0.72));
  }
}

TEST_CASE("equal-cost optima resolve to the lexicographically smallest set") {
  // OR(AND(1,2), AND(3,4)) with identical probabilities: {1,2} and {3,4}
  // cost the same, so every strategy must report {1,2}.
  std::vector<Node> nodes;
  for (NodeId id = 1; id <= 4; ++id) nodes.push_back(Node{id, BasicEvent{0.5}});
  nodes.push_back(Node{5, Gate{GateOp::And, {1, 2}}});
  nodes.push_back(Node{6, Gate{GateOp::And, {3, 4}}});
  nodes.push_back(Node{7, Gate{GateOp::Or, {5, 6}}});
  const FaultTree tree(std::move(nodes), 7);

  const EncodeResult enc = encode(tree);
  for (const std::string& name : default_strategy_names()) {
    CAPTURE(name);
    auto strategy = make_strategy(name);
    const MaxSatOutcome out = solve(enc.instance, *strategy, SolveBudget{30s, {}});
    REQUIRE(out.status == SolveStatus::Optimal);
    const MpmcsResult result = decode(out, enc.varmap, tree);
    CHECK(result.cut_set == CutSet{1, 2});
  }
}

TEST_CASE("solve rechecks the returned model") {
  WcnfInstance instance;
  instance.num_vars = 1;
  instance.top = 100;
  instance.hard = {{1}};
  instance.soft = {SoftClause{3, {1}}};

  SUBCASE("claimed cost must match the model") {
    ScriptedStrategy liar("liar",
                          canned(SolveStatus::Optimal,
                                 std::vector<bool>{false, true}, 3),
                          0ms);
    CHECK_THROWS_AS(solve(instance, liar, SolveBudget{1s, {}}), Error);
  }

  SUBCASE("model must satisfy the hard clauses") {
    ScriptedStrategy liar("liar",
                          canned(SolveStatus::Optimal,
                                 std::vector<bool>{false, false}, 3),
                          0ms);
    CHECK_THROWS_AS(solve(instance, liar, SolveBudget{1s, {}}), Error);
  }

  SUBCASE("an honest outcome passes") {
    ScriptedStrategy honest("honest",
                            canned(SolveStatus::Optimal,
                                   std::vector<bool>{false, true}, 0),
                            0ms);
    const MaxSatOutcome out = solve(instance, honest, SolveBudget{1s, {}});
    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.strategy_id == "honest");
  }
}

TEST_CASE("portfolio races strategies") {
  WcnfInstance instance;
  instance.num_vars = 1;
  instance.top = 100;
  instance.hard = {{1}};
  instance.soft = {SoftClause{3, {1}}};
  const std::vector<bool> good_model{false, true};

  SUBCASE("first conclusive finish cancels the rest") {
    std::vector<std::unique_ptr<Strategy>> strategies;
    strategies.push_back(std::make_unique<ScriptedStrategy>(
        "fast", canned(SolveStatus::Optimal, good_model, 0), 10ms));
    strategies.push_back(std::make_unique<ScriptedStrategy>(
        "slow", canned(SolveStatus::Unknown, std::nullopt, std::nullopt),
        10s));
    auto* slow = static_cast<ScriptedStrategy*>(strategies[1].get());

    const auto start = std::chrono::steady_clock::now();
    const MaxSatOutcome out = portfolio(instance, strategies, SolveBudget{30s, {}});
    const auto wall = std::chrono::steady_clock::now() - start;

    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.strategy_id == "fast");
    CHECK(out.cost == 0);
    CHECK(slow->saw_stop.load());
    CHECK(wall < 5s);  // nowhere near the blocker's 10s script
  }

  SUBCASE("cheapest feasible result wins when nothing concludes") {
    WcnfInstance pick;
    pick.num_vars = 2;
    pick.top = 100;
    pick.hard = {{1, 2}};
    pick.soft = {SoftClause{3, {1}}, SoftClause{5, {2}}};

    std::vector<std::unique_ptr<Strategy>> strategies;
    strategies.push_back(std::make_unique<ScriptedStrategy>(
        "pricey", canned(SolveStatus::Feasible,
                         std::vector<bool>{false, true, false}, 5),
        1ms));
    strategies.push_back(std::make_unique<ScriptedStrategy>(
        "thrifty", canned(SolveStatus::Feasible,
                          std::vector<bool>{false, false, true}, 3),
        50ms));

    const MaxSatOutcome out = portfolio(pick, strategies, SolveBudget{30s, {}});
    CHECK(out.status == SolveStatus::Feasible);
    CHECK(out.strategy_id == "thrifty");
    CHECK(out.cost == 3);
  }

  SUBCASE("all-unknown reports no winner") {
    std::vector<std::unique_ptr<Strategy>> strategies;
    strategies.push_back(std::make_unique<ScriptedStrategy>(
        "a", canned(SolveStatus::Unknown, std::nullopt, std::nullopt), 1ms));
    strategies.push_back(std::make_unique<ScriptedStrategy>(
        "b", canned(SolveStatus::Unknown, std::nullopt, std::nullopt), 1ms));
    const MaxSatOutcome out = portfolio(instance, strategies, SolveBudget{2s, {}});
    CHECK(out.status == SolveStatus::Unknown);
    CHECK(out.strategy_id == "none");
    CHECK_FALSE(out.model.has_value());
  }

  SUBCASE("default portfolio agrees with the single strategies") {
    const EncodeResult enc = encode(fixtures::fps_tree());
    const MaxSatOutcome out =
        portfolio(enc.instance, default_strategies(), SolveBudget{30s, {}});
    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.cost == 3);
    CHECK((out.strategy_id == "bnb-lex" || out.strategy_id == "bnb-weight"));
    CHECK(falsified_events(out, 7) == std::set<int>{1, 2});
  }
}

TEST_CASE("decode rejects outcomes it cannot interpret") {
  const FaultTree tree = fixtures::and_pair(0.5, 0.5);
  const EncodeResult enc = encode(tree);

  SUBCASE("no model") {
    MaxSatOutcome out;
    out.status = SolveStatus::Infeasible;
    CHECK_THROWS_AS(decode(out, enc.varmap, tree), InvalidInput);
  }

  SUBCASE("model smaller than the variable map") {
    MaxSatOutcome out = canned(SolveStatus::Optimal, std::vector<bool>{false}, 0);
    CHECK_THROWS_AS(decode(out, enc.varmap, tree), InvalidInput);
  }

  SUBCASE("all-true model decodes to an empty cut set") {
    MaxSatOutcome out =
        canned(SolveStatus::Feasible, std::vector<bool>(4, true), 0);
    CHECK_THROWS_AS(decode(out, enc.varmap, tree), Error);
  }

  SUBCASE("falsified set that is not a cut set") {
    // Only event 1 falsified: AND(1,2) needs both.
    std::vector<bool> model{false, false, true, true};
    MaxSatOutcome out = canned(SolveStatus::Feasible, model, 1);
    CHECK_THROWS_AS(decode(out, enc.varmap, tree), Error);
  }
}

TEST_CASE("solution JSON carries the decoded result") {
  const FaultTree tree = fixtures::fps_tree();
  const EncodeResult enc = encode(tree);
  const MaxSatOutcome out =
      portfolio(enc.instance, default_strategies(), SolveBudget{30s, {}});
  REQUIRE(out.status == SolveStatus::Optimal);
  const MpmcsResult result = decode(out, enc.varmap, tree);

  const std::string text = solution_to_json(out, &result, enc.varmap);

  SUBCASE("keys and values") {
    const nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j.at("status") == "optimal");
    CHECK(j.at("cost") == 3);
    CHECK(j.at("intLogCost") == 3);
    CHECK(j.at("size") == 2);
    CHECK(j.at("events") == nlohmann::json::array({1, 2}));
    CHECK(j.at("logCost").get<double>() == doctest::Approx(0.3));
    CHECK(j.at("probability").get<double>() == doctest::Approx(0.72));
    CHECK(j.at("shift") == 1);
    CHECK(j.at("logBase") == "e");
    CHECK(j.at("time_ms").is_number());
    CHECK(j.at("strategy").is_string());
  }

  SUBCASE("round-trips through solution_from_json") {
    const LoadedSolution loaded = solution_from_json(text);
    CHECK(loaded.status == SolveStatus::Optimal);
    CHECK(loaded.cost == 3);
    REQUIRE(loaded.events.has_value());
    CHECK(*loaded.events == CutSet{1, 2});
    CHECK(loaded.probability == doctest::Approx(0.72));
    CHECK(loaded.log_cost == doctest::Approx(0.3));
    CHECK(loaded.shift == 1);
    REQUIRE(loaded.log_base.has_value());
    CHECK(*loaded.log_base == doctest::Approx(std::exp(1.0)));
  }

  SUBCASE("non-model statuses serialize nulls") {
    MaxSatOutcome unknown;
    unknown.status = SolveStatus::Unknown;
    unknown.strategy_id = "none";
    const std::string utext = solution_to_json(unknown, nullptr, enc.varmap);
    const nlohmann::json j = nlohmann::json::parse(utext);
    CHECK(j.at("status") == "unknown");
    CHECK(j.at("cost").is_null());
    CHECK(j.at("events").is_null());
    CHECK(j.at("probability").is_null());

    const LoadedSolution loaded = solution_from_json(utext);
    CHECK(loaded.status == SolveStatus::Unknown);
    CHECK_FALSE(loaded.cost.has_value());
    CHECK_FALSE(loaded.events.has_value());
  }

  SUBCASE("malformed solution files are rejected") {
    CHECK_THROWS_AS(solution_from_json("not json"), ParseError);
    CHECK_THROWS_AS(solution_from_json("{}"), ParseError);
    CHECK_THROWS_AS(solution_from_json(R"({"status":"sideways"})"), ParseError);
    CHECK_THROWS_AS(
        solution_from_json(R"({"status":"optimal","logBase":"7"})"),
        ParseError);
    CHECK_THROWS_AS(
        solution_from_json(R"({"status":"optimal","events":[1.5]})"),
        ParseError);
  }
}
