#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "mpmcs/encoder.hpp"
#include "mpmcs/errors.hpp"
#include "mpmcs/wcnf_io.hpp"
#include "support/fixtures.hpp"

using namespace mpmcs;

namespace {

WcnfInstance small_instance() {
  WcnfInstance instance;
  instance.num_vars = 3;
  instance.top = 10;
  instance.hard = {{1, 2}, {-1, 3}};
  instance.soft = {SoftClause{4, {-3}}, SoftClause{2, {1}}};
  return instance;
}

}  // namespace

TEST_CASE("emit_wcnf is deterministic byte for byte") {
  const WcnfInstance instance = small_instance();

  SUBCASE("hard clauses in stored order, soft sorted by first variable") {
    CHECK(emit_wcnf(instance) ==
          "p wcnf 3 4 10\n"
          "10 1 2 0\n"
          "10 -1 3 0\n"
          "2 1 0\n"
          "4 -3 0\n");
  }

  SUBCASE("comments land before the header, one c line each") {
    CHECK(emit_wcnf(instance, {"alpha", "beta gamma"}) ==
          "c alpha\n"
          "c beta gamma\n"
          "p wcnf 3 4 10\n"
          "10 1 2 0\n"
          "10 -1 3 0\n"
          "2 1 0\n"
          "4 -3 0\n");
  }

  SUBCASE("soft sort is stable for equal first variables") {
    WcnfInstance tie;
    tie.num_vars = 2;
    tie.top = 9;
    tie.soft = {SoftClause{3, {1, 2}}, SoftClause{5, {-1}}};
    CHECK(emit_wcnf(tie) ==
          "p wcnf 2 2 9\n"
          "3 1 2 0\n"
          "5 -1 0\n");
  }
}

TEST_CASE("parse_wcnf accepts what emit_wcnf produces") {
  const WcnfInstance instance = small_instance();
  const std::string text = emit_wcnf(instance, {"note"});
  const WcnfInstance parsed = parse_wcnf(text);

  CHECK(parsed.num_vars == 3);
  CHECK(parsed.top == 10);
  CHECK(parsed.hard == instance.hard);
  // File order is the emitted (sorted) order.
  CHECK(parsed.soft ==
        std::vector<SoftClause>{SoftClause{2, {1}}, SoftClause{4, {-3}}});

  SUBCASE("emit . parse . emit is the identity on bytes") {
    const std::string once = emit_wcnf(instance);
    CHECK(emit_wcnf(parse_wcnf(once)) == once);
  }

  SUBCASE("comments do not survive a round trip") {
    CHECK(emit_wcnf(parsed) == emit_wcnf(instance));
  }
}

TEST_CASE("parse_wcnf tolerates formatting noise") {
  SUBCASE("CRLF endings, tabs, and extra spaces") {
    const WcnfInstance parsed =
        parse_wcnf("p wcnf 2 2 10\r\n10  1\t-2  0\r\n  3 1 0\r\n");
    CHECK(parsed.hard == std::vector<Clause>{{1, -2}});
    CHECK(parsed.soft == std::vector<SoftClause>{SoftClause{3, {1}}});
  }

  SUBCASE("blank lines and comments anywhere") {
    const WcnfInstance parsed = parse_wcnf(
        "c head\n\np wcnf 1 2 5\nc middle\n5 1 0\n   \n2 -1 0\nc tail\n");
    CHECK(parsed.hard.size() == 1);
    CHECK(parsed.soft.size() == 1);
  }

  SUBCASE("no trailing newline on the last clause") {
    const WcnfInstance parsed = parse_wcnf("p wcnf 1 1 5\n5 1 0");
    CHECK(parsed.hard == std::vector<Clause>{{1}});
  }

  SUBCASE("weight equal to top classifies the clause as hard") {
    const WcnfInstance parsed = parse_wcnf("p wcnf 1 2 5\n5 1 0\n4 1 0\n");
    CHECK(parsed.hard.size() == 1);
    CHECK(parsed.soft.size() == 1);
    CHECK(parsed.soft[0].weight == 4);
  }

  SUBCASE("empty hard clause is representable") {
    const WcnfInstance parsed = parse_wcnf("p wcnf 1 1 5\n5 0\n");
    CHECK(parsed.hard == std::vector<Clause>{{}});
  }
}

TEST_CASE("parse_wcnf rejects malformed input with the offending line") {
  SUBCASE("missing header") {
    CHECK_THROWS_WITH_AS(parse_wcnf(""), "missing 'p wcnf' header", ParseError);
    CHECK_THROWS_WITH_AS(parse_wcnf("c only comments\n"),
                         "missing 'p wcnf' header", ParseError);
  }

  SUBCASE("clause before header") {
    CHECK_THROWS_WITH_AS(parse_wcnf("1 1 0\np wcnf 1 1 5\n"),
                         "line 1: clause before header", ParseError);
  }

  SUBCASE("duplicate header") {
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 1 0 5\np wcnf 1 0 5\n"),
                         "line 2: duplicate header", ParseError);
  }

  SUBCASE("malformed header") {
    CHECK_THROWS_WITH_AS(
        parse_wcnf("p cnf 3 1 10\n"),
        "line 1: malformed header, expected 'p wcnf <vars> <clauses> <top>'",
        ParseError);
    CHECK_THROWS_WITH_AS(
        parse_wcnf("p wcnf 3 1\n"),
        "line 1: malformed header, expected 'p wcnf <vars> <clauses> <top>'",
        ParseError);
  }

  SUBCASE("trailing tokens after header") {
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 1 10 extra\n"),
                         "line 1: trailing tokens after header", ParseError);
  }

  SUBCASE("header bounds") {
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 0 0 10\n"),
                         "line 1: variable count out of range", ParseError);
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 -1 10\n"),
                         "line 1: negative clause count", ParseError);
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 0 1\n"),
                         "line 1: top weight must be at least 2", ParseError);
  }

  SUBCASE("weight must be positive and at most top") {
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 1 10\n0 1 0\n"),
                         "line 2: weight must be positive", ParseError);
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 1 10\n-2 1 0\n"),
                         "line 2: weight must be positive", ParseError);
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 1 10\n11 1 0\n"),
                         "line 2: weight 11 exceeds top 10", ParseError);
  }

  SUBCASE("literal outside the declared range") {
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 1 10\n10 4 0\n"),
                         "line 2: literal 4 outside declared variable range",
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 1 10\n10 -4 0\n"),
                         "line 2: literal -4 outside declared variable range",
                         ParseError);
  }

  SUBCASE("clause termination") {
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 1 10\n10 1 2\n"),
                         "line 2: clause missing terminating 0", ParseError);
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 1 10\n10 1 0 2\n"),
                         "line 2: trailing tokens after terminating 0",
                         ParseError);
  }

  SUBCASE("non-integer tokens") {
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 1 10\n10 1 x 0\n"),
                         "line 2: malformed number", ParseError);
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 1 10\n1.5 1 0\n"),
                         "line 2: malformed number", ParseError);
  }

  SUBCASE("clause count must match the header") {
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 2 10\n10 1 0\n"),
                         "header declares 2 clauses but 1 are present",
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_wcnf("p wcnf 3 0 10\n10 1 0\n"),
                         "header declares 0 clauses but 1 are present",
                         ParseError);
  }

  SUBCASE("ParseError carries the 1-based line number") {
    try {
      parse_wcnf("p wcnf 3 1 10\n10 4 0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    try {
      parse_wcnf("");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 0);
    }
  }
}

TEST_CASE("encoder output round-trips through the WCNF text form") {
  const EncodeResult enc = encode(fixtures::fps_tree());
  const std::string text = emit_wcnf(enc.instance);

  CHECK(text.starts_with("p wcnf 12 24 2000000000\n"));

  const WcnfInstance parsed = parse_wcnf(text);
  CHECK(parsed == enc.instance);
  CHECK(parsed.mpmcs_shaped());
  CHECK(emit_wcnf(parsed) == text);
}

TEST_CASE("save_wcnf and load_wcnf round-trip through a file") {
  const auto dir = std::filesystem::temp_directory_path() / "mpmcs-wcnf-test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "small.wcnf";

  const WcnfInstance instance = small_instance();
  save_wcnf(instance, path, {"saved by test"});
  const WcnfInstance loaded = load_wcnf(path);
  CHECK(emit_wcnf(loaded) == emit_wcnf(instance));

  CHECK_THROWS_AS(load_wcnf(dir / "absent.wcnf"), InvalidInput);

  std::filesystem::remove_all(dir);
}
