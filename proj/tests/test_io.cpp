#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "w2a/covering.hpp"
#include "w2a/fixtures.hpp"
#include "w2a/io.hpp"
#include "w2a/slice.hpp"

using namespace w2a;

namespace {

std::filesystem::path fixture(const char* name) {
  return std::filesystem::path(W2A_FIXTURES_DIR) / name;
}

}  // namespace

TEST_CASE("shipped fixture files equal the built-in fixtures") {
  LoadedAutomaton f1 = load_automaton(fixture("f1.json"));
  REQUIRE(is_two_way(f1));
  CHECK(std::get<TwoWayAutomaton>(f1) == fixtures::f1());

  LoadedAutomaton f2 = load_automaton(fixture("f2.json"));
  REQUIRE(is_two_way(f2));
  CHECK(std::get<TwoWayAutomaton>(f2) == fixtures::f2());

  LoadedAutomaton f3 = load_automaton(fixture("f3.json"));
  REQUIRE_FALSE(is_two_way(f3));
  CHECK(std::get<OneWayAutomaton>(f3) == fixtures::f3());
}

TEST_CASE("serialization round trips") {
  TwoWayAutomaton f1 = fixtures::f1();
  LoadedAutomaton reloaded = parse_document(serialize(f1));
  REQUIRE(is_two_way(reloaded));
  CHECK(std::get<TwoWayAutomaton>(reloaded) == f1);
  // Canonical output is stable under a second round trip.
  CHECK(serialize(std::get<TwoWayAutomaton>(reloaded)) == serialize(f1));

  OneWayAutomaton f3 = fixtures::f3();
  LoadedAutomaton reloaded3 = parse_document(serialize(f3));
  REQUIRE_FALSE(is_two_way(reloaded3));
  CHECK(std::get<OneWayAutomaton>(reloaded3) == f3);

  TwoWayAutomaton f2 = fixtures::f2();
  LoadedAutomaton reloaded2 = parse_document(serialize(f2));
  CHECK(std::get<TwoWayAutomaton>(reloaded2) == f2);
}

TEST_CASE("marker misuse in a document is rejected") {
  std::string text = R"({
    "format_version": 1,
    "kind": "two-way",
    "semiring": "tropical",
    "alphabet": ["a"],
    "states": ["p"],
    "initial": {"p": "0"},
    "final": {"p": "0"},
    "transitions": [
      {"from": "p", "label": "^", "dir": "-1", "to": "p", "weight": "0"}
    ]
  })";
  CHECK_THROWS_WITH_AS(parse_document(text), doctest::Contains("marker"), ParseError);
}

TEST_CASE("unknown semiring id is named in the error") {
  std::string text = R"({
    "format_version": 1,
    "kind": "one-way",
    "semiring": "galactic",
    "alphabet": ["a"],
    "states": ["p"],
    "initial": {},
    "final": {},
    "transitions": []
  })";
  CHECK_THROWS_WITH_AS(parse_document(text), doctest::Contains("galactic"), ParseError);
}

TEST_CASE("schema violations carry the field path") {
  CHECK_THROWS_WITH_AS(parse_document("{}"), doctest::Contains("format_version"), ParseError);
  CHECK_THROWS_WITH_AS(parse_document("not json at all"), doctest::Contains("JSON"), ParseError);
  std::string missing_to = R"({
    "format_version": 1,
    "kind": "one-way",
    "semiring": "tropical",
    "alphabet": ["a"],
    "states": ["p"],
    "initial": {"p": "0"},
    "final": {"p": "0"},
    "transitions": [{"from": "p", "label": "a", "weight": "0"}]
  })";
  CHECK_THROWS_WITH_AS(parse_document(missing_to), doctest::Contains("to"), ParseError);
}

TEST_CASE("dot export") {
  TwoWayAutomaton f1 = fixtures::f1();
  std::string dot = export_dot(f1);
  CHECK(dot.find("→") != std::string::npos);  // right arrow on right moves
  CHECK(dot.find("←") != std::string::npos);  // left arrow on left moves
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(export_dot(f1) == dot);  // byte-identical across invocations

  SUBCASE("slice automaton names appear bracketed") {
    StateMorphism m = delta_local_in_covering(f1);
    OneWayAutomaton slices = build_slice_automaton(m.source, true);
    std::string slice_dot = export_dot(slices);
    CHECK(slice_dot.find("[p;s+;q+]") != std::string::npos);
  }
}

TEST_CASE("save writes loadable files") {
  std::filesystem::path path =
      std::filesystem::temp_directory_path() / "w2a_test_roundtrip.json";
  save_automaton(fixtures::f1(), path);
  LoadedAutomaton reloaded = load_automaton(path);
  CHECK(std::get<TwoWayAutomaton>(reloaded) == fixtures::f1());
  std::filesystem::remove(path);

  CHECK_THROWS_AS(load_automaton("/nonexistent/file.json"), ParseError);
}
