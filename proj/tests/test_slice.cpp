#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "w2a/covering.hpp"
#include "w2a/fixtures.hpp"
#include "w2a/slice.hpp"

using namespace w2a;

namespace {

SliceVector by_names(const TwoWayAutomaton& a, const std::vector<std::string>& names) {
  SliceVector out;
  for (const std::string& name : names) out.push_back(*a.find_state(name));
  return out;
}

// (weight, state-name-sequence) pairs over all accepting paths of a one-way
// automaton, enumerated brute force.
std::multiset<std::pair<std::string, std::vector<std::string>>> accepting_path_multiset(
    const OneWayAutomaton& a, const std::string& word) {
  std::multiset<std::pair<std::string, std::vector<std::string>>> out;
  for (const oracles::OneWayPath& path : oracles::one_way_paths(a, word)) {
    std::vector<std::string> names;
    for (StateId s : path.states) names.push_back(a.state_name(s));
    out.insert({format_weight(path.weight), names});
  }
  return out;
}

std::multiset<std::pair<std::string, std::vector<std::string>>> reduced_run_multiset(
    const TwoWayAutomaton& a, const std::string& word) {
  std::multiset<std::pair<std::string, std::vector<std::string>>> out;
  for (const Run& run : enumerate_reduced_runs(a, word)) {
    std::vector<std::string> names;
    for (const SliceVector& slice : signature_of(run)) names.push_back(format_slice(slice, a));
    out.insert({format_weight(run_weight(run, a)), names});
  }
  return out;
}

}  // namespace

TEST_CASE("theta reproduces the worked example on the delta-local form of F1") {
  StateMorphism m = delta_local_in_covering(fixtures::f1());
  const TwoWayAutomaton& cover = m.source;

  SliceVector u = by_names(cover, {"p", "s+", "q+"});
  SliceVector v = by_names(cover, {"q-", "r", "p"});
  std::optional<Weight> w = theta(cover, u, 'a', v);
  REQUIRE(w.has_value());
  // E(p,a,1,q-) + E(r,a,-1,s+) + E(q+,a,1,p) = 0 + 1 + 0 in the tropical semiring
  CHECK(*w == Weight::tropical(1));

  SUBCASE("initial weight of [p;s+;q+] is I(p) (x) E(s+,^,1,q+)") {
    std::optional<Weight> marker = eta(cover, {}, kLeftMarker, by_names(cover, {"s+", "q+"}));
    REQUIRE(marker.has_value());
    CHECK(*marker == Weight::tropical(0));
  }

  SUBCASE("eta base case is 1_K") {
    std::optional<Weight> base = eta(cover, {}, 'a', {});
    REQUIRE(base.has_value());
    CHECK(*base == one(cover.semiring()));
  }

  SUBCASE("undefined matchings return nullopt") {
    CHECK_FALSE(theta(cover, by_names(cover, {"q-", "r", "p"}), 'a',
                      by_names(cover, {"p", "s+", "q+"}))
                    .has_value());
  }
}

TEST_CASE("theta on a single right transition") {
  TwoWayAutomaton a(semiring(SemiringId::tropical));
  StateId p = a.add_state("p");
  StateId q = a.add_state("q");
  a.set_alphabet("a");
  a.add_transition(p, 'a', 1, q, Weight::tropical(3));
  a.set_initial(p, Weight::tropical(0));
  a.set_final(q, Weight::tropical(0));
  std::optional<Weight> w = theta(a, {p}, 'a', {q});
  REQUIRE(w.has_value());
  CHECK(*w == Weight::tropical(3));
}

TEST_CASE("theta preconditions") {
  CHECK_THROWS_AS(theta(fixtures::f1(), {0}, 'a', {0}), PreconditionError);   // not delta-local
  CHECK_THROWS_AS(theta(fixtures::f2(), {0}, 'a', {0}), PreconditionError);   // not commutative
  StateMorphism m = delta_local_in_covering(fixtures::f1());
  CHECK_THROWS_AS(theta(m.source, {0, 1}, 'a', {0}), PreconditionError);      // even length
}

TEST_CASE("slice automaton of the delta-local form of F1") {
  StateMorphism m = delta_local_in_covering(fixtures::f1());
  const TwoWayAutomaton& cover = m.source;
  OneWayAutomaton slices = build_slice_automaton(cover, true);
  CHECK(validate(slices).empty());

  SUBCASE("the unrestricted mode is rejected") {
    CHECK_THROWS_WITH_AS(build_slice_automaton(cover, false), doctest::Contains("infinite"),
                         PreconditionError);
  }

  SUBCASE("states are V-members of bounded length") {
    for (StateId s = 0; s < slices.state_count(); ++s) {
      CAPTURE(slices.state_name(s));
      // Recover the member states from the name rendering.
      std::string name = slices.state_name(s);
      REQUIRE(name.front() == '[');
      REQUIRE(name.back() == ']');
      SliceVector vec;
      std::string token;
      for (char c : name.substr(1, name.size() - 2)) {
        if (c == ';') {
          vec.push_back(*cover.find_state(token));
          token.clear();
        } else {
          token += c;
        }
      }
      vec.push_back(*cover.find_state(token));
      CHECK(in_slice_universe(vec));
      CHECK(vec.size() % 2 == 1);
      CHECK(vec.size() <= 2 * cover.state_count() - 1);
    }
  }

  SUBCASE("initial weight of [p;s+;q+]") {
    std::optional<StateId> s = slices.find_state("[p;s+;q+]");
    REQUIRE(s.has_value());
    const Weight* w = slices.initial_weight(*s);
    REQUIRE(w != nullptr);
    CHECK(*w == Weight::tropical(0));
  }

  SUBCASE("abaaba has a unique accepting path matching the signature, weight 2") {
    auto paths = oracles::one_way_paths(slices, "abaaba");
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].weight == Weight::tropical(2));
    std::vector<Run> runs = enumerate_reduced_runs(cover, "abaaba");
    REQUIRE(runs.size() == 1);
    Signature signature = signature_of(runs[0]);
    REQUIRE(signature.size() == paths[0].states.size());
    for (std::size_t i = 0; i < signature.size(); ++i) {
      CHECK(slices.state_name(paths[0].states[i]) == format_slice(signature[i], cover));
    }
    CHECK(evaluate_one_way(slices, "abaaba") == Weight::tropical(2));
  }

  SUBCASE("bijection between reduced runs and accepting paths, words up to 6") {
    for (const std::string& word : enumerate_words({'a', 'b'}, 6)) {
      CAPTURE(word);
      CHECK(reduced_run_multiset(cover, word) == accepting_path_multiset(slices, word));
      CHECK(evaluate_two_way(cover, word) == evaluate_one_way(slices, word));
    }
  }

  SUBCASE("unambiguity is preserved") {
    for (const std::string& word : enumerate_words({'a', 'b'}, 8)) {
      CHECK(enumerate_reduced_runs(cover, word).size() <= 1);
    }
    CHECK(check_unambiguous_one_way(slices).unambiguous);
  }
}

TEST_CASE("a one-way automaton embedded as two-way has an isomorphic slice automaton") {
  OneWayAutomaton f3 = fixtures::f3();
  TwoWayAutomaton embedded = embed_one_way(f3);
  OneWayAutomaton slices = build_slice_automaton(embedded, true);
  // f3 is trim already; the slice automaton lives on singleton slices.
  CHECK(slices.state_count() == f3.state_count());
  CHECK(slices.transitions().size() == f3.transitions().size());
  for (StateId s = 0; s < f3.state_count(); ++s) {
    std::optional<StateId> image = slices.find_state("[" + f3.state_name(s) + "]");
    REQUIRE(image.has_value());
  }
  for (const OneWayTransition& t : f3.transitions()) {
    StateId from = *slices.find_state("[" + f3.state_name(t.from) + "]");
    StateId to = *slices.find_state("[" + f3.state_name(t.to) + "]");
    bool found = false;
    for (std::size_t idx : slices.transitions_from(from)) {
      const OneWayTransition& u = slices.transitions()[idx];
      if (u.label == t.label && u.to == to && u.weight == t.weight) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("slice construction on F2 is rejected, direct evaluation works") {
  TwoWayAutomaton f2 = fixtures::f2();
  CHECK_THROWS_WITH_AS(build_slice_automaton(f2, true), doctest::Contains("commutative"),
                       PreconditionError);
  std::string expected_x;
  std::string expected_y;
  std::string word;
  for (int n = 0; n <= 4; ++n) {
    CAPTURE(n);
    CHECK(evaluate_two_way(f2, word) == Weight::lang({expected_x + expected_y}));
    word += 'a';
    expected_x += 'x';
    expected_y += 'y';
  }
}

TEST_CASE("trim_one_way") {
  SUBCASE("removes unreachable and dead states") {
    OneWayAutomaton a(semiring(SemiringId::tropical));
    StateId u = a.add_state("u");
    StateId v = a.add_state("v");
    StateId unreachable = a.add_state("w");
    StateId dead = a.add_state("d");
    a.set_alphabet("a");
    a.add_transition(u, 'a', v, Weight::tropical(1));
    a.add_transition(unreachable, 'a', v, Weight::tropical(1));
    a.add_transition(u, 'a', dead, Weight::tropical(1));
    a.set_initial(u, Weight::tropical(0));
    a.set_final(v, Weight::tropical(0));
    OneWayAutomaton trimmed = trim_one_way(a);
    CHECK(trimmed.state_count() == 2);
    CHECK(trimmed.find_state("u").has_value());
    CHECK(trimmed.find_state("v").has_value());
    CHECK_FALSE(trimmed.find_state("w").has_value());
    CHECK_FALSE(trimmed.find_state("d").has_value());
  }

  SUBCASE("idempotent and evaluation-preserving on random automata") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 15; ++trial) {
      OneWayAutomaton a = oracles::random_one_way(rng, 4);
      OneWayAutomaton trimmed = trim_one_way(a);
      CHECK(trim_one_way(trimmed) == trimmed);
      for (const std::string& word : enumerate_words({'a', 'b'}, 6)) {
        CHECK(evaluate_one_way(a, word) == evaluate_one_way(trimmed, word));
      }
    }
  }
}
