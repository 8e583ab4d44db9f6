#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "w2a/automaton.hpp"

namespace w2a {

/// Head position ranges over [0, n+1] for a word of length n; position 0
/// carries the left marker and n+1 the right marker.
struct Configuration {
  StateId state;
  int position;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

struct Run {
  std::string word;
  std::vector<Configuration> configs;
};

/// Letter under the head: markers at the borders, word letters in between.
char label_at(const std::string& word, int position);

/// Empty iff the run is a valid accepting computation of the automaton.
std::vector<std::string> validate_run(const TwoWayAutomaton& a, const Run& run);

/// All reduced runs on `word`, in lexicographic order of their configuration
/// sequences. A run is reduced when no configuration repeats at index >= 1.
std::vector<Run> enumerate_reduced_runs(const TwoWayAutomaton& a, std::string_view word);

/// I(p_0) (x) E(t_0) (x) ... (x) E(t_k-1) (x) T(p_k), strictly in this order.
Weight run_weight(const Run& run, const TwoWayAutomaton& a);

/// Sum of run_weight over the reduced runs on `word`; 0_K when there is none.
Weight evaluate_two_way(const TwoWayAutomaton& a, std::string_view word);

/// Sum over accepting paths, by dynamic programming over state vectors.
Weight evaluate_one_way(const OneWayAutomaton& a, std::string_view word);

using SliceVector = std::vector<StateId>;
using Signature = std::vector<SliceVector>;

/// Slice j collects, in run order, the targets of the head moves across the
/// boundary between positions j-1 and j; the initial configuration seeds
/// slice 1. A run on a word of length k has k+1 slices, all of odd length.
Signature signature_of(const Run& run);

bool is_reduced(const Run& run);

/// Excises the leftmost, shortest unmoving circuit until none is left.
Run reduce_run(Run run);

/// "[q1;q2;...;qk]" with state names from the automaton.
std::string format_slice(const SliceVector& slice, const TwoWayAutomaton& a);

}  // namespace w2a
