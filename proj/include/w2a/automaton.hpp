#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "w2a/semiring.hpp"

namespace w2a {

using StateId = std::uint32_t;

/// Tape markers; they flank every input word and are never part of the alphabet.
inline constexpr char kLeftMarker = '^';
inline constexpr char kRightMarker = '$';

inline bool is_marker(char symbol) { return symbol == kLeftMarker || symbol == kRightMarker; }

struct TwoWayTransition {
  StateId from;
  char label;
  int direction;  // -1 or +1
  StateId to;
  Weight weight;
};

struct OneWayTransition {
  StateId from;
  char label;
  StateId to;
  Weight weight;
};

/// Weighted two-way automaton. States keep declaration order; transition,
/// initial and final weights never store 0_K on purpose (validate() reports
/// stored zeros as violations).
class TwoWayAutomaton {
 public:
  explicit TwoWayAutomaton(SemiringDescriptor semiring) : semiring_(semiring) {}

  StateId add_state(std::string name);
  void set_alphabet(std::string_view letters);
  void add_transition(StateId from, char label, int direction, StateId to, Weight weight);
  void set_initial(StateId state, Weight weight);
  void set_final(StateId state, Weight weight);

  const SemiringDescriptor& semiring() const { return semiring_; }
  std::size_t state_count() const { return state_names_.size(); }
  const std::string& state_name(StateId s) const { return state_names_.at(s); }
  const std::vector<std::string>& state_names() const { return state_names_; }
  std::optional<StateId> find_state(std::string_view name) const;
  const std::vector<char>& alphabet() const { return alphabet_; }
  const std::vector<TwoWayTransition>& transitions() const { return transitions_; }
  const std::vector<std::size_t>& transitions_from(StateId s) const { return out_.at(s); }
  const std::map<StateId, Weight>& initial() const { return initial_; }
  const std::map<StateId, Weight>& finals() const { return final_; }
  const Weight* initial_weight(StateId s) const;
  const Weight* final_weight(StateId s) const;
  const TwoWayTransition* find_transition(StateId from, char label, int direction,
                                          StateId to) const;

  friend bool operator==(const TwoWayAutomaton& a, const TwoWayAutomaton& b);

 private:
  SemiringDescriptor semiring_;
  std::vector<std::string> state_names_;
  std::vector<char> alphabet_;  // sorted, unique
  std::vector<TwoWayTransition> transitions_;
  std::vector<std::vector<std::size_t>> out_;
  std::map<StateId, Weight> initial_;
  std::map<StateId, Weight> final_;
};

class OneWayAutomaton {
 public:
  explicit OneWayAutomaton(SemiringDescriptor semiring) : semiring_(semiring) {}

  StateId add_state(std::string name);
  void set_alphabet(std::string_view letters);
  void add_transition(StateId from, char label, StateId to, Weight weight);
  void set_initial(StateId state, Weight weight);
  void set_final(StateId state, Weight weight);

  const SemiringDescriptor& semiring() const { return semiring_; }
  std::size_t state_count() const { return state_names_.size(); }
  const std::string& state_name(StateId s) const { return state_names_.at(s); }
  const std::vector<std::string>& state_names() const { return state_names_; }
  std::optional<StateId> find_state(std::string_view name) const;
  const std::vector<char>& alphabet() const { return alphabet_; }
  const std::vector<OneWayTransition>& transitions() const { return transitions_; }
  const std::vector<std::size_t>& transitions_from(StateId s) const { return out_.at(s); }
  const std::map<StateId, Weight>& initial() const { return initial_; }
  const std::map<StateId, Weight>& finals() const { return final_; }
  const Weight* initial_weight(StateId s) const;
  const Weight* final_weight(StateId s) const;

  friend bool operator==(const OneWayAutomaton& a, const OneWayAutomaton& b);

 private:
  SemiringDescriptor semiring_;
  std::vector<std::string> state_names_;
  std::vector<char> alphabet_;
  std::vector<OneWayTransition> transitions_;
  std::vector<std::vector<std::size_t>> out_;
  std::map<StateId, Weight> initial_;
  std::map<StateId, Weight> final_;
};

/// Structural invariants; an empty result means the automaton is well formed.
std::vector<std::string> validate(const TwoWayAutomaton& a);
std::vector<std::string> validate(const OneWayAutomaton& a);

/// True iff every state's outgoing transitions agree on one direction.
bool is_delta_local(const TwoWayAutomaton& a);

struct DeltaPartition {
  std::vector<StateId> plus;   // states moving right (incl. transition-less ones)
  std::vector<StateId> minus;  // states moving left
};

/// Partition {Q+, Q-} of a delta-local automaton; throws PreconditionError
/// naming a witness state otherwise.
DeltaPartition delta_partition(const TwoWayAutomaton& a);

/// Per-state direction lookup for delta-local automata: +1 or -1 per state.
std::vector<int> state_directions(const TwoWayAutomaton& a);

struct TwoWayDeterminismReport {
  bool deterministic = false;
  std::vector<std::string> violations;
};

TwoWayDeterminismReport check_deterministic_two_way(const TwoWayAutomaton& a);

struct UnambiguityReport {
  bool unambiguous = false;
  std::optional<std::string> witness;  // a word labelling two runs, when ambiguous
};

/// Decides unambiguity through the trimmed support self-product.
UnambiguityReport check_unambiguous_one_way(const OneWayAutomaton& a);

bool is_deterministic_one_way(const OneWayAutomaton& a);

/// A one-way automaton viewed as a two-way automaton (all directions +1).
TwoWayAutomaton embed_one_way(const OneWayAutomaton& a);

/// All words over `alphabet` with length <= max_len, in length-then-lex order.
std::vector<std::string> enumerate_words(const std::vector<char>& alphabet, std::size_t max_len);

}  // namespace w2a
