#pragma once

#include <vector>

#include "w2a/automaton.hpp"
#include "w2a/run.hpp"

namespace w2a {

/// Total state map between two two-way automata over the same alphabet and
/// semiring. Owns copies of both automata, so it stays valid on its own.
struct StateMorphism {
  TwoWayAutomaton source;
  TwoWayAutomaton target;
  std::vector<StateId> map;  // indexed by source state
};

/// Violations of the morphism conditions (initial, final, transition weights).
std::vector<std::string> check_morphism(const StateMorphism& m);

bool check_surjective(const StateMorphism& m);

/// Covering / in-covering conditions, checked literally (including the
/// unique-lift quantifiers). Both require a surjective morphism and throw
/// PreconditionError listing the morphism violations otherwise.
bool check_covering(const StateMorphism& m);
bool check_in_covering(const StateMorphism& m);

/// The unique source run mapping onto `target_run`; built front-to-back for
/// coverings and back-to-front for in-coverings.
Run lift_run(const StateMorphism& m, const Run& target_run);

/// Splits every two-direction state p into p+ / p- and restricts transitions
/// so that each state emits a single direction. The returned morphism maps
/// the construction onto `a`; it is always a surjective in-covering and its
/// source is delta-local.
StateMorphism delta_local_in_covering(const TwoWayAutomaton& a);

}  // namespace w2a
