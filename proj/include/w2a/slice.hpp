#pragma once

#include <optional>

#include "w2a/automaton.hpp"
#include "w2a/run.hpp"

namespace w2a {

/// Transition weight of the slice automaton between odd slice vectors u and v
/// on `symbol`, when the unique matching of crossings exists. Requires a
/// delta-local automaton over a commutative semiring.
std::optional<Weight> theta(const TwoWayAutomaton& a, const SliceVector& u, char symbol,
                            const SliceVector& v);

/// The even companion of theta. eta(empty, '^', u) yields the marker part of
/// initial slice weights, eta(u, '$', empty) the marker part of final ones.
std::optional<Weight> eta(const TwoWayAutomaton& a, const SliceVector& u, char symbol,
                          const SliceVector& v);

/// True iff no state occurs twice at indices of equal parity. Such vectors
/// have length at most 2*state_count - 1.
bool in_slice_universe(const SliceVector& v);

/// One-way automaton over the V-restricted slice vectors of `a`, generated by
/// forward closure from the initial slices and trimmed to accessible and
/// co-accessible states. State names use the "[q1;q2;...;qk]" rendering.
/// `restrict_to_v` must be true: the unrestricted slice automaton is infinite.
OneWayAutomaton build_slice_automaton(const TwoWayAutomaton& a, bool restrict_to_v);

/// Keeps exactly the states reachable from an initial state and co-reachable
/// to a final state in the support graph.
OneWayAutomaton trim_one_way(const OneWayAutomaton& a);

}  // namespace w2a
