#pragma once

#include "w2a/automaton.hpp"

namespace w2a::fixtures {

/// Two-way tropical automaton over {a,b} computing the sum of the lengths of
/// the odd-length maximal a-blocks. Deterministic; states p, q, r, s.
TwoWayAutomaton f1();

/// Two-way automaton over {a} and the {x,y}-language semiring mapping a^n to
/// {x^n y^n}: a first pass emits an x per a, a return pass, then a second
/// pass emits a y per a.
TwoWayAutomaton f2();

/// One-way tropical automaton on states 1..4 whose letter matrices are the
/// alpha/beta generator pair; I = {3}, T = {4}, all weights 1_K.
OneWayAutomaton f3();

}  // namespace w2a::fixtures
