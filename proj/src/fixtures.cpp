#include "w2a/fixtures.hpp"

namespace w2a::fixtures {

TwoWayAutomaton f1() {
  TwoWayAutomaton a(semiring(SemiringId::tropical));
  StateId p = a.add_state("p");
  StateId q = a.add_state("q");
  StateId r = a.add_state("r");
  StateId s = a.add_state("s");
  a.set_alphabet("ab");

  const Weight zero_w = Weight::tropical(0);
  const Weight one_w = Weight::tropical(1);
  // Left-to-right parity scan: p even, q odd.
  a.add_transition(p, 'a', 1, q, zero_w);
  a.add_transition(q, 'a', 1, p, zero_w);
  a.add_transition(p, 'b', 1, p, zero_w);
  // Odd block detected: turn around and count it right-to-left.
  a.add_transition(q, 'b', -1, r, zero_w);
  a.add_transition(q, kRightMarker, -1, r, zero_w);
  a.add_transition(r, 'a', -1, s, one_w);
  a.add_transition(s, 'a', -1, r, one_w);
  // Back at the block start: rescan it to the right in the parity states.
  a.add_transition(s, 'b', 1, q, zero_w);
  a.add_transition(s, kLeftMarker, 1, q, zero_w);

  a.set_initial(p, zero_w);
  a.set_final(p, zero_w);
  return a;
}

TwoWayAutomaton f2() {
  TwoWayAutomaton a(semiring(SemiringId::lang_xy));
  StateId forward_x = a.add_state("f");
  StateId back = a.add_state("b");
  StateId forward_y = a.add_state("g");
  a.set_alphabet("a");

  const Weight unit = Weight::lang({""});
  a.add_transition(forward_x, 'a', 1, forward_x, Weight::lang({"x"}));
  a.add_transition(forward_x, kRightMarker, -1, back, unit);
  a.add_transition(back, 'a', -1, back, unit);
  a.add_transition(back, kLeftMarker, 1, forward_y, unit);
  a.add_transition(forward_y, 'a', 1, forward_y, Weight::lang({"y"}));

  a.set_initial(forward_x, unit);
  a.set_final(forward_y, unit);
  return a;
}

OneWayAutomaton f3() {
  OneWayAutomaton a(semiring(SemiringId::tropical));
  StateId s1 = a.add_state("1");
  StateId s2 = a.add_state("2");
  StateId s3 = a.add_state("3");
  StateId s4 = a.add_state("4");
  a.set_alphabet("ab");

  const Weight unit = Weight::tropical(0);
  // alpha = mu(a)
  a.add_transition(s1, 'a', s2, unit);
  a.add_transition(s2, 'a', s1, unit);
  a.add_transition(s3, 'a', s4, unit);
  a.add_transition(s4, 'a', s3, unit);
  // beta = mu(b)
  a.add_transition(s1, 'b', s1, unit);
  a.add_transition(s1, 'b', s3, unit);
  a.add_transition(s4, 'b', s1, unit);
  a.add_transition(s4, 'b', s3, unit);

  a.set_initial(s3, unit);
  a.set_final(s4, unit);
  return a;
}

}  // namespace w2a::fixtures
