#pragma once

#include <map>
#include <vector>

#include "w2a/automaton.hpp"

namespace w2a {

/// Square Boolean matrix indexed by the states of a one-way automaton.
class BoolMatrix {
 public:
  explicit BoolMatrix(std::size_t dim) : dim_(dim), bits_(dim * dim, false) {}

  static BoolMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  bool get(std::size_t row, std::size_t col) const { return bits_[row * dim_ + col]; }
  void set(std::size_t row, std::size_t col, bool value) { bits_[row * dim_ + col] = value; }

  BoolMatrix operator*(const BoolMatrix& other) const;

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;
  friend auto operator<=>(const BoolMatrix& a, const BoolMatrix& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::size_t dim_;
  std::vector<bool> bits_;
};

using StateSet = std::vector<bool>;  // characteristic vector over automaton states

/// X * m: states reachable from X through m.
StateSet vec_mul(const StateSet& x, const BoolMatrix& m);
/// m * Y: states from which Y is reachable through m.
StateSet mat_vec(const BoolMatrix& m, const StateSet& y);

/// Monoid of Boolean matrices generated by the per-letter support matrices.
/// elements[0] is the identity; the rest follow breadth-first discovery from
/// the generators in sorted letter order.
struct TransitionMonoid {
  std::size_t dim = 0;
  std::vector<BoolMatrix> elements;
  std::map<char, int> generators;           // letter -> element index
  std::vector<std::vector<int>> product;    // product[i][j] = index of elements[i]*elements[j]

  int index_of(const BoolMatrix& m) const;  // -1 when absent
  int multiply(int x, int y) const { return product[x][y]; }
};

TransitionMonoid transition_monoid(const OneWayAutomaton& a);

/// x <=_L y iff x = z*y for some monoid element z.
bool l_leq(const TransitionMonoid& m, int x, int y);
bool l_equiv(const TransitionMonoid& m, int x, int y);
bool l_strictly_less(const TransitionMonoid& m, int x, int y);
/// All z with z*x = y, in monoid element order.
std::vector<int> l_witnesses(const TransitionMonoid& m, int x, int y);

/// True iff every witness z (z*x_pre = x_post) yields the same image z*Y.
bool all_l_witness_images_agree(const TransitionMonoid& m, int x_pre, int x_post,
                                const StateSet& y);

struct DeterminizeStats {
  std::size_t q1_count = 0;
  std::size_t q2_count = 0;
  std::size_t q3_count = 0;
  std::size_t q4_count = 0;
  std::size_t monoid_size = 0;
  // Every Q2 state entered through a weight extraction had |X cap Y| == 1.
  bool extraction_sites_ok = true;
};

struct DeterminizeResult {
  TwoWayAutomaton automaton;
  DeterminizeStats stats;
};

/// Theorem-style construction of a deterministic two-way automaton equivalent
/// to an unambiguous one-way automaton, built accessible-only from the start
/// sentinel. Throws PreconditionError on ambiguous input.
DeterminizeResult determinize_with_stats(const OneWayAutomaton& a);
TwoWayAutomaton determinize(const OneWayAutomaton& a);

/// Keeps exactly the states visited by some reduced run on some word with
/// length <= word_length_bound.
TwoWayAutomaton bounded_trim_two_way(const TwoWayAutomaton& a, std::size_t word_length_bound);

}  // namespace w2a
