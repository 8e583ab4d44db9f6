#include "w2a/determinize.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "w2a/run.hpp"

namespace w2a {

BoolMatrix BoolMatrix::identity(std::size_t dim) {
  BoolMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, true);
  return m;
}

BoolMatrix BoolMatrix::operator*(const BoolMatrix& other) const {
  if (dim_ != other.dim_) throw PreconditionError("matrix dimensions differ");
  BoolMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      if (!get(i, k)) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (other.get(k, j)) out.set(i, j, true);
      }
    }
  }
  return out;
}

StateSet vec_mul(const StateSet& x, const BoolMatrix& m) {
  if (x.size() != m.dim()) throw PreconditionError("vector/matrix dimensions differ");
  StateSet out(m.dim(), false);
  for (std::size_t p = 0; p < m.dim(); ++p) {
    if (!x[p]) continue;
    for (std::size_t q = 0; q < m.dim(); ++q) {
      if (m.get(p, q)) out[q] = true;
    }
  }
  return out;
}

StateSet mat_vec(const BoolMatrix& m, const StateSet& y) {
  if (y.size() != m.dim()) throw PreconditionError("matrix/vector dimensions differ");
  StateSet out(m.dim(), false);
  for (std::size_t p = 0; p < m.dim(); ++p) {
    for (std::size_t q = 0; q < m.dim(); ++q) {
      if (m.get(p, q) && y[q]) {
        out[p] = true;
        break;
      }
    }
  }
  return out;
}

int TransitionMonoid::index_of(const BoolMatrix& m) const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] == m) return static_cast<int>(i);
  }
  return -1;
}

TransitionMonoid transition_monoid(const OneWayAutomaton& a) {
  TransitionMonoid monoid;
  monoid.dim = a.state_count();

  std::map<BoolMatrix, int> index;
  auto intern = [&](const BoolMatrix& m) {
    auto it = index.find(m);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(monoid.elements.size());
    monoid.elements.push_back(m);
    index.emplace(m, id);
    return id;
  };

  intern(BoolMatrix::identity(monoid.dim));
  for (char letter : a.alphabet()) {
    BoolMatrix m(monoid.dim);
    for (const OneWayTransition& t : a.transitions()) {
      if (t.label == letter) m.set(t.from, t.to, true);
    }
    monoid.generators.emplace(letter, intern(m));
  }

  std::deque<int> worklist;
  for (std::size_t i = 0; i < monoid.elements.size(); ++i) {
    worklist.push_back(static_cast<int>(i));
  }
  while (!worklist.empty()) {
    int current = worklist.front();
    worklist.pop_front();
    for (const auto& [letter, generator] : monoid.generators) {
      BoolMatrix next = monoid.elements[current] * monoid.elements[generator];
      std::size_t before = monoid.elements.size();
      int id = intern(next);
      if (static_cast<std::size_t>(id) == before) worklist.push_back(id);
    }
  }

  monoid.product.assign(monoid.elements.size(), std::vector<int>(monoid.elements.size(), -1));
  for (std::size_t i = 0; i < monoid.elements.size(); ++i) {
    for (std::size_t j = 0; j < monoid.elements.size(); ++j) {
      int id = monoid.index_of(monoid.elements[i] * monoid.elements[j]);
      if (id < 0) throw InternalError("transition monoid is not closed under product");
      monoid.product[i][j] = id;
    }
  }
  return monoid;
}

bool l_leq(const TransitionMonoid& m, int x, int y) {
  for (std::size_t z = 0; z < m.elements.size(); ++z) {
    if (m.product[z][y] == x) return true;
  }
  return false;
}

bool l_equiv(const TransitionMonoid& m, int x, int y) { return l_leq(m, x, y) && l_leq(m, y, x); }

bool l_strictly_less(const TransitionMonoid& m, int x, int y) {
  return l_leq(m, x, y) && !l_leq(m, y, x);
}

std::vector<int> l_witnesses(const TransitionMonoid& m, int x, int y) {
  std::vector<int> out;
  for (std::size_t z = 0; z < m.elements.size(); ++z) {
    if (m.product[z][x] == y) out.push_back(static_cast<int>(z));
  }
  return out;
}

bool all_l_witness_images_agree(const TransitionMonoid& m, int x_pre, int x_post,
                                const StateSet& y) {
  std::vector<int> witnesses = l_witnesses(m, x_pre, x_post);
  if (witnesses.empty()) throw PreconditionError("no L-witness between the given elements");
  StateSet image = mat_vec(m.elements[witnesses.front()], y);
  for (std::size_t i = 1; i < witnesses.size(); ++i) {
    if (mat_vec(m.elements[witnesses[i]], y) != image) return false;
  }
  return true;
}

namespace {

struct DetState {
  enum class Kind { sentinel, q1, q2, q3, q4 };
  Kind kind = Kind::sentinel;
  char letter = 0;  // Q3 only
  int m1 = -1;      // Q3: mu(u); Q4: mu(a u)
  int m2 = -1;      // Q4: mu of the suffix walked back over
  StateSet x;       // Q2..Q4
  StateSet y;       // Q1..Q4

  friend auto operator<=>(const DetState&, const DetState&) = default;
};

std::string render_set(const OneWayAutomaton& a, const StateSet& set) {
  std::string out;
  for (StateId s = 0; s < set.size(); ++s) {
    if (!set[s]) continue;
    if (!out.empty()) out += ',';
    out += a.state_name(s);
  }
  return out;
}

std::string render_det_state(const OneWayAutomaton& a, const DetState& s) {
  switch (s.kind) {
    case DetState::Kind::sentinel: return "i";
    case DetState::Kind::q1: return "Q1{" + render_set(a, s.y) + "}";
    case DetState::Kind::q2: return "Q2{" + render_set(a, s.x) + "|" + render_set(a, s.y) + "}";
    case DetState::Kind::q3:
      return "Q3(" + std::string(1, s.letter) + ";m" + std::to_string(s.m1) + ";" +
             render_set(a, s.x) + ";" + render_set(a, s.y) + ")";
    case DetState::Kind::q4:
      return "Q4(m" + std::to_string(s.m1) + ";m" + std::to_string(s.m2) + ";" +
             render_set(a, s.x) + ";" + render_set(a, s.y) + ")";
  }
  throw InternalError("unknown DetState kind");
}

StateSet support_of(const std::map<StateId, Weight>& weights, std::size_t dim) {
  StateSet out(dim, false);
  for (const auto& [s, w] : weights) out[s] = true;
  return out;
}

std::size_t set_intersection_size(const StateSet& a, const StateSet& b) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) ++count;
  }
  return count;
}

struct Builder {
  const OneWayAutomaton& a;
  TransitionMonoid monoid;
  TwoWayAutomaton out;
  DeterminizeStats stats;

  std::map<DetState, StateId> ids;
  std::vector<DetState> det_states;
  std::deque<StateId> worklist;

  StateSet initial_support;
  StateSet final_support;

  explicit Builder(const OneWayAutomaton& input)
      : a(input), monoid(transition_monoid(input)), out(input.semiring()) {
    out.set_alphabet(std::string(a.alphabet().begin(), a.alphabet().end()));
    initial_support = support_of(a.initial(), a.state_count());
    final_support = support_of(a.finals(), a.state_count());
    stats.monoid_size = monoid.elements.size();
  }

  StateId intern(const DetState& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    StateId id = out.add_state(render_det_state(a, s));
    ids.emplace(s, id);
    det_states.push_back(s);
    worklist.push_back(id);
    switch (s.kind) {
      case DetState::Kind::q1: ++stats.q1_count; break;
      case DetState::Kind::q2: ++stats.q2_count; break;
      case DetState::Kind::q3: ++stats.q3_count; break;
      case DetState::Kind::q4: ++stats.q4_count; break;
      default: break;
    }
    return id;
  }

  // The unique one-way transition (p, letter, q) with p in X and q in Y.
  const OneWayTransition* unique_compatible_transition(const StateSet& x, char letter,
                                                       const StateSet& y, StateId at) {
    const OneWayTransition* found = nullptr;
    for (const OneWayTransition& t : a.transitions()) {
      if (t.label != letter || !x[t.from] || !y[t.to]) continue;
      if (found) {
        throw PreconditionError("ambiguous input: several transitions compatible with " +
                                out.state_name(at));
      }
      found = &t;
    }
    return found;
  }

  void expand(StateId id) {
    // det_states may grow while we emit transitions; copy the state.
    const DetState s = det_states[id];
    switch (s.kind) {
      case DetState::Kind::sentinel: {
        for (char letter : a.alphabet()) {
          out.add_transition(id, letter, 1, id, one(a.semiring()));
        }
        DetState q1{DetState::Kind::q1, 0, -1, -1, {}, final_support};
        out.add_transition(id, kRightMarker, -1, intern(q1), one(a.semiring()));
        return;
      }
      case DetState::Kind::q1: {
        for (char letter : a.alphabet()) {
          DetState next{DetState::Kind::q1, 0, -1, -1, {},
                        mat_vec(monoid.elements[monoid.generators.at(letter)], s.y)};
          out.add_transition(id, letter, -1, intern(next), one(a.semiring()));
        }
        std::size_t hits = set_intersection_size(initial_support, s.y);
        if (hits > 1) {
          throw PreconditionError("ambiguous input: several initial states in " +
                                  out.state_name(id));
        }
        if (hits == 1) {
          StateId k = 0;
          for (StateId p = 0; p < a.state_count(); ++p) {
            if (initial_support[p] && s.y[p]) k = p;
          }
          DetState q2{DetState::Kind::q2, 0, -1, -1, initial_support, s.y};
          StateId target = intern(q2);
          if (set_intersection_size(q2.x, q2.y) != 1) stats.extraction_sites_ok = false;
          out.add_transition(id, kLeftMarker, 1, target, *a.initial_weight(k));
        }
        return;
      }
      case DetState::Kind::q2: {
        for (char letter : a.alphabet()) {
          DetState q3{DetState::Kind::q3, letter, 0, -1, s.x, s.y};
          out.add_transition(id, letter, 1, intern(q3), one(a.semiring()));
        }
        return;
      }
      case DetState::Kind::q3: {
        const int mu_a = monoid.generators.at(s.letter);
        for (char letter : a.alphabet()) {
          const int mu_b = monoid.generators.at(letter);
          const int xb = monoid.multiply(s.m1, mu_b);
          const int axb = monoid.multiply(mu_a, xb);
          if (l_strictly_less(monoid, axb, xb)) {
            DetState next{DetState::Kind::q3, s.letter, xb, -1, s.x, s.y};
            out.add_transition(id, letter, 1, intern(next), one(a.semiring()));
          } else {
            // a*x*b and x*b are L-equivalent; Y advances by any witness image.
            // When the witness images disagree, no word can drive the run into
            // this (state, letter) pair (on word-consistent states the images
            // provably coincide), so the exit is dropped rather than chosen
            // arbitrarily.
            if (!all_l_witness_images_agree(monoid, axb, xb, s.y)) continue;
            int witness = l_witnesses(monoid, axb, xb).front();
            DetState q4{DetState::Kind::q4, 0, monoid.multiply(mu_a, s.m1), 0, s.x,
                        mat_vec(monoid.elements[witness], s.y)};
            out.add_transition(id, letter, -1, intern(q4), one(a.semiring()));
          }
        }
        DetState q4{DetState::Kind::q4, 0, monoid.multiply(mu_a, s.m1), 0, s.x,
                    mat_vec(monoid.elements[s.m1], final_support)};
        out.add_transition(id, kRightMarker, -1, intern(q4), one(a.semiring()));
        return;
      }
      case DetState::Kind::q4: {
        for (char letter : a.alphabet()) {
          const int ay = monoid.multiply(monoid.generators.at(letter), s.m2);
          if (s.m1 == ay) {
            const OneWayTransition* t = unique_compatible_transition(s.x, letter, s.y, id);
            if (!t) continue;  // no compatible transition: the word is rejected here
            DetState q2{DetState::Kind::q2, 0, -1, -1,
                        vec_mul(s.x, monoid.elements[monoid.generators.at(letter)]), s.y};
            StateId target = intern(q2);
            if (set_intersection_size(q2.x, q2.y) != 1) stats.extraction_sites_ok = false;
            out.add_transition(id, letter, 1, target, t->weight);
          } else if (l_strictly_less(monoid, s.m1, ay)) {
            DetState next{DetState::Kind::q4, 0, s.m1, ay, s.x, s.y};
            out.add_transition(id, letter, -1, intern(next), one(a.semiring()));
          }
          // Incomparable elements: no transition, faithful to the family F.
        }
        return;
      }
    }
  }

  DeterminizeResult build() && {
    DetState sentinel{};
    StateId start = intern(sentinel);
    out.set_initial(start, one(a.semiring()));
    while (!worklist.empty()) {
      StateId id = worklist.front();
      worklist.pop_front();
      expand(id);
    }
    // (X, supp(T)) states are final, weighted by T of the unique shared state.
    for (StateId id = 0; id < det_states.size(); ++id) {
      const DetState& s = det_states[id];
      if (s.kind != DetState::Kind::q2 || s.y != final_support) continue;
      std::size_t hits = set_intersection_size(s.x, final_support);
      if (hits == 0) continue;
      if (hits > 1) {
        throw PreconditionError("ambiguous input: several final states in " + out.state_name(id));
      }
      for (StateId p = 0; p < a.state_count(); ++p) {
        if (s.x[p] && final_support[p]) {
          out.set_final(id, *a.final_weight(p));
        }
      }
    }
    return DeterminizeResult{std::move(out), stats};
  }
};

}  // namespace

DeterminizeResult determinize_with_stats(const OneWayAutomaton& a) {
  if (std::vector<std::string> findings = validate(a); !findings.empty()) {
    throw PreconditionError("invalid input automaton: " + findings.front());
  }
  UnambiguityReport report = check_unambiguous_one_way(a);
  if (!report.unambiguous) {
    throw PreconditionError("input automaton is ambiguous; witness word '" +
                            report.witness.value_or("") + "'");
  }
  return Builder(a).build();
}

TwoWayAutomaton determinize(const OneWayAutomaton& a) {
  return determinize_with_stats(a).automaton;
}

TwoWayAutomaton bounded_trim_two_way(const TwoWayAutomaton& a, std::size_t word_length_bound) {
  std::set<StateId> visited;
  for (const std::string& word : enumerate_words(a.alphabet(), word_length_bound)) {
    for (const Run& run : enumerate_reduced_runs(a, word)) {
      for (const Configuration& c : run.configs) visited.insert(c.state);
    }
  }

  TwoWayAutomaton out(a.semiring());
  out.set_alphabet(std::string(a.alphabet().begin(), a.alphabet().end()));
  std::vector<StateId> remap(a.state_count(), 0);
  std::vector<bool> kept(a.state_count(), false);
  for (StateId s = 0; s < a.state_count(); ++s) {
    if (visited.contains(s)) {
      remap[s] = out.add_state(a.state_name(s));
      kept[s] = true;
    }
  }
  for (const TwoWayTransition& t : a.transitions()) {
    if (kept[t.from] && kept[t.to]) {
      out.add_transition(remap[t.from], t.label, t.direction, remap[t.to], t.weight);
    }
  }
  for (const auto& [s, w] : a.initial()) {
    if (kept[s]) out.set_initial(remap[s], w);
  }
  for (const auto& [s, w] : a.finals()) {
    if (kept[s]) out.set_final(remap[s], w);
  }
  return out;
}

}  // namespace w2a
