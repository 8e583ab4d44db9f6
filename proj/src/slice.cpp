#include "w2a/slice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <span>

namespace w2a {

namespace {

// The matching consumes u and v front-first. In theta mode the next crossing
// of the current letter starts from the u side, in eta mode from the v side;
// the per-state direction decides which rule applies, so the derivation is
// unique on delta-local automata.
struct Matcher {
  const TwoWayAutomaton& a;
  const std::vector<int>& dirs;
  char letter;

  const Weight* edge(StateId from, int direction, StateId to) const {
    const TwoWayTransition* t = a.find_transition(from, letter, direction, to);
    return t ? &t->weight : nullptr;
  }

  std::optional<Weight> theta_mode(std::span<const StateId> u, std::span<const StateId> v) const {
    if (u.empty()) {
      return v.empty() ? std::optional<Weight>(one(a.semiring())) : std::nullopt;
    }
    StateId p = u[0];
    if (dirs[p] > 0) {
      if (v.empty()) return std::nullopt;
      const Weight* w = edge(p, 1, v[0]);
      if (!w) return std::nullopt;
      std::optional<Weight> rest = eta_mode(u.subspan(1), v.subspan(1));
      if (!rest) return std::nullopt;
      return times(*w, *rest);
    }
    if (u.size() < 2) return std::nullopt;
    const Weight* w = edge(p, -1, u[1]);
    if (!w) return std::nullopt;
    std::optional<Weight> rest = theta_mode(u.subspan(2), v);
    if (!rest) return std::nullopt;
    return times(*w, *rest);
  }

  std::optional<Weight> eta_mode(std::span<const StateId> u, std::span<const StateId> v) const {
    if (v.empty()) {
      return u.empty() ? std::optional<Weight>(one(a.semiring())) : std::nullopt;
    }
    StateId p = v[0];
    if (dirs[p] > 0) {
      if (v.size() < 2) return std::nullopt;
      const Weight* w = edge(p, 1, v[1]);
      if (!w) return std::nullopt;
      std::optional<Weight> rest = eta_mode(u, v.subspan(2));
      if (!rest) return std::nullopt;
      return times(*w, *rest);
    }
    if (u.empty()) return std::nullopt;
    const Weight* w = edge(p, -1, u[0]);
    if (!w) return std::nullopt;
    std::optional<Weight> rest = theta_mode(u.subspan(1), v.subspan(1));
    if (!rest) return std::nullopt;
    return times(*w, *rest);
  }
};

std::vector<int> require_slice_preconditions(const TwoWayAutomaton& a) {
  if (!a.semiring().commutative) {
    throw PreconditionError("slice construction requires a commutative semiring; '" +
                            std::string(semiring_name(a.semiring().id)) + "' is not");
  }
  return state_directions(a);  // throws with a witness when not delta-local
}

void check_vector_states(const TwoWayAutomaton& a, const SliceVector& v) {
  for (StateId s : v) {
    if (s >= a.state_count()) throw PreconditionError("slice vector state out of range");
  }
}

// Enumerates every v with a defined matching against u, building v along the
// derivation; parity occupancy prunes to the V universe.
struct SliceBuilder {
  const TwoWayAutomaton& a;
  const std::vector<int>& dirs;
  char letter;
  std::vector<std::pair<SliceVector, Weight>> results;

  SliceVector v;
  std::map<std::pair<StateId, int>, int> occupancy;

  bool push(StateId s) {
    auto key = std::make_pair(s, static_cast<int>(v.size() % 2));
    if (occupancy[key] >= 1) return false;
    ++occupancy[key];
    v.push_back(s);
    return true;
  }

  void pop() {
    StateId s = v.back();
    v.pop_back();
    --occupancy[{s, static_cast<int>(v.size() % 2)}];
  }

  void theta_mode(std::span<const StateId> u, const Weight& acc) {
    if (u.empty()) {
      eta_mode(u, acc);
      return;
    }
    StateId p = u[0];
    if (dirs[p] > 0) {
      for (std::size_t idx : a.transitions_from(p)) {
        const TwoWayTransition& t = a.transitions()[idx];
        if (t.label != letter || t.direction != 1) continue;
        if (!push(t.to)) continue;
        eta_mode(u.subspan(1), times(acc, t.weight));
        pop();
      }
    } else if (u.size() >= 2) {
      const TwoWayTransition* t = a.find_transition(p, letter, -1, u[1]);
      if (t) theta_mode(u.subspan(2), times(acc, t->weight));
    }
  }

  void eta_mode(std::span<const StateId> u, const Weight& acc) {
    if (u.empty() && !v.empty() && !is_zero(acc)) {
      results.emplace_back(v, acc);
    }
    for (const TwoWayTransition& t : a.transitions()) {
      if (t.label != letter || t.direction != 1) continue;
      if (!push(t.from)) continue;
      if (push(t.to)) {
        eta_mode(u, times(acc, t.weight));
        pop();
      }
      pop();
    }
    if (!u.empty()) {
      for (const TwoWayTransition& t : a.transitions()) {
        if (t.label != letter || t.direction != -1 || t.to != u[0]) continue;
        if (!push(t.from)) continue;
        theta_mode(u.subspan(1), times(acc, t.weight));
        pop();
      }
    }
  }
};

}  // namespace

std::optional<Weight> theta(const TwoWayAutomaton& a, const SliceVector& u, char symbol,
                            const SliceVector& v) {
  std::vector<int> dirs = require_slice_preconditions(a);
  check_vector_states(a, u);
  check_vector_states(a, v);
  if (u.size() % 2 == 0 || v.size() % 2 == 0) {
    throw PreconditionError("theta expects odd-length slice vectors");
  }
  return Matcher{a, dirs, symbol}.theta_mode(u, v);
}

std::optional<Weight> eta(const TwoWayAutomaton& a, const SliceVector& u, char symbol,
                          const SliceVector& v) {
  std::vector<int> dirs = require_slice_preconditions(a);
  check_vector_states(a, u);
  check_vector_states(a, v);
  if (u.size() % 2 != 0 || v.size() % 2 != 0) {
    throw PreconditionError("eta expects even-length slice vectors");
  }
  Matcher matcher{a, dirs, symbol};
  // The final-weight form (u, '$', empty) pairs u internally starting from
  // the u side; every other form starts from the v side.
  if (v.empty() && !u.empty()) return matcher.theta_mode(u, v);
  return matcher.eta_mode(u, v);
}

bool in_slice_universe(const SliceVector& v) {
  std::set<std::pair<StateId, int>> seen;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!seen.insert({v[i], static_cast<int>(i % 2)}).second) return false;
  }
  return true;
}

OneWayAutomaton build_slice_automaton(const TwoWayAutomaton& a, bool restrict_to_v) {
  if (!restrict_to_v) {
    throw PreconditionError(
        "the unrestricted slice automaton is infinite; only the V-restricted "
        "construction is supported");
  }
  std::vector<int> dirs = require_slice_preconditions(a);

  OneWayAutomaton result(a.semiring());
  result.set_alphabet(std::string(a.alphabet().begin(), a.alphabet().end()));

  std::map<SliceVector, StateId> states;
  std::vector<SliceVector> vectors;
  std::deque<std::size_t> worklist;
  auto intern = [&](const SliceVector& slice) {
    auto it = states.find(slice);
    if (it != states.end()) return it->second;
    StateId id = result.add_state(format_slice(slice, a));
    states.emplace(slice, id);
    vectors.push_back(slice);
    worklist.push_back(id);
    return id;
  };

  // Initial slices: a state of supp(I) followed by left-marker pairs.
  for (const auto& [p, weight] : a.initial()) {
    SliceBuilder builder{a, dirs, kLeftMarker, {}, {}, {}};
    if (!builder.push(p)) continue;
    builder.eta_mode(std::span<const StateId>(), weight);
    builder.pop();
    for (const auto& [slice, w] : builder.results) {
      result.set_initial(intern(slice), w);
    }
  }

  while (!worklist.empty()) {
    std::size_t id = worklist.front();
    worklist.pop_front();
    SliceVector source = vectors[id];
    for (char letter : a.alphabet()) {
      SliceBuilder builder{a, dirs, letter, {}, {}, {}};
      builder.theta_mode(source, one(a.semiring()));
      for (const auto& [slice, w] : builder.results) {
        result.add_transition(static_cast<StateId>(id), letter, intern(slice), w);
      }
    }
  }

  // Final weights: right-marker pairs inside the slice, then T of its last state.
  for (std::size_t id = 0; id < vectors.size(); ++id) {
    const SliceVector& slice = vectors[id];
    const Weight* final_w = a.final_weight(slice.back());
    if (!final_w) continue;
    std::span<const StateId> prefix(slice.data(), slice.size() - 1);
    std::optional<Weight> marker_part =
        Matcher{a, dirs, kRightMarker}.theta_mode(prefix, std::span<const StateId>());
    if (!marker_part) continue;
    Weight w = times(*marker_part, *final_w);
    if (!is_zero(w)) result.set_final(static_cast<StateId>(id), w);
  }

  return trim_one_way(result);
}

OneWayAutomaton trim_one_way(const OneWayAutomaton& a) {
  const std::size_t n = a.state_count();
  std::vector<bool> accessible(n, false);
  std::deque<StateId> queue;
  for (const auto& [s, w] : a.initial()) {
    accessible[s] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (std::size_t idx : a.transitions_from(s)) {
      StateId to = a.transitions()[idx].to;
      if (!accessible[to]) {
        accessible[to] = true;
        queue.push_back(to);
      }
    }
  }

  std::vector<std::vector<StateId>> reverse(n);
  for (const OneWayTransition& t : a.transitions()) reverse[t.to].push_back(t.from);
  std::vector<bool> co_accessible(n, false);
  for (const auto& [s, w] : a.finals()) {
    co_accessible[s] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId from : reverse[s]) {
      if (!co_accessible[from]) {
        co_accessible[from] = true;
        queue.push_back(from);
      }
    }
  }

  OneWayAutomaton out(a.semiring());
  out.set_alphabet(std::string(a.alphabet().begin(), a.alphabet().end()));
  std::vector<StateId> remap(n, 0);
  std::vector<bool> kept(n, false);
  for (StateId s = 0; s < n; ++s) {
    if (accessible[s] && co_accessible[s]) {
      remap[s] = out.add_state(a.state_name(s));
      kept[s] = true;
    }
  }
  for (const OneWayTransition& t : a.transitions()) {
    if (kept[t.from] && kept[t.to]) {
      out.add_transition(remap[t.from], t.label, remap[t.to], t.weight);
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
