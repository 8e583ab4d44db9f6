#include "w2a/automaton.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

namespace w2a {

namespace {

std::string show_label(char label) { return std::string(1, label); }

std::string show_two_way(const TwoWayAutomaton& a, const TwoWayTransition& t) {
  return "(" + a.state_name(t.from) + ", " + show_label(t.label) + ", " +
         (t.direction > 0 ? "+1" : "-1") + ", " + a.state_name(t.to) + ")";
}

void check_state_id(std::size_t count, StateId s) {
  if (s >= count) throw PreconditionError("state id out of range");
}

void check_direction(int direction) {
  if (direction != -1 && direction != 1) {
    throw PreconditionError("direction must be -1 or +1");
  }
}

std::vector<char> normalize_alphabet(std::string_view letters) {
  std::vector<char> out(letters.begin(), letters.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <typename Automaton>
std::optional<StateId> find_state_impl(const Automaton& a, std::string_view name) {
  for (StateId s = 0; s < a.state_count(); ++s) {
    if (a.state_name(s) == name) return s;
  }
  return std::nullopt;
}

}  // namespace

StateId TwoWayAutomaton::add_state(std::string name) {
  if (find_state(name)) throw PreconditionError("duplicate state name '" + name + "'");
  state_names_.push_back(std::move(name));
  out_.emplace_back();
  return static_cast<StateId>(state_names_.size() - 1);
}

void TwoWayAutomaton::set_alphabet(std::string_view letters) {
  alphabet_ = normalize_alphabet(letters);
}

void TwoWayAutomaton::add_transition(StateId from, char label, int direction, StateId to,
                                     Weight weight) {
  check_state_id(state_count(), from);
  check_state_id(state_count(), to);
  check_direction(direction);
  out_[from].push_back(transitions_.size());
  transitions_.push_back({from, label, direction, to, std::move(weight)});
}

void TwoWayAutomaton::set_initial(StateId state, Weight weight) {
  check_state_id(state_count(), state);
  initial_.insert_or_assign(state, std::move(weight));
}

void TwoWayAutomaton::set_final(StateId state, Weight weight) {
  check_state_id(state_count(), state);
  final_.insert_or_assign(state, std::move(weight));
}

std::optional<StateId> TwoWayAutomaton::find_state(std::string_view name) const {
  return find_state_impl(*this, name);
}

const Weight* TwoWayAutomaton::initial_weight(StateId s) const {
  auto it = initial_.find(s);
  return it == initial_.end() ? nullptr : &it->second;
}

const Weight* TwoWayAutomaton::final_weight(StateId s) const {
  auto it = final_.find(s);
  return it == final_.end() ? nullptr : &it->second;
}

const TwoWayTransition* TwoWayAutomaton::find_transition(StateId from, char label, int direction,
                                                         StateId to) const {
  for (std::size_t idx : out_.at(from)) {
    const TwoWayTransition& t = transitions_[idx];
    if (t.label == label && t.direction == direction && t.to == to) return &t;
  }
  return nullptr;
}

namespace {

template <typename Transition>
std::vector<std::tuple<StateId, char, int, StateId, std::string>> canonical_two_way_edges(
    const std::vector<Transition>& transitions) {
  std::vector<std::tuple<StateId, char, int, StateId, std::string>> out;
  out.reserve(transitions.size());
  for (const auto& t : transitions) {
    out.emplace_back(t.from, t.label, t.direction, t.to, format_weight(t.weight));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool operator==(const TwoWayAutomaton& a, const TwoWayAutomaton& b) {
  return a.semiring_ == b.semiring_ && a.state_names_ == b.state_names_ &&
         a.alphabet_ == b.alphabet_ && a.initial_ == b.initial_ && a.final_ == b.final_ &&
         canonical_two_way_edges(a.transitions_) == canonical_two_way_edges(b.transitions_);
}

StateId OneWayAutomaton::add_state(std::string name) {
  if (find_state(name)) throw PreconditionError("duplicate state name '" + name + "'");
  state_names_.push_back(std::move(name));
  out_.emplace_back();
  return static_cast<StateId>(state_names_.size() - 1);
}

void OneWayAutomaton::set_alphabet(std::string_view letters) {
  alphabet_ = normalize_alphabet(letters);
}

void OneWayAutomaton::add_transition(StateId from, char label, StateId to, Weight weight) {
  check_state_id(state_count(), from);
  check_state_id(state_count(), to);
  out_[from].push_back(transitions_.size());
  transitions_.push_back({from, label, to, std::move(weight)});
}

void OneWayAutomaton::set_initial(StateId state, Weight weight) {
  check_state_id(state_count(), state);
  initial_.insert_or_assign(state, std::move(weight));
}

void OneWayAutomaton::set_final(StateId state, Weight weight) {
  check_state_id(state_count(), state);
  final_.insert_or_assign(state, std::move(weight));
}

std::optional<StateId> OneWayAutomaton::find_state(std::string_view name) const {
  return find_state_impl(*this, name);
}

const Weight* OneWayAutomaton::initial_weight(StateId s) const {
  auto it = initial_.find(s);
  return it == initial_.end() ? nullptr : &it->second;
}

const Weight* OneWayAutomaton::final_weight(StateId s) const {
  auto it = final_.find(s);
  return it == final_.end() ? nullptr : &it->second;
}

namespace {

std::vector<std::tuple<StateId, char, StateId, std::string>> canonical_one_way_edges(
    const std::vector<OneWayTransition>& transitions) {
  std::vector<std::tuple<StateId, char, StateId, std::string>> out;
  out.reserve(transitions.size());
  for (const auto& t : transitions) {
    out.emplace_back(t.from, t.label, t.to, format_weight(t.weight));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool operator==(const OneWayAutomaton& a, const OneWayAutomaton& b) {
  return a.semiring_ == b.semiring_ && a.state_names_ == b.state_names_ &&
         a.alphabet_ == b.alphabet_ && a.initial_ == b.initial_ && a.final_ == b.final_ &&
         canonical_one_way_edges(a.transitions_) == canonical_one_way_edges(b.transitions_);
}

namespace {

template <typename Automaton>
void validate_common(const Automaton& a, std::vector<std::string>& findings) {
  for (char c : a.alphabet()) {
    if (is_marker(c)) {
      findings.push_back("alphabet contains reserved marker '" + show_label(c) + "'");
    }
  }
  for (const auto& [state, weight] : a.initial()) {
    if (weight.semiring_id() != a.semiring().id) {
      findings.push_back("initial weight of " + a.state_name(state) + " has wrong semiring");
    } else if (is_zero(weight)) {
      findings.push_back("initial weight of " + a.state_name(state) + " is the semiring zero");
    }
  }
  for (const auto& [state, weight] : a.finals()) {
    if (weight.semiring_id() != a.semiring().id) {
      findings.push_back("final weight of " + a.state_name(state) + " has wrong semiring");
    } else if (is_zero(weight)) {
      findings.push_back("final weight of " + a.state_name(state) + " is the semiring zero");
    }
  }
}

bool in_alphabet(const std::vector<char>& alphabet, char c) {
  return std::find(alphabet.begin(), alphabet.end(), c) != alphabet.end();
}

}  // namespace

std::vector<std::string> validate(const TwoWayAutomaton& a) {
  std::vector<std::string> findings;
  validate_common(a, findings);
  std::set<std::tuple<StateId, char, int, StateId>> seen;
  for (const TwoWayTransition& t : a.transitions()) {
    const std::string shown = show_two_way(a, t);
    if (t.label == kLeftMarker && t.direction == -1) {
      findings.push_back("transition " + shown + " moves left on the left marker");
    }
    if (t.label == kRightMarker && t.direction == 1) {
      findings.push_back("transition " + shown + " moves right on the right marker");
    }
    if (!is_marker(t.label) && !in_alphabet(a.alphabet(), t.label)) {
      findings.push_back("transition " + shown + " uses a label outside the alphabet");
    }
    if (t.weight.semiring_id() != a.semiring().id) {
      findings.push_back("transition " + shown + " has wrong weight semiring");
    } else if (is_zero(t.weight)) {
      findings.push_back("transition " + shown + " stores the semiring zero");
    }
    if (!seen.insert({t.from, t.label, t.direction, t.to}).second) {
      findings.push_back("duplicate transition " + shown);
    }
  }
  return findings;
}

std::vector<std::string> validate(const OneWayAutomaton& a) {
  std::vector<std::string> findings;
  validate_common(a, findings);
  std::set<std::tuple<StateId, char, StateId>> seen;
  for (const OneWayTransition& t : a.transitions()) {
    const std::string shown =
        "(" + a.state_name(t.from) + ", " + show_label(t.label) + ", " + a.state_name(t.to) + ")";
    if (!in_alphabet(a.alphabet(), t.label)) {
      findings.push_back("transition " + shown + " uses a label outside the alphabet");
    }
    if (t.weight.semiring_id() != a.semiring().id) {
      findings.push_back("transition " + shown + " has wrong weight semiring");
    } else if (is_zero(t.weight)) {
      findings.push_back("transition " + shown + " stores the semiring zero");
    }
    if (!seen.insert({t.from, t.label, t.to}).second) {
      findings.push_back("duplicate transition " + shown);
    }
  }
  return findings;
}

namespace {

// +1, -1, or 0 when the state mixes directions.
int direction_of_state(const TwoWayAutomaton& a, StateId s) {
  bool has_plus = false;
  bool has_minus = false;
  for (std::size_t idx : a.transitions_from(s)) {
    if (a.transitions()[idx].direction > 0) {
      has_plus = true;
    } else {
      has_minus = true;
    }
  }
  if (has_plus && has_minus) return 0;
  if (has_minus) return -1;
  return 1;  // includes transition-less states, by convention in Q+
}

}  // namespace

bool is_delta_local(const TwoWayAutomaton& a) {
  for (StateId s = 0; s < a.state_count(); ++s) {
    if (direction_of_state(a, s) == 0) return false;
  }
  return true;
}

DeltaPartition delta_partition(const TwoWayAutomaton& a) {
  DeltaPartition partition;
  for (StateId s = 0; s < a.state_count(); ++s) {
    switch (direction_of_state(a, s)) {
      case 1: partition.plus.push_back(s); break;
      case -1: partition.minus.push_back(s); break;
      default:
        throw PreconditionError("automaton is not delta-local: state '" + a.state_name(s) +
                                "' has outgoing transitions in both directions");
    }
  }
  return partition;
}

std::vector<int> state_directions(const TwoWayAutomaton& a) {
  std::vector<int> dirs(a.state_count(), 1);
  DeltaPartition partition = delta_partition(a);
  for (StateId s : partition.minus) dirs[s] = -1;
  return dirs;
}

TwoWayDeterminismReport check_deterministic_two_way(const TwoWayAutomaton& a) {
  TwoWayDeterminismReport report;
  if (a.initial().size() > 1) {
    std::string states;
    for (const auto& [s, w] : a.initial()) {
      if (!states.empty()) states += ", ";
      states += a.state_name(s);
    }
    report.violations.push_back("(i) more than one initial state: " + states);
  }
  for (StateId s = 0; s < a.state_count(); ++s) {
    std::map<char, std::size_t> per_label;
    for (std::size_t idx : a.transitions_from(s)) {
      ++per_label[a.transitions()[idx].label];
    }
    for (const auto& [label, count] : per_label) {
      if (count > 1) {
        report.violations.push_back("(ii) state '" + a.state_name(s) + "' has " +
                                    std::to_string(count) + " transitions on label '" +
                                    show_label(label) + "'");
      }
    }
  }
  for (const auto& [s, weight] : a.finals()) {
    for (std::size_t idx : a.transitions_from(s)) {
      if (a.transitions()[idx].label == kRightMarker) {
        report.violations.push_back("(iii) final state '" + a.state_name(s) +
                                    "' has an outgoing transition on the right marker");
        break;
      }
    }
  }
  report.deterministic = report.violations.empty();
  return report;
}

namespace {

struct PairGraph {
  // Support self-product restricted to accessible and co-accessible pairs.
  std::vector<std::pair<StateId, StateId>> pairs;
  std::map<std::pair<StateId, StateId>, std::size_t> index;
  std::vector<std::vector<std::tuple<char, std::size_t>>> edges;  // (letter, target pair)
  std::vector<bool> initial_pair;
  std::vector<bool> final_pair;
};

PairGraph build_self_product(const OneWayAutomaton& a) {
  PairGraph g;
  auto intern = [&g](StateId p, StateId q) {
    auto [it, inserted] = g.index.try_emplace({p, q}, g.pairs.size());
    if (inserted) {
      g.pairs.emplace_back(p, q);
      g.edges.emplace_back();
      g.initial_pair.push_back(false);
      g.final_pair.push_back(false);
    }
    return it->second;
  };
  std::deque<std::size_t> worklist;
  for (const auto& [p, wp] : a.initial()) {
    for (const auto& [q, wq] : a.initial()) {
      std::size_t id = intern(p, q);
      g.initial_pair[id] = true;
      worklist.push_back(id);
    }
  }
  std::set<std::size_t> queued(worklist.begin(), worklist.end());
  while (!worklist.empty()) {
    std::size_t id = worklist.front();
    worklist.pop_front();
    auto [p, q] = g.pairs[id];
    g.final_pair[id] = a.final_weight(p) != nullptr && a.final_weight(q) != nullptr;
    for (std::size_t ip : a.transitions_from(p)) {
      const OneWayTransition& tp = a.transitions()[ip];
      for (std::size_t iq : a.transitions_from(q)) {
        const OneWayTransition& tq = a.transitions()[iq];
        if (tp.label != tq.label) continue;
        std::size_t target = intern(tp.to, tq.to);
        g.edges[id].emplace_back(tp.label, target);
        if (queued.insert(target).second) worklist.push_back(target);
      }
    }
  }
  return g;
}

std::vector<bool> co_accessible_pairs(const PairGraph& g) {
  std::vector<std::vector<std::size_t>> reverse(g.pairs.size());
  for (std::size_t id = 0; id < g.pairs.size(); ++id) {
    for (const auto& [label, target] : g.edges[id]) {
      reverse[target].push_back(id);
    }
  }
  std::vector<bool> seen(g.pairs.size(), false);
  std::deque<std::size_t> worklist;
  for (std::size_t id = 0; id < g.pairs.size(); ++id) {
    if (g.final_pair[id]) {
      seen[id] = true;
      worklist.push_back(id);
    }
  }
  while (!worklist.empty()) {
    std::size_t id = worklist.front();
    worklist.pop_front();
    for (std::size_t prev : reverse[id]) {
      if (!seen[prev]) {
        seen[prev] = true;
        worklist.push_back(prev);
      }
    }
  }
  return seen;
}

// Shortest word from an initial pair to `goal`, then from `goal` to a final pair.
std::string witness_word(const PairGraph& g, const std::vector<bool>& co_access,
                         std::size_t goal) {
  auto bfs = [&g](const std::vector<std::size_t>& sources, auto&& is_goal,
                  const std::vector<bool>& allowed) {
    std::vector<int> parent(g.pairs.size(), -1);
    std::vector<char> letter(g.pairs.size(), 0);
    std::vector<bool> seen(g.pairs.size(), false);
    std::deque<std::size_t> queue;
    for (std::size_t s : sources) {
      if (!allowed[s]) continue;
      seen[s] = true;
      queue.push_back(s);
      if (is_goal(s)) return std::make_pair(std::string(), s);
    }
    while (!queue.empty()) {
      std::size_t id = queue.front();
      queue.pop_front();
      for (const auto& [lab, target] : g.edges[id]) {
        if (!allowed[target] || seen[target]) continue;
        seen[target] = true;
        parent[target] = static_cast<int>(id);
        letter[target] = lab;
        if (is_goal(target)) {
          std::string word;
          for (std::size_t cur = target; parent[cur] >= 0; cur = static_cast<std::size_t>(parent[cur])) {
            word.insert(word.begin(), letter[cur]);
          }
          return std::make_pair(word, target);
        }
        queue.push_back(target);
      }
    }
    throw InternalError("witness extraction failed");
  };

  std::vector<std::size_t> initials;
  for (std::size_t id = 0; id < g.pairs.size(); ++id) {
    if (g.initial_pair[id]) initials.push_back(id);
  }
  auto [prefix, mid] = bfs(initials, [goal](std::size_t id) { return id == goal; }, co_access);
  auto [suffix, fin] = bfs({mid}, [&g](std::size_t id) { return g.final_pair[id]; }, co_access);
  (void)fin;
  return prefix + suffix;
}

}  // namespace

UnambiguityReport check_unambiguous_one_way(const OneWayAutomaton& a) {
  PairGraph g = build_self_product(a);
  std::vector<bool> co_access = co_accessible_pairs(g);
  for (std::size_t id = 0; id < g.pairs.size(); ++id) {
    if (!co_access[id]) continue;
    auto [p, q] = g.pairs[id];
    if (p != q) {
      return {false, witness_word(g, co_access, id)};
    }
  }
  return {true, std::nullopt};
}

bool is_deterministic_one_way(const OneWayAutomaton& a) {
  if (a.initial().size() > 1) return false;
  for (StateId s = 0; s < a.state_count(); ++s) {
    std::set<char> labels;
    for (std::size_t idx : a.transitions_from(s)) {
      if (!labels.insert(a.transitions()[idx].label).second) return false;
    }
  }
  return true;
}

TwoWayAutomaton embed_one_way(const OneWayAutomaton& a) {
  TwoWayAutomaton out(a.semiring());
  for (const std::string& name : a.state_names()) out.add_state(name);
  out.set_alphabet(std::string(a.alphabet().begin(), a.alphabet().end()));
  for (const OneWayTransition& t : a.transitions()) {
    out.add_transition(t.from, t.label, 1, t.to, t.weight);
  }
  for (const auto& [s, w] : a.initial()) out.set_initial(s, w);
  for (const auto& [s, w] : a.finals()) out.set_final(s, w);
  return out;
}

std::vector<std::string> enumerate_words(const std::vector<char>& alphabet, std::size_t max_len) {
  std::vector<std::string> words = {""};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t level_end = words.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (char c : alphabet) {
        words.push_back(words[i] + c);
      }
    }
    level_begin = level_end;
  }
  return words;
}

}  // namespace w2a
