#include "w2a/covering.hpp"

#include <algorithm>
#include <set>

namespace w2a {

namespace {

std::string show_transition(const TwoWayAutomaton& a, const TwoWayTransition& t) {
  return "(" + a.state_name(t.from) + ", " + std::string(1, t.label) + ", " +
         (t.direction > 0 ? "+1" : "-1") + ", " + a.state_name(t.to) + ")";
}

std::vector<std::vector<StateId>> preimages(const StateMorphism& m) {
  std::vector<std::vector<StateId>> pre(m.target.state_count());
  for (StateId s = 0; s < m.source.state_count(); ++s) {
    pre[m.map.at(s)].push_back(s);
  }
  return pre;
}

void require_surjective_morphism(const StateMorphism& m) {
  std::vector<std::string> violations = check_morphism(m);
  if (!violations.empty()) {
    std::string message = "not a morphism:";
    for (const std::string& v : violations) message += "\n  " + v;
    throw PreconditionError(message);
  }
  if (!check_surjective(m)) {
    throw PreconditionError("morphism is not surjective");
  }
}

}  // namespace

std::vector<std::string> check_morphism(const StateMorphism& m) {
  std::vector<std::string> findings;
  if (m.map.size() != m.source.state_count()) {
    findings.push_back("state map is not total on the source states");
    return findings;
  }
  for (StateId s = 0; s < m.source.state_count(); ++s) {
    if (m.map[s] >= m.target.state_count()) {
      findings.push_back("state map sends '" + m.source.state_name(s) +
                         "' outside the target state set");
      return findings;
    }
  }
  if (m.source.semiring().id != m.target.semiring().id) {
    findings.push_back("source and target use different semirings");
    return findings;
  }
  for (const auto& [p, weight] : m.source.initial()) {
    const Weight* target_weight = m.target.initial_weight(m.map[p]);
    if (!target_weight || !(*target_weight == weight)) {
      findings.push_back("(i) initial weight of '" + m.source.state_name(p) +
                         "' is not preserved");
    }
  }
  for (const auto& [p, weight] : m.source.finals()) {
    const Weight* target_weight = m.target.final_weight(m.map[p]);
    if (!target_weight || !(*target_weight == weight)) {
      findings.push_back("(ii) final weight of '" + m.source.state_name(p) +
                         "' is not preserved");
    }
  }
  for (const TwoWayTransition& t : m.source.transitions()) {
    const TwoWayTransition* image =
        m.target.find_transition(m.map[t.from], t.label, t.direction, m.map[t.to]);
    if (!image) {
      findings.push_back("(iii) image of " + show_transition(m.source, t) +
                         " is not a target transition");
    } else if (!(image->weight == t.weight)) {
      findings.push_back("(iii) image of " + show_transition(m.source, t) +
                         " carries a different weight");
    }
  }
  return findings;
}

bool check_surjective(const StateMorphism& m) {
  std::set<StateId> states;
  for (StateId s = 0; s < m.source.state_count(); ++s) states.insert(m.map[s]);
  if (states.size() != m.target.state_count()) return false;

  std::set<StateId> initials;
  for (const auto& [p, w] : m.source.initial()) initials.insert(m.map[p]);
  std::set<StateId> target_initials;
  for (const auto& [r, w] : m.target.initial()) target_initials.insert(r);
  if (initials != target_initials) return false;

  std::set<StateId> finals;
  for (const auto& [p, w] : m.source.finals()) finals.insert(m.map[p]);
  std::set<StateId> target_finals;
  for (const auto& [r, w] : m.target.finals()) target_finals.insert(r);
  if (finals != target_finals) return false;

  std::set<std::tuple<StateId, char, int, StateId>> images;
  for (const TwoWayTransition& t : m.source.transitions()) {
    images.insert({m.map[t.from], t.label, t.direction, m.map[t.to]});
  }
  return images.size() == m.target.transitions().size();
}

bool check_covering(const StateMorphism& m) {
  require_surjective_morphism(m);
  std::vector<std::vector<StateId>> pre = preimages(m);

  // i) final target states only have final preimages
  for (const auto& [r, w] : m.target.finals()) {
    for (StateId p : pre[r]) {
      if (!m.source.final_weight(p)) return false;
    }
  }
  // ii) each initial target state has exactly one initial preimage
  for (const auto& [r, w] : m.target.initial()) {
    std::size_t count = 0;
    for (StateId p : pre[r]) {
      if (m.source.initial_weight(p)) ++count;
    }
    if (count != 1) return false;
  }
  // iii) unique outgoing lift per transition and source preimage
  for (const TwoWayTransition& t : m.target.transitions()) {
    for (StateId p : pre[t.from]) {
      std::size_t count = 0;
      for (std::size_t idx : m.source.transitions_from(p)) {
        const TwoWayTransition& candidate = m.source.transitions()[idx];
        if (candidate.label == t.label && candidate.direction == t.direction &&
            m.map[candidate.to] == t.to) {
          ++count;
        }
      }
      if (count != 1) return false;
    }
  }
  return true;
}

bool check_in_covering(const StateMorphism& m) {
  require_surjective_morphism(m);
  std::vector<std::vector<StateId>> pre = preimages(m);

  // i) initial target states only have initial preimages
  for (const auto& [r, w] : m.target.initial()) {
    for (StateId p : pre[r]) {
      if (!m.source.initial_weight(p)) return false;
    }
  }
  // ii) each final target state has exactly one final preimage
  for (const auto& [r, w] : m.target.finals()) {
    std::size_t count = 0;
    for (StateId p : pre[r]) {
      if (m.source.final_weight(p)) ++count;
    }
    if (count != 1) return false;
  }
  // iii) unique incoming lift per transition and target preimage
  for (const TwoWayTransition& t : m.target.transitions()) {
    for (StateId q : pre[t.to]) {
      std::size_t count = 0;
      for (const TwoWayTransition& candidate : m.source.transitions()) {
        if (candidate.to == q && candidate.label == t.label &&
            candidate.direction == t.direction && m.map[candidate.from] == t.from) {
          ++count;
        }
      }
      if (count != 1) return false;
    }
  }
  return true;
}

namespace {

Run lift_forward(const StateMorphism& m, const Run& target_run,
                 const std::vector<std::vector<StateId>>& pre) {
  Run lifted{target_run.word, {}};
  StateId first = target_run.configs.front().state;
  std::optional<StateId> current;
  for (StateId p : pre[first]) {
    if (m.source.initial_weight(p)) current = p;
  }
  if (!current) throw InternalError("lift_run: no initial preimage");
  lifted.configs.push_back({*current, target_run.configs.front().position});
  for (std::size_t j = 0; j + 1 < target_run.configs.size(); ++j) {
    const Configuration& cur = target_run.configs[j];
    const Configuration& next = target_run.configs[j + 1];
    char label = label_at(target_run.word, cur.position);
    int direction = next.position - cur.position;
    std::optional<StateId> successor;
    for (std::size_t idx : m.source.transitions_from(*current)) {
      const TwoWayTransition& candidate = m.source.transitions()[idx];
      if (candidate.label == label && candidate.direction == direction &&
          m.map[candidate.to] == next.state) {
        successor = candidate.to;
      }
    }
    if (!successor) throw InternalError("lift_run: missing outgoing lift");
    current = successor;
    lifted.configs.push_back({*current, next.position});
  }
  return lifted;
}

Run lift_backward(const StateMorphism& m, const Run& target_run,
                  const std::vector<std::vector<StateId>>& pre) {
  Run lifted{target_run.word, std::vector<Configuration>(target_run.configs.size(), {0, 0})};
  StateId last = target_run.configs.back().state;
  std::optional<StateId> current;
  for (StateId p : pre[last]) {
    if (m.source.final_weight(p)) current = p;
  }
  if (!current) throw InternalError("lift_run: no final preimage");
  lifted.configs.back() = {*current, target_run.configs.back().position};
  for (std::size_t j = target_run.configs.size() - 1; j > 0; --j) {
    const Configuration& prev = target_run.configs[j - 1];
    const Configuration& cur = target_run.configs[j];
    char label = label_at(target_run.word, prev.position);
    int direction = cur.position - prev.position;
    std::optional<StateId> predecessor;
    for (const TwoWayTransition& candidate : m.source.transitions()) {
      if (candidate.to == *current && candidate.label == label &&
          candidate.direction == direction && m.map[candidate.from] == prev.state) {
        predecessor = candidate.from;
      }
    }
    if (!predecessor) throw InternalError("lift_run: missing incoming lift");
    current = predecessor;
    lifted.configs[j - 1] = {*current, prev.position};
  }
  return lifted;
}

}  // namespace

Run lift_run(const StateMorphism& m, const Run& target_run) {
  if (target_run.configs.empty()) throw PreconditionError("cannot lift an empty run");
  std::vector<std::vector<StateId>> pre = preimages(m);
  if (check_covering(m)) return lift_forward(m, target_run, pre);
  if (check_in_covering(m)) return lift_backward(m, target_run, pre);
  throw PreconditionError("morphism is neither a covering nor an in-covering");
}

StateMorphism delta_local_in_covering(const TwoWayAutomaton& a) {
  enum class Kind { single_plus, single_minus, both };
  std::vector<Kind> kind(a.state_count());
  for (StateId s = 0; s < a.state_count(); ++s) {
    bool has_plus = false;
    bool has_minus = false;
    for (std::size_t idx : a.transitions_from(s)) {
      (a.transitions()[idx].direction > 0 ? has_plus : has_minus) = true;
    }
    kind[s] = has_plus && has_minus ? Kind::both
              : has_minus           ? Kind::single_minus
                                    : Kind::single_plus;
  }

  TwoWayAutomaton covering(a.semiring());
  std::vector<StateId> map;                       // covering state -> original state
  std::vector<StateId> plus_copy(a.state_count());  // original -> +1-emitting copy
  std::vector<StateId> minus_copy(a.state_count(), 0);
  std::vector<bool> is_minus_duplicate;           // per covering state: a P- copy?
  for (StateId s = 0; s < a.state_count(); ++s) {
    if (kind[s] == Kind::both) {
      StateId p = covering.add_state(a.state_name(s) + "+");
      StateId n = covering.add_state(a.state_name(s) + "-");
      plus_copy[s] = p;
      minus_copy[s] = n;
      map.push_back(s);
      map.push_back(s);
      is_minus_duplicate.push_back(false);
      is_minus_duplicate.push_back(true);
    } else {
      StateId c = covering.add_state(a.state_name(s));
      plus_copy[s] = c;
      minus_copy[s] = c;
      map.push_back(s);
      is_minus_duplicate.push_back(false);
    }
  }
  covering.set_alphabet(std::string(a.alphabet().begin(), a.alphabet().end()));

  auto emits_direction = [&](StateId original, StateId copy, int direction) {
    if (kind[original] == Kind::single_plus) return direction == 1;
    if (kind[original] == Kind::single_minus) return direction == -1;
    return direction == 1 ? copy == plus_copy[original] : copy == minus_copy[original];
  };

  for (const TwoWayTransition& t : a.transitions()) {
    std::vector<StateId> sources = {plus_copy[t.from]};
    if (minus_copy[t.from] != plus_copy[t.from]) sources.push_back(minus_copy[t.from]);
    std::vector<StateId> targets = {plus_copy[t.to]};
    if (minus_copy[t.to] != plus_copy[t.to]) targets.push_back(minus_copy[t.to]);
    for (StateId source : sources) {
      if (!emits_direction(t.from, source, t.direction)) continue;
      for (StateId target : targets) {
        covering.add_transition(source, t.label, t.direction, target, t.weight);
      }
    }
  }
  for (const auto& [s, weight] : a.initial()) {
    covering.set_initial(plus_copy[s], weight);
    if (minus_copy[s] != plus_copy[s]) covering.set_initial(minus_copy[s], weight);
  }
  for (const auto& [s, weight] : a.finals()) {
    // P- copies are excluded from the final states.
    covering.set_final(plus_copy[s], weight);
  }

  return StateMorphism{std::move(covering), a, std::move(map)};
}

}  // namespace w2a
