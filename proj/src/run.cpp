#include "w2a/run.hpp"

#include <algorithm>
#include <set>

namespace w2a {

char label_at(const std::string& word, int position) {
  if (position == 0) return kLeftMarker;
  if (position == static_cast<int>(word.size()) + 1) return kRightMarker;
  if (position < 0 || position > static_cast<int>(word.size()) + 1) {
    throw InternalError("head position out of range");
  }
  return word[static_cast<std::size_t>(position - 1)];
}

std::vector<std::string> validate_run(const TwoWayAutomaton& a, const Run& run) {
  std::vector<std::string> findings;
  if (run.configs.empty()) {
    findings.push_back("run has no configuration");
    return findings;
  }
  const int end = static_cast<int>(run.word.size()) + 1;
  if (run.configs.front().position != 1) findings.push_back("run does not start at position 1");
  if (run.configs.back().position != end) {
    findings.push_back("run does not end at position n+1");
  }
  if (!a.initial_weight(run.configs.front().state)) {
    findings.push_back("first state is not initial");
  }
  if (!a.final_weight(run.configs.back().state)) {
    findings.push_back("last state is not final");
  }
  for (std::size_t j = 0; j + 1 < run.configs.size(); ++j) {
    const Configuration& cur = run.configs[j];
    const Configuration& next = run.configs[j + 1];
    const int direction = next.position - cur.position;
    if (direction != 1 && direction != -1) {
      findings.push_back("step " + std::to_string(j) + " does not move by one cell");
      continue;
    }
    char label = label_at(run.word, cur.position);
    if (!a.find_transition(cur.state, label, direction, next.state)) {
      findings.push_back("step " + std::to_string(j) + " uses a missing transition (" +
                         a.state_name(cur.state) + ", " + std::string(1, label) + ", " +
                         (direction > 0 ? "+1" : "-1") + ", " + a.state_name(next.state) + ")");
    }
  }
  return findings;
}

namespace {

struct RunSearch {
  const TwoWayAutomaton& a;
  std::string word;
  int end_position;
  std::vector<Run>& out;
  std::vector<Configuration> path;
  std::set<Configuration> visited;  // configurations at index >= 1

  void explore(Configuration config) {
    if (config.position == end_position && a.final_weight(config.state)) {
      out.push_back({word, path});
    }
    char label = label_at(word, config.position);
    std::vector<std::pair<Configuration, const TwoWayTransition*>> next;
    for (std::size_t idx : a.transitions_from(config.state)) {
      const TwoWayTransition& t = a.transitions()[idx];
      if (t.label != label) continue;
      next.push_back({{t.to, config.position + t.direction}, &t});
    }
    std::sort(next.begin(), next.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [successor, t] : next) {
      if (visited.contains(successor)) continue;
      visited.insert(successor);
      path.push_back(successor);
      explore(successor);
      path.pop_back();
      visited.erase(successor);
    }
  }
};

}  // namespace

std::vector<Run> enumerate_reduced_runs(const TwoWayAutomaton& a, std::string_view word) {
  std::vector<Run> runs;
  RunSearch search{a, std::string(word), static_cast<int>(word.size()) + 1, runs, {}, {}};
  for (const auto& [state, weight] : a.initial()) {
    Configuration start{state, 1};
    search.path = {start};
    search.visited.clear();
    search.explore(start);
  }
  return runs;
}

Weight run_weight(const Run& run, const TwoWayAutomaton& a) {
  if (run.configs.empty()) throw InternalError("run has no configuration");
  const Weight* initial = a.initial_weight(run.configs.front().state);
  const Weight* final_w = a.final_weight(run.configs.back().state);
  if (!initial || !final_w) throw InternalError("run endpoints are not initial/final");
  Weight acc = *initial;
  for (std::size_t j = 0; j + 1 < run.configs.size(); ++j) {
    const Configuration& cur = run.configs[j];
    const Configuration& next = run.configs[j + 1];
    const TwoWayTransition* t = a.find_transition(cur.state, label_at(run.word, cur.position),
                                                  next.position - cur.position, next.state);
    if (!t) throw InternalError("run uses a missing transition");
    acc = times(acc, t->weight);
  }
  return times(acc, *final_w);
}

Weight evaluate_two_way(const TwoWayAutomaton& a, std::string_view word) {
  Weight acc = zero(a.semiring());
  for (const Run& run : enumerate_reduced_runs(a, word)) {
    acc = plus(acc, run_weight(run, a));
  }
  return acc;
}

Weight evaluate_one_way(const OneWayAutomaton& a, std::string_view word) {
  std::map<StateId, Weight> current(a.initial().begin(), a.initial().end());
  for (char letter : word) {
    std::map<StateId, Weight> next;
    for (const auto& [state, acc] : current) {
      for (std::size_t idx : a.transitions_from(state)) {
        const OneWayTransition& t = a.transitions()[idx];
        if (t.label != letter) continue;
        Weight product = times(acc, t.weight);
        auto [it, inserted] = next.try_emplace(t.to, product);
        if (!inserted) it->second = plus(it->second, product);
      }
    }
    current = std::move(next);
  }
  Weight result = zero(a.semiring());
  for (const auto& [state, acc] : current) {
    if (const Weight* final_w = a.final_weight(state)) {
      result = plus(result, times(acc, *final_w));
    }
  }
  return result;
}

Signature signature_of(const Run& run) {
  const std::size_t slices = run.word.size() + 1;
  Signature signature(slices);
  if (run.configs.empty()) return signature;
  signature[0].push_back(run.configs[0].state);
  for (std::size_t r = 1; r < run.configs.size(); ++r) {
    const int from = run.configs[r - 1].position;
    const int to = run.configs[r].position;
    const int boundary = std::max(from, to);  // move crosses (boundary-1 | boundary)
    if (boundary >= 1 && boundary <= static_cast<int>(slices)) {
      signature[static_cast<std::size_t>(boundary) - 1].push_back(run.configs[r].state);
    }
  }
  return signature;
}

bool is_reduced(const Run& run) {
  std::set<Configuration> seen;
  for (std::size_t r = 1; r < run.configs.size(); ++r) {
    if (!seen.insert(run.configs[r]).second) return false;
  }
  return true;
}

Run reduce_run(Run run) {
  while (true) {
    bool excised = false;
    for (std::size_t m = 1; m < run.configs.size() && !excised; ++m) {
      for (std::size_t n = m + 1; n < run.configs.size(); ++n) {
        if (run.configs[m] == run.configs[n]) {
          run.configs.erase(run.configs.begin() + static_cast<std::ptrdiff_t>(m),
                            run.configs.begin() + static_cast<std::ptrdiff_t>(n));
          excised = true;
          break;
        }
      }
    }
    if (!excised) return run;
  }
}

std::string format_slice(const SliceVector& slice, const TwoWayAutomaton& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < slice.size(); ++i) {
    if (i > 0) out += ';';
    out += a.state_name(slice[i]);
  }
  out += ']';
  return out;
}

}  // namespace w2a
