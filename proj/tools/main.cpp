#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <variant>

#include "w2a/covering.hpp"
#include "w2a/determinize.hpp"
#include "w2a/io.hpp"
#include "w2a/run.hpp"
#include "w2a/slice.hpp"

namespace {

using namespace w2a;

// The empty word is spelled "-" on the command line.
std::string decode_word(const std::string& text) { return text == "-" ? std::string() : text; }

template <typename Automaton>
void check_word(const Automaton& a, const std::string& word) {
  for (char c : word) {
    if (std::find(a.alphabet().begin(), a.alphabet().end(), c) == a.alphabet().end()) {
      throw PreconditionError(std::string("word symbol '") + c + "' is not in the alphabet");
    }
  }
}

template <typename Automaton>
void require_valid(const Automaton& a) {
  std::vector<std::string> findings = validate(a);
  if (!findings.empty()) {
    throw PreconditionError("invalid automaton: " + findings.front());
  }
}

const TwoWayAutomaton& expect_two_way(const LoadedAutomaton& a, const std::string& context) {
  if (!is_two_way(a)) throw PreconditionError(context + " expects a two-way automaton");
  return std::get<TwoWayAutomaton>(a);
}

const OneWayAutomaton& expect_one_way(const LoadedAutomaton& a, const std::string& context) {
  if (is_two_way(a)) throw PreconditionError(context + " expects a one-way automaton");
  return std::get<OneWayAutomaton>(a);
}

Weight eval_any(const LoadedAutomaton& a, const std::string& word) {
  if (is_two_way(a)) {
    const TwoWayAutomaton& m = std::get<TwoWayAutomaton>(a);
    require_valid(m);
    check_word(m, word);
    return evaluate_two_way(m, word);
  }
  const OneWayAutomaton& m = std::get<OneWayAutomaton>(a);
  require_valid(m);
  check_word(m, word);
  return evaluate_one_way(m, word);
}

void cmd_eval(const std::string& file, const std::string& raw_word) {
  std::cout << "WEIGHT " << format_weight(eval_any(load_automaton(file), decode_word(raw_word)))
            << "\n";
}

void cmd_runs(const std::string& file, const std::string& raw_word, bool signatures) {
  LoadedAutomaton loaded = load_automaton(file);
  std::string word = decode_word(raw_word);
  if (is_two_way(loaded)) {
    const TwoWayAutomaton& a = std::get<TwoWayAutomaton>(loaded);
    require_valid(a);
    check_word(a, word);
    std::vector<Run> runs = enumerate_reduced_runs(a, word);
    std::cout << "RUNS " << runs.size() << "\n";
    for (const Run& run : runs) {
      std::cout << "RUN " << format_weight(run_weight(run, a));
      for (const Configuration& c : run.configs) {
        std::cout << " (" << a.state_name(c.state) << "," << c.position << ")";
      }
      std::cout << "\n";
      if (signatures) {
        std::cout << "SIG";
        for (const SliceVector& slice : signature_of(run)) {
          std::cout << " " << format_slice(slice, a);
        }
        std::cout << "\n";
      }
    }
    return;
  }
  if (signatures) throw PreconditionError("--signatures applies to two-way automata only");
  const OneWayAutomaton& a = std::get<OneWayAutomaton>(loaded);
  require_valid(a);
  check_word(a, word);
  // Accepting paths, brute force; fine at CLI scale.
  std::vector<std::vector<StateId>> paths;
  std::vector<Weight> weights;
  std::vector<StateId> stack;
  auto walk = [&](auto&& self, StateId current, std::size_t pos, Weight acc) -> void {
    if (pos == word.size()) {
      if (const Weight* w = a.final_weight(current)) {
        paths.push_back(stack);
        weights.push_back(times(acc, *w));
      }
      return;
    }
    for (std::size_t idx : a.transitions_from(current)) {
      const OneWayTransition& t = a.transitions()[idx];
      if (t.label != word[pos]) continue;
      stack.push_back(t.to);
      self(self, t.to, pos + 1, times(acc, t.weight));
      stack.pop_back();
    }
  };
  for (const auto& [start, weight] : a.initial()) {
    stack = {start};
    walk(walk, start, 0, weight);
  }
  std::cout << "RUNS " << paths.size() << "\n";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::cout << "RUN " << format_weight(weights[i]);
    for (StateId s : paths[i]) std::cout << " " << a.state_name(s);
    std::cout << "\n";
  }
}

void cmd_check(const std::string& file) {
  LoadedAutomaton loaded = load_automaton(file);
  if (is_two_way(loaded)) {
    const TwoWayAutomaton& a = std::get<TwoWayAutomaton>(loaded);
    std::cout << "KIND two-way\n";
    std::vector<std::string> findings = validate(a);
    std::cout << "VALID " << (findings.empty() ? "yes" : "no") << "\n";
    for (const std::string& f : findings) std::cerr << "finding: " << f << "\n";
    std::cout << "DELTA_LOCAL " << (is_delta_local(a) ? "yes" : "no") << "\n";
    TwoWayDeterminismReport det = check_deterministic_two_way(a);
    std::cout << "DETERMINISTIC " << (det.deterministic ? "yes" : "no") << "\n";
    for (const std::string& v : det.violations) std::cerr << "finding: " << v << "\n";
    return;
  }
  const OneWayAutomaton& a = std::get<OneWayAutomaton>(loaded);
  std::cout << "KIND one-way\n";
  std::vector<std::string> findings = validate(a);
  std::cout << "VALID " << (findings.empty() ? "yes" : "no") << "\n";
  for (const std::string& f : findings) std::cerr << "finding: " << f << "\n";
  UnambiguityReport report = check_unambiguous_one_way(a);
  std::cout << "UNAMBIGUOUS " << (report.unambiguous ? "yes" : "no");
  if (report.witness) std::cout << " " << (report.witness->empty() ? "-" : *report.witness);
  std::cout << "\n";
  std::cout << "DETERMINISTIC " << (is_deterministic_one_way(a) ? "yes" : "no") << "\n";
}

void cmd_delta_local(const std::string& in, const std::string& out) {
  LoadedAutomaton loaded = load_automaton(in);
  const TwoWayAutomaton& a = expect_two_way(loaded, "delta-local");
  require_valid(a);
  StateMorphism m = delta_local_in_covering(a);
  save_automaton(m.source, out);
  std::cout << "STATES " << m.source.state_count() << "\n";
}

void cmd_slice(const std::string& in, const std::string& out) {
  LoadedAutomaton loaded = load_automaton(in);
  const TwoWayAutomaton& a = expect_two_way(loaded, "slice");
  require_valid(a);
  OneWayAutomaton slices = build_slice_automaton(a, true);
  save_automaton(slices, out);
  std::cout << "STATES " << slices.state_count() << "\n";
}

void cmd_determinize(const std::string& in, const std::string& out) {
  LoadedAutomaton loaded = load_automaton(in);
  const OneWayAutomaton& a = expect_one_way(loaded, "determinize");
  TwoWayAutomaton det = determinize(a);
  save_automaton(det, out);
  std::cout << "STATES " << det.state_count() << "\n";
}

void cmd_unamb2det(const std::string& in, const std::string& out) {
  LoadedAutomaton loaded = load_automaton(in);
  const TwoWayAutomaton& a = expect_two_way(loaded, "unamb2det");
  require_valid(a);
  StateMorphism m = delta_local_in_covering(a);
  OneWayAutomaton slices = build_slice_automaton(m.source, true);
  TwoWayAutomaton det = determinize(slices);
  save_automaton(det, out);
  std::cout << "STATES " << det.state_count() << "\n";
}

void cmd_equiv(const std::string& file_a, const std::string& file_b, std::size_t max_len) {
  LoadedAutomaton a = load_automaton(file_a);
  LoadedAutomaton b = load_automaton(file_b);
  const std::vector<char>& alphabet = is_two_way(a) ? std::get<TwoWayAutomaton>(a).alphabet()
                                                    : std::get<OneWayAutomaton>(a).alphabet();
  for (const std::string& word : enumerate_words(alphabet, max_len)) {
    Weight wa = eval_any(a, word);
    Weight wb = eval_any(b, word);
    if (!(wa == wb)) {
      std::cout << "EQUIV fail " << (word.empty() ? "-" : word) << " " << format_weight(wa) << " "
                << format_weight(wb) << "\n";
      return;
    }
  }
  std::cout << "EQUIV ok\n";
}

void cmd_dot(const std::string& in) {
  LoadedAutomaton loaded = load_automaton(in);
  if (is_two_way(loaded)) {
    std::cout << export_dot(std::get<TwoWayAutomaton>(loaded));
  } else {
    std::cout << export_dot(std::get<OneWayAutomaton>(loaded));
  }
}

void cmd_trim(const std::string& in, const std::string& out, std::size_t bound) {
  LoadedAutomaton loaded = load_automaton(in);
  if (is_two_way(loaded)) {
    const TwoWayAutomaton& a = std::get<TwoWayAutomaton>(loaded);
    require_valid(a);
    TwoWayAutomaton trimmed = bounded_trim_two_way(a, bound);
    save_automaton(trimmed, out);
    std::cout << "STATES " << trimmed.state_count() << "\n";
  } else {
    OneWayAutomaton trimmed = trim_one_way(std::get<OneWayAutomaton>(loaded));
    save_automaton(trimmed, out);
    std::cout << "STATES " << trimmed.state_count() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "w2a: weighted one-way and two-way automata. Two-way evaluation sums "
      "over reduced runs only (runs without repeated configurations)."};
  app.require_subcommand(1);

  std::string file, file_b, out, word;
  bool signatures = false;
  std::size_t max_len = 6;
  std::size_t bound = 8;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a word ('-' is the empty word)");
  eval->add_option("file", file)->required();
  eval->add_option("word", word)->required();

  CLI::App* runs = app.add_subcommand("runs", "List reduced runs (or one-way accepting paths)");
  runs->add_option("file", file)->required();
  runs->add_option("word", word)->required();
  runs->add_flag("--signatures", signatures, "Print each run's signature");

  CLI::App* check = app.add_subcommand("check", "Report validity and structural properties");
  check->add_option("file", file)->required();

  CLI::App* dlocal = app.add_subcommand("delta-local", "Build the delta-local in-covering");
  dlocal->add_option("in", file)->required();
  dlocal->add_option("out", out)->required();

  CLI::App* slice = app.add_subcommand("slice", "Build the V-restricted slice automaton");
  slice->add_option("in", file)->required();
  slice->add_option("out", out)->required();

  CLI::App* det = app.add_subcommand(
      "determinize", "Deterministic two-way automaton from an unambiguous one-way automaton");
  det->add_option("in", file)->required();
  det->add_option("out", out)->required();

  CLI::App* chain = app.add_subcommand(
      "unamb2det", "delta-local + slice + determinize (commutative semirings)");
  chain->add_option("in", file)->required();
  chain->add_option("out", out)->required();

  CLI::App* equiv = app.add_subcommand("equiv", "Compare weights on all words up to --maxlen");
  equiv->add_option("a", file)->required();
  equiv->add_option("b", file_b)->required();
  equiv->add_option("--maxlen", max_len);

  CLI::App* dot = app.add_subcommand("dot", "Print the automaton in DOT format");
  dot->add_option("in", file)->required();

  CLI::App* trim =
      app.add_subcommand("trim", "Trim (graph-based for one-way, bounded for two-way)");
  trim->add_option("in", file)->required();
  trim->add_option("out", out)->required();
  trim->add_option("--bound", bound, "Word length bound for two-way trimming");

  try {
    app.parse(argc, argv);
    if (eval->parsed()) cmd_eval(file, word);
    if (runs->parsed()) cmd_runs(file, word, signatures);
    if (check->parsed()) cmd_check(file);
    if (dlocal->parsed()) cmd_delta_local(file, out);
    if (slice->parsed()) cmd_slice(file, out);
    if (det->parsed()) cmd_determinize(file, out);
    if (chain->parsed()) cmd_unamb2det(file, out);
    if (equiv->parsed()) cmd_equiv(file, file_b, max_len);
    if (dot->parsed()) cmd_dot(file);
    if (trim->parsed()) cmd_trim(file, out, bound);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
