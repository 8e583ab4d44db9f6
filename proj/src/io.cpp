#include "w2a/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace w2a {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

[[noreturn]] void schema_error(const std::string& field, const std::string& message) {
  throw ParseError("document field '" + field + "': " + message);
}

const ordered_json& require_field(const ordered_json& doc, const std::string& field) {
  auto it = doc.find(field);
  if (it == doc.end()) schema_error(field, "missing");
  return *it;
}

std::string require_string(const ordered_json& doc, const std::string& field) {
  const ordered_json& value = require_field(doc, field);
  if (!value.is_string()) schema_error(field, "expected a string");
  return value.get<std::string>();
}

char require_symbol(const ordered_json& value, const std::string& field) {
  if (!value.is_string() || value.get<std::string>().size() != 1) {
    schema_error(field, "expected a single-character string");
  }
  return value.get<std::string>()[0];
}

template <typename Automaton>
void load_states_and_weights(const ordered_json& doc, const SemiringDescriptor& desc,
                             Automaton& a) {
  const ordered_json& states = require_field(doc, "states");
  if (!states.is_array() || states.empty()) schema_error("states", "expected a non-empty array");
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!states[i].is_string()) schema_error("states[" + std::to_string(i) + "]", "expected a string");
    a.add_state(states[i].template get<std::string>());
  }
  for (const char* field : {"initial", "final"}) {
    const ordered_json& weights = require_field(doc, field);
    if (!weights.is_object()) schema_error(field, "expected an object");
    for (const auto& [name, text] : weights.items()) {
      std::optional<StateId> state = a.find_state(name);
      if (!state) schema_error(std::string(field) + "." + name, "unknown state");
      if (!text.is_string()) schema_error(std::string(field) + "." + name, "expected a string weight");
      Weight w = parse_weight(desc, text.template get<std::string>());
      if (std::string(field) == "initial") {
        a.set_initial(*state, std::move(w));
      } else {
        a.set_final(*state, std::move(w));
      }
    }
  }
}

std::string alphabet_field(const ordered_json& doc) {
  const ordered_json& alphabet = require_field(doc, "alphabet");
  if (!alphabet.is_array()) schema_error("alphabet", "expected an array");
  std::string letters;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    char c = require_symbol(alphabet[i], "alphabet[" + std::to_string(i) + "]");
    if (is_marker(c)) {
      schema_error("alphabet[" + std::to_string(i) + "]",
                   std::string("reserved marker '") + c + "' cannot be an alphabet symbol");
    }
    letters += c;
  }
  return letters;
}

void reject_on_findings(const std::vector<std::string>& findings) {
  if (findings.empty()) return;
  std::string message = "document violates automaton invariants:";
  for (const std::string& f : findings) message += "\n  " + f;
  throw ParseError(message);
}

}  // namespace

LoadedAutomaton parse_document(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");

  const ordered_json& version = require_field(doc, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    schema_error("format_version", "expected " + std::to_string(kFormatVersion));
  }
  const std::string kind = require_string(doc, "kind");
  if (kind != "one-way" && kind != "two-way") {
    schema_error("kind", "expected \"one-way\" or \"two-way\"");
  }
  const std::string semiring_id = require_string(doc, "semiring");
  const SemiringDescriptor* desc = find_semiring(semiring_id);
  if (!desc) schema_error("semiring", "unknown semiring '" + semiring_id + "'");

  const ordered_json& transitions = require_field(doc, "transitions");
  if (!transitions.is_array()) schema_error("transitions", "expected an array");

  if (kind == "two-way") {
    TwoWayAutomaton a(*desc);
    load_states_and_weights(doc, *desc, a);
    a.set_alphabet(alphabet_field(doc));
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      const std::string field = "transitions[" + std::to_string(i) + "]";
      const ordered_json& t = transitions[i];
      if (!t.is_object()) schema_error(field, "expected an object");
      std::optional<StateId> from = a.find_state(require_string(t, "from"));
      std::optional<StateId> to = a.find_state(require_string(t, "to"));
      if (!from || !to) schema_error(field, "unknown state");
      char label = require_symbol(require_field(t, "label"), field + ".label");
      const std::string dir = require_string(t, "dir");
      if (dir != "+1" && dir != "-1") schema_error(field + ".dir", "expected \"+1\" or \"-1\"");
      Weight w = parse_weight(*desc, require_string(t, "weight"));
      a.add_transition(*from, label, dir == "+1" ? 1 : -1, *to, std::move(w));
    }
    reject_on_findings(validate(a));
    return a;
  }

  OneWayAutomaton a(*desc);
  load_states_and_weights(doc, *desc, a);
  a.set_alphabet(alphabet_field(doc));
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const std::string field = "transitions[" + std::to_string(i) + "]";
    const ordered_json& t = transitions[i];
    if (!t.is_object()) schema_error(field, "expected an object");
    if (t.contains("dir")) schema_error(field + ".dir", "one-way transitions have no direction");
    std::optional<StateId> from = a.find_state(require_string(t, "from"));
    std::optional<StateId> to = a.find_state(require_string(t, "to"));
    if (!from || !to) schema_error(field, "unknown state");
    char label = require_symbol(require_field(t, "label"), field + ".label");
    Weight w = parse_weight(*desc, require_string(t, "weight"));
    a.add_transition(*from, label, *to, std::move(w));
  }
  reject_on_findings(validate(a));
  return a;
}

LoadedAutomaton load_automaton(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

namespace {

template <typename Automaton>
ordered_json document_header(const Automaton& a, const char* kind) {
  ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = kind;
  doc["semiring"] = std::string(semiring_name(a.semiring().id));
  ordered_json alphabet = ordered_json::array();
  for (char c : a.alphabet()) alphabet.push_back(std::string(1, c));
  doc["alphabet"] = std::move(alphabet);
  doc["states"] = a.state_names();
  ordered_json initial = ordered_json::object();
  for (const auto& [s, w] : a.initial()) initial[a.state_name(s)] = format_weight(w);
  doc["initial"] = std::move(initial);
  ordered_json final_weights = ordered_json::object();
  for (const auto& [s, w] : a.finals()) final_weights[a.state_name(s)] = format_weight(w);
  doc["final"] = std::move(final_weights);
  return doc;
}

}  // namespace

std::string serialize(const TwoWayAutomaton& a) {
  ordered_json doc = document_header(a, "two-way");
  std::vector<TwoWayTransition> sorted = a.transitions();
  std::sort(sorted.begin(), sorted.end(), [](const TwoWayTransition& s, const TwoWayTransition& t) {
    return std::tuple(s.from, s.label, -s.direction, s.to) <
           std::tuple(t.from, t.label, -t.direction, t.to);
  });
  ordered_json transitions = ordered_json::array();
  for (const TwoWayTransition& t : sorted) {
    ordered_json entry;
    entry["from"] = a.state_name(t.from);
    entry["label"] = std::string(1, t.label);
    entry["dir"] = t.direction > 0 ? "+1" : "-1";
    entry["to"] = a.state_name(t.to);
    entry["weight"] = format_weight(t.weight);
    transitions.push_back(std::move(entry));
  }
  doc["transitions"] = std::move(transitions);
  return doc.dump(2) + "\n";
}

std::string serialize(const OneWayAutomaton& a) {
  ordered_json doc = document_header(a, "one-way");
  std::vector<OneWayTransition> sorted = a.transitions();
  std::sort(sorted.begin(), sorted.end(), [](const OneWayTransition& s, const OneWayTransition& t) {
    return std::tuple(s.from, s.label, s.to) < std::tuple(t.from, t.label, t.to);
  });
  ordered_json transitions = ordered_json::array();
  for (const OneWayTransition& t : sorted) {
    ordered_json entry;
    entry["from"] = a.state_name(t.from);
    entry["label"] = std::string(1, t.label);
    entry["to"] = a.state_name(t.to);
    entry["weight"] = format_weight(t.weight);
    transitions.push_back(std::move(entry));
  }
  doc["transitions"] = std::move(transitions);
  return doc.dump(2) + "\n";
}

namespace {

void write_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << text;
}

std::string dot_escape(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

template <typename Automaton>
void dot_nodes(std::ostringstream& out, const Automaton& a) {
  for (StateId s = 0; s < a.state_count(); ++s) {
    std::string label = dot_escape(a.state_name(s));
    if (const Weight* w = a.initial_weight(s)) label += "\\nI:" + dot_escape(format_weight(*w));
    if (const Weight* w = a.final_weight(s)) label += "\\nT:" + dot_escape(format_weight(*w));
    out << "  \"" << dot_escape(a.state_name(s)) << "\" [label=\"" << label << "\"";
    if (a.final_weight(s)) out << " shape=doublecircle";
    out << "];\n";
  }
}

}  // namespace

void save_automaton(const TwoWayAutomaton& a, const std::filesystem::path& path) {
  write_file(serialize(a), path);
}

void save_automaton(const OneWayAutomaton& a, const std::filesystem::path& path) {
  write_file(serialize(a), path);
}

std::string export_dot(const TwoWayAutomaton& a) {
  std::ostringstream out;
  out << "digraph twoway {\n  rankdir=LR;\n  node [shape=circle];\n";
  dot_nodes(out, a);
  std::vector<TwoWayTransition> sorted = a.transitions();
  std::sort(sorted.begin(), sorted.end(), [](const TwoWayTransition& s, const TwoWayTransition& t) {
    return std::tuple(s.from, s.label, -s.direction, s.to) <
           std::tuple(t.from, t.label, -t.direction, t.to);
  });
  for (const TwoWayTransition& t : sorted) {
    out << "  \"" << dot_escape(a.state_name(t.from)) << "\" -> \""
        << dot_escape(a.state_name(t.to)) << "\" [label=\"" << dot_escape(std::string(1, t.label))
        << (t.direction > 0 ? ",→|" : ",←|") << format_weight(t.weight) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_dot(const OneWayAutomaton& a) {
  std::ostringstream out;
  out << "digraph oneway {\n  rankdir=LR;\n  node [shape=circle];\n";
  dot_nodes(out, a);
  std::vector<OneWayTransition> sorted = a.transitions();
  std::sort(sorted.begin(), sorted.end(), [](const OneWayTransition& s, const OneWayTransition& t) {
    return std::tuple(s.from, s.label, s.to) < std::tuple(t.from, t.label, t.to);
  });
  for (const OneWayTransition& t : sorted) {
    out << "  \"" << dot_escape(a.state_name(t.from)) << "\" -> \""
        << dot_escape(a.state_name(t.to)) << "\" [label=\"" << dot_escape(std::string(1, t.label))
        << "|" << format_weight(t.weight) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace w2a
