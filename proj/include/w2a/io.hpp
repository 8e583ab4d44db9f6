#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "w2a/automaton.hpp"

namespace w2a {

using LoadedAutomaton = std::variant<OneWayAutomaton, TwoWayAutomaton>;

inline bool is_two_way(const LoadedAutomaton& a) {
  return std::holds_alternative<TwoWayAutomaton>(a);
}

/// Parses an automaton document; throws ParseError with the offending field
/// on schema violations, unknown semirings, or marker misuse.
LoadedAutomaton parse_document(const std::string& text);
LoadedAutomaton load_automaton(const std::filesystem::path& path);

/// Canonical serialization: fixed field order, sorted transitions.
std::string serialize(const TwoWayAutomaton& a);
std::string serialize(const OneWayAutomaton& a);
void save_automaton(const TwoWayAutomaton& a, const std::filesystem::path& path);
void save_automaton(const OneWayAutomaton& a, const std::filesystem::path& path);

std::string export_dot(const TwoWayAutomaton& a);
std::string export_dot(const OneWayAutomaton& a);

}  // namespace w2a
