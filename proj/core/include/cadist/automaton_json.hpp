#pragma once

#include <iosfwd>
#include <string>

#include "cadist/automaton.hpp"

namespace cadist {

/// JSON wire format:
///   {"tapes": k, "alphabet": [..names..], "states": N, "initial": i,
///    "accepting": [..], "transitions": [{"from": q, "label": ["a","$"],
///    "to": [q']}]}
/// Padding is always serialized as "$". The loader rejects invariant
/// violations with a position-annotated error.
SyncAutomaton automaton_from_json_text(const std::string& text);
SyncAutomaton automaton_from_json_file(const std::string& path);
std::string automaton_to_json_text(const SyncAutomaton& a);
void automaton_to_json_file(const SyncAutomaton& a, const std::string& path);

}  // namespace cadist
