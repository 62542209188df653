#include "cadist/automaton_json.hpp"

#include <fstream>

#include <json.hpp>

namespace cadist {

namespace {
using nlohmann::json;

Symbol symbol_at(const Alphabet& alpha, const json& j, const std::string& where) {
  if (!j.is_string()) throw BadInput(where + ": label entry must be a string");
  std::string s = j.get<std::string>();
  if (s == "$") return kPad;
  if (!alpha.has(s)) throw BadInput(where + ": unknown letter \"" + s + "\"");
  return alpha.index(s);
}

}  // namespace

SyncAutomaton automaton_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw BadInput(std::string("automaton JSON parse error: ") + e.what());
  }
  for (const char* key : {"tapes", "alphabet", "states", "initial", "accepting", "transitions"})
    if (!j.contains(key)) throw BadInput(std::string("automaton JSON: missing field \"") + key + "\"");

  int tapes = j.at("tapes").get<int>();
  Alphabet alpha(j.at("alphabet").get<std::vector<std::string>>());
  int states = j.at("states").get<int>();
  int initial = j.at("initial").get<int>();
  if (initial < 0 || initial >= states) throw BadInput("automaton JSON: initial state out of range");
  std::vector<int> acc;
  for (std::size_t i = 0; i < j.at("accepting").size(); ++i) {
    int q = j.at("accepting")[i].get<int>();
    if (q < 0 || q >= states)
      throw BadInput("automaton JSON: accepting[" + std::to_string(i) + "] out of range");
    acc.push_back(q);
  }
  SyncAutomaton a(tapes, alpha, states, initial, acc);
  const json& tr = j.at("transitions");
  for (std::size_t i = 0; i < tr.size(); ++i) {
    std::string where = "transitions[" + std::to_string(i) + "]";
    const json& t = tr[i];
    for (const char* key : {"from", "label", "to"})
      if (!t.contains(key)) throw BadInput(where + ": missing field \"" + key + "\"");
    int from = t.at("from").get<int>();
    if (from < 0 || from >= states) throw BadInput(where + ": \"from\" out of range");
    const json& lbl = t.at("label");
    if (static_cast<int>(lbl.size()) != tapes)
      throw BadInput(where + ": label arity " + std::to_string(lbl.size()) + " != tapes");
    PaddedTuple label;
    for (const auto& e : lbl) label.push_back(symbol_at(alpha, e, where));
    if (all_padding(label)) throw BadInput(where + ": all-padding label");
    for (const auto& e : t.at("to")) {
      int to = e.get<int>();
      if (to < 0 || to >= states) throw BadInput(where + ": \"to\" out of range");
      a.add_transition(from, label, to);
    }
  }
  a.freeze();
  if (!a.padding_closed()) throw BadInput("automaton JSON: padding closure violated");
  return a;
}

SyncAutomaton automaton_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open automaton file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return automaton_from_json_text(text);
  } catch (const BadInput& e) {
    throw BadInput(path + ": " + e.what());
  }
}

std::string automaton_to_json_text(const SyncAutomaton& a) {
  json j;
  j["tapes"] = a.tapes();
  j["alphabet"] = a.alphabet().letters();
  j["states"] = a.num_states();
  j["initial"] = a.initial();
  j["accepting"] = a.accepting_states();
  json tr = json::array();
  for (int q = 0; q < a.num_states(); ++q) {
    // Merge parallel transitions into one "to" list per label.
    std::map<PaddedTuple, std::vector<int>> by_label;
    for (const auto& t : a.transitions_from(q)) by_label[t.label].push_back(t.to);
    for (const auto& [label, tos] : by_label) {
      json names = json::array();
      for (Symbol s : label) names.push_back(a.alphabet().name(s));
      tr.push_back({{"from", q}, {"label", names}, {"to", tos}});
    }
  }
  j["transitions"] = tr;
  return j.dump(2) + "\n";
}

void automaton_to_json_file(const SyncAutomaton& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw BadInput("cannot write automaton file: " + path);
  out << automaton_to_json_text(a);
}

}  // namespace cadist
