#include "cadist/combine.hpp"

#include <map>
#include <tuple>

#include "cadist/automaton_ops.hpp"

namespace cadist {

namespace {

std::vector<std::string> pair_names(const Alphabet& a, const Alphabet& b) {
  // Declared order: comp1-major, with the filler "#" ranked after real
  // letters, "#|#" omitted.
  std::vector<std::string> names;
  for (int i = 0; i <= a.size(); ++i) {
    std::string left = i < a.size() ? a.name(static_cast<Symbol>(i)) : "#";
    for (int j = 0; j <= b.size(); ++j) {
      if (i == a.size() && j == b.size()) continue;
      std::string right = j < b.size() ? b.name(static_cast<Symbol>(j)) : "#";
      names.push_back(left + "|" + right);
    }
  }
  return names;
}

}  // namespace

PairScheme::PairScheme(Alphabet comp1, Alphabet comp2)
    : comp1_(std::move(comp1)), comp2_(std::move(comp2)),
      pair_(pair_names(comp1_, comp2_)) {}

Symbol PairScheme::component(Symbol pair_letter, int i) const {
  if (pair_letter < 0 || pair_letter >= pair_.size())
    throw BadInput("PairScheme::component: bad letter");
  int c1 = pair_letter / (comp2_.size() + 1);
  int c2 = pair_letter % (comp2_.size() + 1);
  int c = i == 0 ? c1 : c2;
  int n = i == 0 ? comp1_.size() : comp2_.size();
  return c == n ? kPad : static_cast<Symbol>(c);
}

Symbol PairScheme::letter(Symbol c1, Symbol c2) const {
  if (c1 == kPad && c2 == kPad) throw BadInput("PairScheme::letter: both components absent");
  int i = c1 == kPad ? comp1_.size() : c1;
  int j = c2 == kPad ? comp2_.size() : c2;
  return static_cast<Symbol>(i * (comp2_.size() + 1) + j);
}

std::vector<Symbol> PairScheme::zip(const std::vector<Symbol>& w1,
                                    const std::vector<Symbol>& w2) const {
  std::vector<Symbol> out;
  std::size_t n = std::max(w1.size(), w2.size());
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(letter(i < w1.size() ? w1[i] : kPad, i < w2.size() ? w2[i] : kPad));
  return out;
}

std::pair<std::vector<Symbol>, std::vector<Symbol>> PairScheme::unzip(
    const std::vector<Symbol>& w) const {
  std::pair<std::vector<Symbol>, std::vector<Symbol>> out;
  for (Symbol s : w) {
    Symbol c1 = component(s, 0), c2 = component(s, 1);
    if (c1 != kPad) out.first.push_back(c1);
    if (c2 != kPad) out.second.push_back(c2);
  }
  return out;
}

SyncAutomaton pair_language(const SyncAutomaton& language) {
  if (language.tapes() != 1) throw BadInput("pair_language: needs a 1-tape automaton");
  return product(cylindrify(language, 2, {0}), cylindrify(language, 2, {1}));
}

namespace {

// (component char or kPad for "ended", successor state). Freezing in an
// accepting state is the only way a component may end; thereafter it stays
// ended. kNoState marks the frozen successor slot as "unchanged".
struct CompMove {
  Symbol ch;
  int to;
  bool freeze;
};

// Moves available to component i in state q (done = already ended).
// `arity` is 1 for language components, 2 for relation components; for
// relations `ch`/`ch2` are the two tape characters.
struct CompMove2 {
  Symbol ch, ch2;
  int to;
  bool freeze;
};

}  // namespace

SyncAutomaton combine_1tape(const PairScheme& ps, const SyncAutomaton& l1,
                            const SyncAutomaton& l2) {
  if (l1.tapes() != 1 || l2.tapes() != 1)
    throw BadInput("combine_1tape: components must be 1-tape");
  auto moves = [](const SyncAutomaton& l, int q, bool done) {
    std::vector<CompMove> out;
    if (done) {
      out.push_back({kPad, q, false});
      return out;
    }
    for (const auto& t : l.transitions_from(q)) out.push_back({t.label[0], t.to, false});
    if (l.is_accepting(q)) out.push_back({kPad, q, true});
    return out;
  };

  std::map<std::tuple<int, int, int>, int> ids;
  std::vector<std::tuple<int, int, int>> todo;
  auto id_of = [&](int q1, int q2, int done) {
    auto key = std::make_tuple(q1, q2, done);
    auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
    if (fresh) todo.push_back(key);
    return it->second;
  };
  id_of(l1.initial(), l2.initial(), 0);

  std::vector<std::tuple<int, PaddedTuple, int>> edges;
  std::vector<int> accepting;
  for (std::size_t head = 0; head < todo.size(); ++head) {
    auto [q1, q2, done] = todo[head];
    int from = ids.at(todo[head]);
    if (l1.is_accepting(q1) && l2.is_accepting(q2)) accepting.push_back(from);
    for (const auto& m1 : moves(l1, q1, done & 1))
      for (const auto& m2 : moves(l2, q2, (done >> 1) & 1)) {
        if (m1.ch == kPad && m2.ch == kPad) continue;  // the pair word just ends
        int ndone = done | (m1.freeze || (done & 1) ? 1 : 0) |
                    (m2.freeze || (done & 2) ? 2 : 0);
        int to = id_of(m1.to, m2.to, ndone);
        edges.emplace_back(from, PaddedTuple{ps.letter(m1.ch, m2.ch)}, to);
      }
  }

  SyncAutomaton out(1, ps.pair_alphabet(), static_cast<int>(ids.size()),
                    ids.at(std::make_tuple(l1.initial(), l2.initial(), 0)), accepting);
  for (const auto& [f, lbl, t] : edges) out.add_transition(f, lbl, t);
  out.freeze();
  return out.trimmed();
}

SyncAutomaton combine_2tape(const PairScheme& ps, const SyncAutomaton& r1,
                            const SyncAutomaton& r2) {
  if (r1.tapes() != 2 || r2.tapes() != 2)
    throw BadInput("combine_2tape: components must be 2-tape");
  auto moves = [](const SyncAutomaton& r, int q, bool done) {
    std::vector<CompMove2> out;
    if (done) {
      out.push_back({kPad, kPad, q, false});
      return out;
    }
    for (const auto& t : r.transitions_from(q))
      out.push_back({t.label[0], t.label[1], t.to, false});
    if (r.is_accepting(q)) out.push_back({kPad, kPad, q, true});
    return out;
  };
  auto pack = [&](Symbol a, Symbol b) {  // one tape's pair letter, kPad if both ended
    return (a == kPad && b == kPad) ? kPad : ps.letter(a, b);
  };

  std::map<std::tuple<int, int, int>, int> ids;
  std::vector<std::tuple<int, int, int>> todo;
  auto id_of = [&](int q1, int q2, int done) {
    auto key = std::make_tuple(q1, q2, done);
    auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
    if (fresh) todo.push_back(key);
    return it->second;
  };
  id_of(r1.initial(), r2.initial(), 0);

  std::vector<std::tuple<int, PaddedTuple, int>> edges;
  std::vector<int> accepting;
  for (std::size_t head = 0; head < todo.size(); ++head) {
    auto [q1, q2, done] = todo[head];
    int from = ids.at(todo[head]);
    if (r1.is_accepting(q1) && r2.is_accepting(q2)) accepting.push_back(from);
    for (const auto& m1 : moves(r1, q1, done & 1))
      for (const auto& m2 : moves(r2, q2, (done >> 1) & 1)) {
        Symbol u = pack(m1.ch, m2.ch), v = pack(m1.ch2, m2.ch2);
        if (u == kPad && v == kPad) continue;
        int ndone = done | (m1.freeze || (done & 1) ? 1 : 0) |
                    (m2.freeze || (done & 2) ? 2 : 0);
        int to = id_of(m1.to, m2.to, ndone);
        edges.emplace_back(from, PaddedTuple{u, v}, to);
      }
  }

  SyncAutomaton out(2, ps.pair_alphabet(), static_cast<int>(ids.size()),
                    ids.at(std::make_tuple(r1.initial(), r2.initial(), 0)), accepting);
  for (const auto& [f, lbl, t] : edges) out.add_transition(f, lbl, t);
  out.freeze();
  return out.trimmed();
}

}  // namespace cadist
