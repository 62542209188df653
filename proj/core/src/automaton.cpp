#include "cadist/automaton.hpp"

#include <algorithm>
#include <queue>

namespace cadist {

SyncAutomaton::SyncAutomaton(int tapes, Alphabet alphabet, int num_states, int initial,
                             std::vector<int> accepting)
    : tapes_(tapes),
      alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initial_(initial),
      accepting_(num_states, 0),
      delta_(num_states) {
  if (tapes < 1) throw BadInput("automaton needs at least one tape");
  if (num_states < 1) throw BadInput("automaton needs at least one state");
  if (initial < 0 || initial >= num_states) throw BadInput("initial state out of range");
  for (int q : accepting) {
    if (q < 0 || q >= num_states) throw BadInput("accepting state out of range");
    accepting_[q] = 1;
  }
}

std::vector<int> SyncAutomaton::accepting_states() const {
  std::vector<int> out;
  for (int q = 0; q < num_states_; ++q)
    if (accepting_[q]) out.push_back(q);
  return out;
}

std::size_t SyncAutomaton::num_transitions() const {
  std::size_t n = 0;
  for (const auto& v : delta_) n += v.size();
  return n;
}

void SyncAutomaton::add_transition(int from, PaddedTuple label, int to) {
  if (from < 0 || from >= num_states_ || to < 0 || to >= num_states_)
    throw BadInput("transition endpoint out of range");
  if (static_cast<int>(label.size()) != tapes_) throw BadInput("transition label arity mismatch");
  if (all_padding(label)) throw BadInput("all-padding transition label");
  for (Symbol s : label)
    if (!alphabet_.valid(s)) throw BadInput("transition label symbol out of range");
  delta_[from].push_back({std::move(label), to});
}

void SyncAutomaton::freeze() {
  for (auto& v : delta_) {
    std::sort(v.begin(), v.end(), [](const Transition& a, const Transition& b) {
      if (a.label != b.label) return tuple_less(a.label, b.label);
      return a.to < b.to;
    });
    v.erase(std::unique(v.begin(), v.end(),
                        [](const Transition& a, const Transition& b) {
                          return a.label == b.label && a.to == b.to;
                        }),
            v.end());
  }
}

std::set<int> SyncAutomaton::step(const std::set<int>& states, const PaddedTuple& label) const {
  std::set<int> out;
  for (int q : states)
    for (const Transition& t : delta_[q])
      if (t.label == label) out.insert(t.to);
  return out;
}

bool SyncAutomaton::accepts(const Convolution& c) const {
  if (c.tapes() != tapes_) throw BadInput("convolution tape count mismatch");
  for (const auto& w : c.words)
    for (Symbol s : w)
      if (s < 0 || s >= alphabet_.size()) throw BadInput("convolution letter not in alphabet");
  std::set<int> cur{initial_};
  for (const PaddedTuple& t : c.padded()) {
    cur = step(cur, t);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [this](int q) { return accepting_[q] != 0; });
}

bool SyncAutomaton::padding_closed() const {
  // Reachability over (state, per-tape padded flags).
  std::set<std::pair<int, unsigned>> seen;
  std::queue<std::pair<int, unsigned>> bfs;
  bfs.push({initial_, 0u});
  seen.insert({initial_, 0u});
  while (!bfs.empty()) {
    auto [q, flags] = bfs.front();
    bfs.pop();
    for (const Transition& t : delta_[q]) {
      unsigned next = flags;
      bool ok = true;
      for (int i = 0; i < tapes_; ++i) {
        bool padded = (flags >> i) & 1u;
        if (t.label[i] == kPad)
          next |= 1u << i;
        else if (padded)
          ok = false;
      }
      if (!ok) return false;
      if (seen.insert({t.to, next}).second) bfs.push({t.to, next});
    }
  }
  return true;
}

SyncAutomaton SyncAutomaton::trimmed() const {
  std::vector<char> fwd(num_states_, 0), bwd(num_states_, 0);
  {
    std::queue<int> q;
    q.push(initial_);
    fwd[initial_] = 1;
    while (!q.empty()) {
      int s = q.front();
      q.pop();
      for (const Transition& t : delta_[s])
        if (!fwd[t.to]) {
          fwd[t.to] = 1;
          q.push(t.to);
        }
    }
  }
  {
    std::vector<std::vector<int>> rev(num_states_);
    for (int s = 0; s < num_states_; ++s)
      for (const Transition& t : delta_[s]) rev[t.to].push_back(s);
    std::queue<int> q;
    for (int s = 0; s < num_states_; ++s)
      if (accepting_[s]) {
        bwd[s] = 1;
        q.push(s);
      }
    while (!q.empty()) {
      int s = q.front();
      q.pop();
      for (int p : rev[s])
        if (!bwd[p]) {
          bwd[p] = 1;
          q.push(p);
        }
    }
  }
  std::vector<int> renum(num_states_, -1);
  int n = 0;
  for (int s = 0; s < num_states_; ++s)
    if (fwd[s] && bwd[s]) renum[s] = n++;
  if (renum[initial_] < 0) {
    // Empty language: keep a lone, non-accepting initial state.
    SyncAutomaton out(tapes_, alphabet_, 1, 0, {});
    out.freeze();
    return out;
  }
  std::vector<int> acc;
  for (int s = 0; s < num_states_; ++s)
    if (renum[s] >= 0 && accepting_[s]) acc.push_back(renum[s]);
  SyncAutomaton out(tapes_, alphabet_, n, renum[initial_], acc);
  for (int s = 0; s < num_states_; ++s) {
    if (renum[s] < 0) continue;
    for (const Transition& t : delta_[s])
      if (renum[t.to] >= 0) out.add_transition(renum[s], t.label, renum[t.to]);
  }
  out.freeze();
  return out;
}

SyncAutomaton SyncAutomaton::transposed() const {
  if (tapes_ != 2) throw BadInput("transpose requires a 2-tape automaton");
  SyncAutomaton out(2, alphabet_, num_states_, initial_, accepting_states());
  for (int s = 0; s < num_states_; ++s)
    for (const Transition& t : delta_[s]) out.add_transition(s, {t.label[1], t.label[0]}, t.to);
  out.freeze();
  return out;
}

bool SyncAutomaton::language_empty() const {
  return trimmed().accepting_states().empty();
}

SyncAutomaton universal_language(const Alphabet& a) {
  SyncAutomaton out(1, a, 1, 0, {0});
  for (Symbol s = 0; s < a.size(); ++s) out.add_transition(0, {s}, 0);
  out.freeze();
  return out;
}

SyncAutomaton equality_relation(const SyncAutomaton& language) {
  if (language.tapes() != 1) throw BadInput("equality_relation expects a 1-tape language");
  SyncAutomaton out(2, language.alphabet(), language.num_states(), language.initial(),
                    language.accepting_states());
  for (int q = 0; q < language.num_states(); ++q)
    for (const auto& t : language.transitions_from(q))
      out.add_transition(q, {t.label[0], t.label[0]}, t.to);
  out.freeze();
  return out.trimmed();
}

}  // namespace cadist
