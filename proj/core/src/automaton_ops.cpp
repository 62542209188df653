#include "cadist/automaton_ops.hpp"

#include <algorithm>
#include <queue>

namespace cadist {

namespace {

bool positions_ok(const std::vector<int>& positions, int bound) {
  if (positions.empty()) return false;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 0 || positions[i] >= bound) return false;
    if (i && positions[i] <= positions[i - 1]) return false;
  }
  return true;
}

}  // namespace

SyncAutomaton product(const SyncAutomaton& a, const SyncAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw BadInput("product: alphabet mismatch");
  if (a.tapes() != b.tapes()) throw BadInput("product: tape count mismatch");

  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> states;
  auto intern = [&](int qa, int qb) {
    auto [it, fresh] = id.emplace(std::make_pair(qa, qb), static_cast<int>(states.size()));
    if (fresh) states.emplace_back(qa, qb);
    return it->second;
  };
  intern(a.initial(), b.initial());

  struct Edge {
    int from, to;
    PaddedTuple label;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [qa, qb] = states[i];
    // Group b's transitions by label for the match.
    std::map<PaddedTuple, std::vector<int>> by_label;
    for (const auto& tb : b.transitions_from(qb)) by_label[tb.label].push_back(tb.to);
    for (const auto& ta : a.transitions_from(qa)) {
      auto it = by_label.find(ta.label);
      if (it == by_label.end()) continue;
      for (int tb_to : it->second)
        edges.push_back({static_cast<int>(i), intern(ta.to, tb_to), ta.label});
    }
  }
  std::vector<int> acc;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (a.is_accepting(states[i].first) && b.is_accepting(states[i].second))
      acc.push_back(static_cast<int>(i));
  SyncAutomaton out(a.tapes(), a.alphabet(), static_cast<int>(states.size()), 0, acc);
  for (const Edge& e : edges) out.add_transition(e.from, e.label, e.to);
  out.freeze();
  return out.trimmed();
}

SyncAutomaton cylindrify(const SyncAutomaton& a, int total_tapes,
                         const std::vector<int>& positions) {
  if (static_cast<int>(positions.size()) != a.tapes())
    throw BadInput("cylindrify: |positions| must equal the automaton tape count");
  if (!positions_ok(positions, total_tapes)) throw BadInput("cylindrify: invalid positions");

  std::vector<int> free_tapes;
  {
    std::vector<char> used(total_tapes, 0);
    for (int p : positions) used[p] = 1;
    for (int t = 0; t < total_tapes; ++t)
      if (!used[t]) free_tapes.push_back(t);
  }
  const int nfree = static_cast<int>(free_tapes.size());
  const int nlet = a.alphabet().size();
  // Free-tape fill choices: every letter, or padding.
  // State: (a-state or frozen=-1, per-free-tape padded flags).
  using St = std::pair<int, unsigned>;
  std::map<St, int> id;
  std::vector<St> states;
  auto intern = [&](int q, unsigned flags) {
    auto [it, fresh] = id.emplace(St{q, flags}, static_cast<int>(states.size()));
    if (fresh) states.emplace_back(q, flags);
    return it->second;
  };
  intern(a.initial(), 0);

  struct Edge {
    int from, to;
    PaddedTuple label;
  };
  std::vector<Edge> edges;
  // Enumerate fill vectors for the free tapes consistent with `flags`.
  auto for_each_fill = [&](unsigned flags, auto&& fn) {
    std::vector<Symbol> fill(nfree, kPad);
    std::function<void(int, unsigned)> rec = [&](int i, unsigned nf) {
      if (i == nfree) {
        fn(fill, nf);
        return;
      }
      if (!((flags >> i) & 1u)) {
        for (Symbol s = 0; s < nlet; ++s) {
          fill[i] = s;
          rec(i + 1, nf);
        }
      }
      fill[i] = kPad;
      rec(i + 1, nf | (1u << i));
    };
    rec(0, 0u);
  };

  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [q, flags] = states[i];
    auto emit = [&](int next_q, const PaddedTuple& constrained_label) {
      for_each_fill(flags, [&](const std::vector<Symbol>& fill, unsigned nf) {
        PaddedTuple label(total_tapes, kPad);
        for (std::size_t k = 0; k < positions.size(); ++k)
          label[positions[k]] = constrained_label.empty() ? kPad : constrained_label[k];
        for (int k = 0; k < nfree; ++k) label[free_tapes[k]] = fill[k];
        if (all_padding(label)) return;
        edges.push_back({static_cast<int>(i), intern(next_q, nf), label});
      });
    };
    if (q >= 0) {
      for (const auto& t : a.transitions_from(q)) emit(t.to, t.label);
      // The constrained tapes may end (all-padding sub-tuple) once `a`
      // accepts; free tapes go on.
      if (a.is_accepting(q)) emit(-1, {});
    } else {
      emit(-1, {});
    }
  }
  std::vector<int> acc;
  for (std::size_t i = 0; i < states.size(); ++i) {
    int q = states[i].first;
    if (q < 0 || a.is_accepting(q)) acc.push_back(static_cast<int>(i));
  }
  SyncAutomaton out(total_tapes, a.alphabet(), static_cast<int>(states.size()), 0, acc);
  for (const Edge& e : edges) out.add_transition(e.from, e.label, e.to);
  out.freeze();
  return out.trimmed();
}

SyncAutomaton project(const SyncAutomaton& a, const std::vector<int>& positions) {
  if (!positions_ok(positions, a.tapes())) throw BadInput("project: invalid positions");
  SyncAutomaton out(static_cast<int>(positions.size()), a.alphabet(), a.num_states(),
                    a.initial(), a.accepting_states());
  // Transitions whose kept part is all-padding become end-of-word epsilon
  // moves (padding closure puts them at the tail of every run): extend the
  // accepting set backwards across them.
  std::vector<std::vector<int>> eps(a.num_states());
  for (int q = 0; q < a.num_states(); ++q) {
    for (const auto& t : a.transitions_from(q)) {
      PaddedTuple kept(positions.size());
      for (std::size_t k = 0; k < positions.size(); ++k) kept[k] = t.label[positions[k]];
      if (all_padding(kept))
        eps[q].push_back(t.to);
      else
        out.add_transition(q, kept, t.to);
    }
  }
  std::vector<char> acc(a.num_states(), 0);
  for (int q : a.accepting_states()) acc[q] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int q = 0; q < a.num_states(); ++q)
      if (!acc[q])
        for (int to : eps[q])
          if (acc[to]) {
            acc[q] = 1;
            changed = true;
            break;
          }
  }
  for (int q = 0; q < a.num_states(); ++q) out.set_accepting(q, acc[q] != 0);
  out.freeze();
  return out.trimmed();
}

SyncAutomaton compose_word_multiplier(const std::map<Symbol, SyncAutomaton>& multipliers,
                                      const std::vector<Symbol>& w,
                                      const SyncAutomaton& language) {
  if (w.empty()) return equality_relation(language);
  const int n = static_cast<int>(w.size());
  std::optional<SyncAutomaton> acc;
  for (int i = 0; i < n; ++i) {
    auto it = multipliers.find(w[i]);
    if (it == multipliers.end())
      throw BadInput("compose_word_multiplier: no multiplier for letter index " +
                     std::to_string(w[i]));
    SyncAutomaton lifted = cylindrify(it->second, n + 1, {i, i + 1});
    acc = acc ? product(*acc, lifted) : lifted;
  }
  return project(*acc, {0, n});
}

namespace {

struct Enumerator {
  const SyncAutomaton& a;
  const std::function<bool(const Convolution&)>& sink;
  std::vector<PaddedTuple> prefix;
  bool stopped = false;

  bool emit_if_accepting(const std::set<int>& states) {
    if (std::none_of(states.begin(), states.end(),
                     [&](int q) { return a.is_accepting(q); }))
      return true;
    Convolution c;
    c.words.assign(a.tapes(), {});
    for (const PaddedTuple& t : prefix)
      for (int i = 0; i < a.tapes(); ++i)
        if (t[i] != kPad) c.words[i].push_back(t[i]);
    return sink(c);
  }

  // Exact-length DFS, labels in canonical order.
  void walk(const std::set<int>& states, int remaining) {
    if (stopped) return;
    if (remaining == 0) {
      if (!emit_if_accepting(states)) stopped = true;
      return;
    }
    std::vector<PaddedTuple> labels;
    for (int q : states)
      for (const auto& t : a.transitions_from(q)) labels.push_back(t.label);
    std::sort(labels.begin(), labels.end(), tuple_less);
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    for (const PaddedTuple& l : labels) {
      // Padding closure within the generated word.
      if (!prefix.empty()) {
        const PaddedTuple& prev = prefix.back();
        bool ok = true;
        for (int i = 0; i < a.tapes(); ++i)
          if (prev[i] == kPad && l[i] != kPad) ok = false;
        if (!ok) continue;
      }
      std::set<int> next = a.step(states, l);
      if (next.empty()) continue;
      prefix.push_back(l);
      walk(next, remaining - 1);
      prefix.pop_back();
      if (stopped) return;
    }
  }
};

}  // namespace

void enumerate_language(const SyncAutomaton& a, int max_len,
                        const std::function<bool(const Convolution&)>& sink) {
  if (max_len < 0) throw BadInput("enumerate: max_len must be nonnegative");
  Enumerator en{a, sink, {}, false};
  for (int len = 0; len <= max_len && !en.stopped; ++len)
    en.walk({a.initial()}, len);
}

std::vector<Convolution> enumerate_language(const SyncAutomaton& a, int max_len,
                                            std::size_t max_results) {
  std::vector<Convolution> out;
  bool over = false;
  enumerate_language(a, max_len, [&](const Convolution& c) {
    if (out.size() >= max_results) {
      over = true;
      return false;
    }
    out.push_back(c);
    return true;
  });
  if (over) throw BudgetExceeded("enumeration exceeded " + std::to_string(max_results) + " results");
  return out;
}

std::vector<PaddedTuple> shortest_completion(const SyncAutomaton& a, int q) {
  if (q < 0 || q >= a.num_states()) throw BadInput("shortest_completion: state out of range");
  // Distance to the nearest accepting state, by reverse BFS.
  std::vector<std::vector<int>> rev(a.num_states());
  for (int s = 0; s < a.num_states(); ++s)
    for (const auto& t : a.transitions_from(s)) rev[t.to].push_back(s);
  std::vector<int> dist(a.num_states(), -1);
  std::queue<int> bfs;
  for (int s : a.accepting_states()) {
    dist[s] = 0;
    bfs.push(s);
  }
  while (!bfs.empty()) {
    int s = bfs.front();
    bfs.pop();
    for (int p : rev[s])
      if (dist[p] < 0) {
        dist[p] = dist[s] + 1;
        bfs.push(p);
      }
  }
  if (dist[q] < 0)
    throw NoCompletion("no accepting state reachable; trim the automaton first");
  std::vector<PaddedTuple> path;
  int cur = q;
  while (dist[cur] > 0) {
    for (const auto& t : a.transitions_from(cur)) {  // canonical order after freeze()
      if (dist[t.to] == dist[cur] - 1) {
        path.push_back(t.label);
        cur = t.to;
        break;
      }
    }
  }
  return path;
}

std::vector<int> accepting_run(const SyncAutomaton& a, const Convolution& c) {
  std::vector<PaddedTuple> word = c.padded();
  std::vector<std::set<int>> sets(word.size() + 1);
  sets[0] = {a.initial()};
  for (std::size_t i = 0; i < word.size(); ++i) {
    sets[i + 1] = a.step(sets[i], word[i]);
    if (sets[i + 1].empty()) throw BadInput("accepting_run: convolution rejected");
  }
  int chosen = -1;
  for (int q : sets[word.size()])
    if (a.is_accepting(q)) {
      chosen = q;
      break;
    }
  if (chosen < 0) throw BadInput("accepting_run: convolution rejected");
  std::vector<int> run(word.size() + 1);
  run[word.size()] = chosen;
  for (int i = static_cast<int>(word.size()) - 1; i >= 0; --i) {
    int pick = -1;
    for (int q : sets[i]) {
      for (const auto& t : a.transitions_from(q))
        if (t.label == word[i] && t.to == run[i + 1]) {
          pick = q;
          break;
        }
      if (pick >= 0) break;
    }
    run[i] = pick;
  }
  return run;
}

StateBoundConstants state_bound_constants(const std::map<Symbol, SyncAutomaton>& multipliers,
                                          const std::vector<Symbol>& identity_word) {
  if (multipliers.empty()) throw BadInput("state_bound_constants: no multipliers");
  int m = 0;
  for (const auto& [sym, aut] : multipliers) m = std::max(m, aut.trimmed().num_states());
  m = std::max(m, 2);
  if (m % 2) ++m;
  return {m, static_cast<int>(identity_word.size())};
}

}  // namespace cadist
