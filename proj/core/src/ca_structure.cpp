#include "cadist/ca_structure.hpp"

#include <sstream>

namespace cadist {

namespace {

Int bfs_distance(const GroupModel& model, const std::vector<GroupElement>& gen_values,
                 const GroupElement& g, const GroupElement& h, const Int& radius_cap) {
  GroupElement e = model.multiply(model.inverse(g), h);
  if (e == model.identity()) return 0;
  std::map<GroupElement, int> side[2];
  std::vector<GroupElement> front[2];
  int depth[2] = {0, 0};
  side[0].emplace(model.identity(), 0);
  front[0].push_back(model.identity());
  side[1].emplace(e, 0);
  front[1].push_back(e);
  Int best = -1;
  while (true) {
    Int lower = depth[0] + depth[1] + 1;
    if (best >= 0 && best <= lower) return best;
    if (Int(depth[0] + depth[1]) >= radius_cap)
      throw DistanceExceedsCap("structure distance exceeds cap " + radius_cap.str());
    int i = front[0].size() <= front[1].size() ? 0 : 1;
    if (front[i].empty()) i = 1 - i;
    if (front[i].empty()) throw DistanceExceedsCap("elements not connected in explored ball");
    std::vector<GroupElement> next;
    for (const GroupElement& x : front[i])
      for (const GroupElement& v : gen_values) {
        GroupElement y = model.multiply(x, v);
        if (side[i].count(y)) continue;
        side[i].emplace(y, depth[i] + 1);
        auto it = side[1 - i].find(y);
        if (it != side[1 - i].end()) {
          Int cand = depth[i] + 1 + it->second;
          if (best < 0 || cand < best) best = cand;
        }
        next.push_back(std::move(y));
      }
    front[i] = std::move(next);
    ++depth[i];
  }
}

std::string show(const Alphabet& a, const Word& w) {
  std::string s = render_word(a, w);
  return s.empty() ? "<empty>" : s;
}

}  // namespace

GroupElement CayleyAutomaticStructure::pi(const Word& w) const {
  GroupElement g = model->identity();
  for (Symbol s : w) g = model->multiply(g, symbol_values.at(s));
  return g;
}

Int CayleyAutomaticStructure::distance(const GroupElement& g, const GroupElement& h,
                                       Int radius_cap) const {
  if (closed_distance) {
    GroupElement e = model->multiply(model->inverse(g), h);
    if (auto d = closed_distance(e)) {
      if (*d > radius_cap)
        throw DistanceExceedsCap("distance " + d->str() + " exceeds cap " + radius_cap.str());
      return *d;
    }
  }
  std::vector<GroupElement> values;
  for (const auto& [sym, v] : generator_values) values.push_back(v);
  return bfs_distance(*model, values, g, h, radius_cap);
}

Word CayleyAutomaticStructure::geodesic_word(const GroupElement& g, const GroupElement& h,
                                             Int radius_cap) const {
  Int d = distance(g, h, radius_cap);
  Word out;
  GroupElement cur = g;
  while (d > 0) {
    for (Symbol s = 0; s < generators.alphabet.size(); ++s) {
      GroupElement y = model->multiply(cur, generator_values.at(s));
      if (distance(y, h, radius_cap) == d - 1) {
        out.push_back(s);
        cur = std::move(y);
        --d;
        break;
      }
    }
  }
  return out;
}

StateBoundConstants CayleyAutomaticStructure::constants() const {
  return state_bound_constants(multipliers, identity_word());
}

VerificationReport verify_structure(const CayleyAutomaticStructure& s, int n) {
  VerificationReport rep;

  // Condition 1: regularity (structural).
  if (s.language.tapes() != 1)
    rep.regularity = {false, "language is not 1-tape"};
  else if (!(s.language.alphabet() == s.symbols))
    rep.regularity = {false, "language alphabet differs from structure symbols"};
  else if (!s.language.padding_closed())
    rep.regularity = {false, "language automaton not padding-closed"};
  for (Symbol a = 0; a < s.generators.alphabet.size() && rep.regularity.pass; ++a) {
    std::string gen = s.generators.alphabet.name(a);
    auto it = s.multipliers.find(a);
    if (it == s.multipliers.end()) {
      rep.regularity = {false, "no multiplier for generator " + gen};
    } else if (it->second.tapes() != 2) {
      rep.regularity = {false, "multiplier for " + gen + " is not 2-tape"};
    } else if (!(it->second.alphabet() == s.symbols)) {
      rep.regularity = {false, "multiplier for " + gen + " has a foreign alphabet"};
    } else if (!it->second.padding_closed()) {
      rep.regularity = {false, "multiplier for " + gen + " not padding-closed"};
    }
  }

  // Condition 2: psi is a bijection (sampled): injective on L^{<=n}, and
  // psi_inverse round-trips.
  std::vector<Word> words;
  enumerate_language(s.language, n, [&](const Convolution& c) {
    words.push_back(c.words[0]);
    return true;
  });
  std::map<GroupElement, Word> seen;
  for (const Word& w : words) {
    GroupElement g = s.psi(w);
    auto [it, fresh] = seen.emplace(g, w);
    if (!fresh) {
      rep.bijectivity = {false, "psi collision: " + show(s.symbols, it->second) + " and " +
                                    show(s.symbols, w)};
      break;
    }
    Word back = s.psi_inverse(g);
    if (back != w) {
      rep.bijectivity = {false, "psi_inverse round trip fails on " + show(s.symbols, w) +
                                    " (got " + show(s.symbols, back) + ")"};
      break;
    }
  }

  // Condition 3: multiplier soundness. Enumerating to n+m (m = max state
  // count) is exponentially infeasible for the shipped machines, so pairs
  // are sampled to n+2; unequal-length pairs exercise the padding tails.
  for (const auto& [a, ma] : s.multipliers) {
    if (!rep.soundness.pass) break;
    const GroupElement va = s.generator_values.at(a);
    enumerate_language(ma, n + 2, [&](const Convolution& c) {
      const Word &u = c.words[0], &v = c.words[1];
      if (!s.language.accepts({{u}}) || !s.language.accepts({{v}})) {
        rep.soundness = {false, "multiplier " + s.generators.alphabet.name(a) +
                                    " accepts a pair outside L x L: (" + show(s.symbols, u) +
                                    ", " + show(s.symbols, v) + ")"};
        return false;
      }
      if (!(s.psi(v) == s.model->multiply(s.psi(u), va))) {
        rep.soundness = {false, "multiplier " + s.generators.alphabet.name(a) +
                                    " unsound on (" + show(s.symbols, u) + ", " +
                                    show(s.symbols, v) + ")"};
        return false;
      }
      return true;
    });
  }

  // Condition 4: multiplier completeness on L^{<=n}.
  for (const Word& u : words) {
    if (!rep.completeness.pass) break;
    for (const auto& [a, ma] : s.multipliers) {
      GroupElement g = s.model->multiply(s.psi(u), s.generator_values.at(a));
      Word v = s.psi_inverse(g);
      if (!ma.accepts({{u, v}})) {
        rep.completeness = {false, "multiplier " + s.generators.alphabet.name(a) +
                                       " rejects (" + show(s.symbols, u) + ", " +
                                       show(s.symbols, v) + ")"};
        break;
      }
    }
  }
  return rep;
}

CayleyAutomaticStructure merge_alphabet(const CayleyAutomaticStructure& s,
                                        const std::map<Symbol, MergeChoice>& choice) {
  for (Symbol a = 0; a < s.symbols.size(); ++a)
    if (!choice.count(a))
      throw BadInput("merge_alphabet: no chosen value for symbol " + s.symbols.name(a));

  // Rebuild the generator pair list of S, then append Lambda letters with
  // primed inverses (letters naming existing generators must agree in value).
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<char> used(s.generators.alphabet.size(), 0);
  for (Symbol a = 0; a < s.generators.alphabet.size(); ++a) {
    if (used[a]) continue;
    Symbol b = s.generators.inv(a);
    used[a] = used[b] = 1;
    pairs.emplace_back(s.generators.alphabet.name(a), s.generators.alphabet.name(b));
  }
  std::vector<Symbol> fresh;  // Lambda letters that become new generators
  for (Symbol a = 0; a < s.symbols.size(); ++a) {
    std::string nm = s.symbols.name(a);
    if (s.generators.alphabet.has(nm)) {
      if (!(s.generator_values.at(s.generators.alphabet.index(nm)) == choice.at(a).value))
        throw BadInput("merge_alphabet: symbol " + nm +
                       " names a generator with a different value");
      continue;
    }
    fresh.push_back(a);
    pairs.emplace_back(nm, nm + "'");
  }

  CayleyAutomaticStructure out = s;
  out.name = s.name + "+merged";
  out.generators = make_generators(pairs);
  out.analytic_h = nullptr;
  out.generator_values.clear();
  for (Symbol a = 0; a < s.generators.alphabet.size(); ++a)
    out.generator_values[out.generators.alphabet.index(s.generators.alphabet.name(a))] =
        s.generator_values.at(a);
  out.multipliers.clear();
  for (const auto& [a, ma] : s.multipliers)
    out.multipliers[out.generators.alphabet.index(s.generators.alphabet.name(a))] = ma;

  bool metric_preserved = true;
  for (Symbol a : fresh) {
    const MergeChoice& ch = choice.at(a);
    GroupElement v = s.model->identity();
    for (Symbol g : ch.word_over_s) v = s.model->multiply(v, s.generator_values.at(g));
    if (!(v == ch.value))
      throw BadInput("merge_alphabet: supplied word for symbol " + s.symbols.name(a) +
                     " does not evaluate to the chosen value");
    Symbol na = out.generators.alphabet.index(s.symbols.name(a));
    Symbol nb = out.generators.inv(na);
    SyncAutomaton ma = compose_word_multiplier(s.multipliers, ch.word_over_s, s.language);
    out.multipliers[nb] = ma.transposed();
    out.multipliers[na] = std::move(ma);
    out.generator_values[na] = ch.value;
    out.generator_values[nb] = s.model->inverse(ch.value);
    bool trivial = ch.value == s.model->identity();
    for (const auto& [sym, gv] : s.generator_values) trivial = trivial || gv == ch.value;
    metric_preserved = metric_preserved && trivial;
  }
  // New generators can shorten distances unless each is identity-valued or
  // duplicates an existing generator; only then keep the closed form.
  if (!metric_preserved) out.closed_distance = nullptr;

  for (Symbol a = 0; a < s.symbols.size(); ++a) out.symbol_values[a] = choice.at(a).value;
  return out;
}

namespace {

SyncAutomaton relabeled(const SyncAutomaton& a, const Alphabet& fresh) {
  if (fresh.size() != a.alphabet().size()) throw BadInput("relabel: alphabet size mismatch");
  SyncAutomaton out(a.tapes(), fresh, a.num_states(), a.initial(), a.accepting_states());
  for (int q = 0; q < a.num_states(); ++q)
    for (const auto& t : a.transitions_from(q)) out.add_transition(q, t.label, t.to);
  out.freeze();
  return out;
}

}  // namespace

TransportResult transport(const CayleyAutomaticStructure& s,
                          const std::vector<std::pair<std::string, std::string>>& new_gen_pairs,
                          const std::map<std::string, GroupElement>& y_values,
                          const std::map<std::string, std::string>& rho,
                          const std::map<std::string, std::vector<std::string>>& kappa) {
  GeneratorSet ygens = make_generators(new_gen_pairs);
  for (const auto& [nm, v] : y_values)
    if (!ygens.alphabet.has(nm)) throw BadInput("transport: value for unknown generator " + nm);

  TransportResult res;
  res.m2 = 1;  // rho is letter-to-letter by construction
  // rho must be value-preserving and defined on all of S.
  for (Symbol a = 0; a < s.generators.alphabet.size(); ++a) {
    std::string nm = s.generators.alphabet.name(a);
    auto it = rho.find(nm);
    if (it == rho.end()) throw BadInput("transport: rho undefined on " + nm);
    if (!ygens.alphabet.has(it->second))
      throw BadInput("transport: rho(" + nm + ") is not a Y generator");
    if (!(y_values.at(it->second) == s.generator_values.at(a)))
      throw BadInput("transport: rho not value-preserving on " + nm);
  }
  // kappa must be value-preserving and defined on all of Y.
  std::map<Symbol, Word> kappa_words;
  for (Symbol y = 0; y < ygens.alphabet.size(); ++y) {
    std::string nm = ygens.alphabet.name(y);
    auto it = kappa.find(nm);
    if (it == kappa.end()) throw BadInput("transport: kappa undefined on " + nm);
    Word w;
    GroupElement v = s.model->identity();
    for (const std::string& tok : it->second) {
      if (!s.generators.alphabet.has(tok))
        throw BadInput("transport: kappa(" + nm + ") uses unknown token " + tok);
      Symbol a = s.generators.alphabet.index(tok);
      w.push_back(a);
      v = s.model->multiply(v, s.generator_values.at(a));
    }
    if (!(v == y_values.at(nm)))
      throw BadInput("transport: kappa not value-preserving on " + nm);
    res.m1 = std::max(res.m1, static_cast<int>(w.size()));
    kappa_words[y] = std::move(w);
  }

  // Lambda must sit inside S so rho applies to normal forms.
  std::vector<std::string> renamed;
  for (Symbol a = 0; a < s.symbols.size(); ++a) {
    std::string nm = s.symbols.name(a);
    if (!s.generators.alphabet.has(nm))
      throw BadInput("transport: symbol " + nm + " is not an S generator (merge first)");
    renamed.push_back(rho.at(nm));
  }
  for (std::size_t i = 0; i < renamed.size(); ++i)
    for (std::size_t j = i + 1; j < renamed.size(); ++j)
      if (renamed[i] == renamed[j])
        throw BadInput("transport: rho not injective on the symbol alphabet");
  Alphabet fresh(renamed);

  CayleyAutomaticStructure out = s;
  out.name = s.name + "@" + ygens.alphabet.name(0);
  out.generators = ygens;
  out.symbols = fresh;
  out.language = relabeled(s.language, fresh);
  out.generator_values.clear();
  for (Symbol y = 0; y < ygens.alphabet.size(); ++y)
    out.generator_values[y] = y_values.at(ygens.alphabet.name(y));
  out.multipliers.clear();
  for (Symbol y = 0; y < ygens.alphabet.size(); ++y)
    out.multipliers[y] =
        relabeled(compose_word_multiplier(s.multipliers, kappa_words.at(y), s.language), fresh);
  // Metric and profile closed forms are tied to S; the Y metric falls back
  // to BFS over the new generator values.
  out.closed_distance = nullptr;
  out.analytic_h = nullptr;
  res.structure = std::move(out);
  return res;
}

}  // namespace cadist
