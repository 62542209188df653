#pragma once

#include <functional>

#include "cadist/automaton_ops.hpp"
#include "cadist/group.hpp"

namespace cadist {

/// A Cayley automatic structure (S, Lambda, L, psi) over a group model.
/// `symbols` is Lambda; `generators` is S with a group value per generator;
/// `symbol_values` assigns each Lambda-letter its g_a, defining the
/// projection pi on normal-form words. psi/psi_inverse are exact codecs.
struct CayleyAutomaticStructure {
  std::string name;
  std::shared_ptr<const GroupModel> model;
  GeneratorSet generators;
  std::map<Symbol, GroupElement> generator_values;
  Alphabet symbols;
  SyncAutomaton language;
  std::map<Symbol, SyncAutomaton> multipliers;  // keyed by S-generator symbol
  std::map<Symbol, GroupElement> symbol_values;
  std::function<GroupElement(const Word&)> psi;
  std::function<Word(const GroupElement&)> psi_inverse;
  /// d_S(1, g) in this structure's generating set, when a closed form exists.
  std::function<std::optional<Int>(const GroupElement&)> closed_distance;
  /// Exact h(n) when a closed form is known (used past enumeration scale).
  std::function<std::optional<Int>(int)> analytic_h;
  std::string codec;  // psi codec registry name

  GroupElement pi(const Word& w) const;
  /// Word metric over this structure's generating set (closed form or
  /// bidirectional BFS over generator values).
  Int distance(const GroupElement& g, const GroupElement& h, Int radius_cap) const;
  Word geodesic_word(const GroupElement& g, const GroupElement& h, Int radius_cap) const;
  /// Normal form of the identity; its length is the constant e.
  Word identity_word() const { return psi_inverse(model->identity()); }
  StateBoundConstants constants() const;
};

struct ConditionReport {
  bool pass = true;
  std::string detail;
};

struct VerificationReport {
  ConditionReport regularity, bijectivity, soundness, completeness;
  bool all_pass() const {
    return regularity.pass && bijectivity.pass && soundness.pass && completeness.pass;
  }
};

/// Checks the four structure conditions by exhaustive sampling to depth n
/// (multiplier pairs run two letters deeper so padding tails are exercised).
VerificationReport verify_structure(const CayleyAutomaticStructure& s, int n);

/// Alphabet merge: extend S to S' = Lambda u Lambda^-1 u S, assigning each
/// Lambda-letter the chosen value g_a (with u_a a word over S evaluating to
/// g_a). L and psi are unchanged; new multipliers are composed over u_a.
struct MergeChoice {
  GroupElement value;
  Word word_over_s;
};
CayleyAutomaticStructure merge_alphabet(const CayleyAutomaticStructure& s,
                                        const std::map<Symbol, MergeChoice>& choice);

/// Change of generating set S -> Y. rho maps each S-generator to a single
/// Y-generator (letter-to-letter only; general substitutions are out of
/// scope), kappa maps each Y-generator to a word over S. Requires
/// Lambda subset-of S by name. M1 = max |kappa(y)|, M2 = max |rho(s)| = 1.
struct TransportResult {
  CayleyAutomaticStructure structure;
  int m1 = 1, m2 = 1;
};
TransportResult transport(const CayleyAutomaticStructure& s,
                          const std::vector<std::pair<std::string, std::string>>& new_gen_pairs,
                          const std::map<std::string, GroupElement>& y_values,
                          const std::map<std::string, std::string>& rho,
                          const std::map<std::string, std::vector<std::string>>& kappa);

}  // namespace cadist
