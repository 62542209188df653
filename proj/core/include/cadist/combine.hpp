#pragma once

#include "cadist/automaton.hpp"

namespace cadist {

/// Pair-letter scheme: letters of the combined alphabet are pairs of
/// component letters, where "#" is an in-letter filler marking that the
/// component word has already ended. Fillers are suffix-only in valid
/// words; "#|#" does not exist (the word itself ends instead).
class PairScheme {
 public:
  PairScheme(Alphabet comp1, Alphabet comp2);

  const Alphabet& pair_alphabet() const { return pair_; }
  const Alphabet& component_alphabet(int i) const { return i == 0 ? comp1_ : comp2_; }

  /// Component symbol of a pair letter; kPad for filler.
  Symbol component(Symbol pair_letter, int i) const;
  /// Pair letter from component symbols (kPad = filler); both kPad is invalid.
  Symbol letter(Symbol c1, Symbol c2) const;

  /// Zip two component words into a pair word (filler-pads the shorter).
  std::vector<Symbol> zip(const std::vector<Symbol>& w1, const std::vector<Symbol>& w2) const;
  /// Split a pair word into its component words (fillers dropped).
  std::pair<std::vector<Symbol>, std::vector<Symbol>> unzip(const std::vector<Symbol>& w) const;

 private:
  Alphabet comp1_, comp2_, pair_;
};

/// 2-tape automaton accepting (u, v) iff u and v are both accepted by the
/// 1-tape `language` (independently).
SyncAutomaton pair_language(const SyncAutomaton& language);

/// 1-tape automaton over pair letters accepting words whose component
/// projections are accepted by l1 and l2 and whose fillers are suffix-only.
SyncAutomaton combine_1tape(const PairScheme& ps, const SyncAutomaton& l1,
                            const SyncAutomaton& l2);

/// 2-tape automaton over pair letters accepting (u, v) iff the component
/// projections are related by r1 and r2 respectively.
SyncAutomaton combine_2tape(const PairScheme& ps, const SyncAutomaton& r1,
                            const SyncAutomaton& r2);

}  // namespace cadist
