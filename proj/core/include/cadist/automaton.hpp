#pragma once

#include <set>
#include <vector>

#include "cadist/alphabet.hpp"

namespace cadist {

/// A synchronous k-tape finite automaton over padded letter tuples.
/// May be nondeterministic. Immutable once built (builders call freeze()).
class SyncAutomaton {
 public:
  struct Transition {
    PaddedTuple label;
    int to;
  };

  SyncAutomaton() = default;
  SyncAutomaton(int tapes, Alphabet alphabet, int num_states, int initial,
                std::vector<int> accepting);

  int tapes() const { return tapes_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return num_states_; }
  int initial() const { return initial_; }
  bool is_accepting(int q) const { return accepting_[q] != 0; }
  std::vector<int> accepting_states() const;
  const std::vector<Transition>& transitions_from(int q) const { return delta_[q]; }
  std::size_t num_transitions() const;

  void add_transition(int from, PaddedTuple label, int to);
  void set_accepting(int q, bool v) { accepting_[q] = v ? 1 : 0; }

  /// Sorts transition lists into the canonical tuple order and validates
  /// structural invariants. Builders call this last.
  void freeze();

  bool accepts(const Convolution& c) const;
  std::set<int> step(const std::set<int>& states, const PaddedTuple& label) const;

  /// True iff on every path from the initial state, once a tape reads
  /// padding it reads padding at every later step.
  bool padding_closed() const;

  /// Restrict to accessible and co-accessible states. Returns the state
  /// renumbering (old -> new, -1 for dropped); the automaton for an empty
  /// language keeps a lone initial state.
  SyncAutomaton trimmed() const;

  /// Swap the two tapes of a 2-tape automaton.
  SyncAutomaton transposed() const;

  bool language_empty() const;

 private:
  int tapes_ = 1;
  Alphabet alphabet_;
  int num_states_ = 0;
  int initial_ = 0;
  std::vector<char> accepting_;
  std::vector<std::vector<Transition>> delta_;
};

/// 1-tape automaton accepting every word over the alphabet.
SyncAutomaton universal_language(const Alphabet& a);

/// 2-tape automaton accepting exactly the pairs (w, w) with w accepted by
/// the 1-tape automaton `language`.
SyncAutomaton equality_relation(const SyncAutomaton& language);

}  // namespace cadist
