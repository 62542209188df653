#pragma once

#include <functional>
#include <map>
#include <optional>

#include "cadist/automaton.hpp"

namespace cadist {

/// Intersection via the product construction; same alphabet and tape count.
SyncAutomaton product(const SyncAutomaton& a, const SyncAutomaton& b);

/// Spread a k-tape automaton over `total_tapes` tapes: the tapes listed in
/// `positions` are constrained by `a`, the others carry arbitrary words.
SyncAutomaton cylindrify(const SyncAutomaton& a, int total_tapes,
                         const std::vector<int>& positions);

/// Existential projection onto the given tapes.
SyncAutomaton project(const SyncAutomaton& a, const std::vector<int>& positions);

/// The multiplier for a word w = s1...sn: cylindrify each letter multiplier
/// to n+1 tapes, intersect, and project onto the first and last tape.
/// The empty word yields the equality relation on `language`.
SyncAutomaton compose_word_multiplier(
    const std::map<Symbol, SyncAutomaton>& multipliers, const std::vector<Symbol>& w,
    const SyncAutomaton& language);

/// All accepted convolutions of padded length <= max_len, in
/// length-lexicographic order (padding sorts after every letter).
std::vector<Convolution> enumerate_language(const SyncAutomaton& a, int max_len,
                                            std::size_t max_results = 4'000'000);

/// Streaming variant; the callback returns false to stop early.
void enumerate_language(const SyncAutomaton& a, int max_len,
                        const std::function<bool(const Convolution&)>& sink);

struct NoCompletion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lexicographically least shortest tuple-word from q to an accepting state.
std::vector<PaddedTuple> shortest_completion(const SyncAutomaton& a, int q);

/// Deterministic state sequence (length padded_length+1) of an accepting run
/// on c; least state index at every backward choice point.
std::vector<int> accepting_run(const SyncAutomaton& a, const Convolution& c);

struct StateBoundConstants {
  int m;  // max multiplier state count, rounded up to even
  int e;  // length of the identity normal form
};

StateBoundConstants state_bound_constants(const std::map<Symbol, SyncAutomaton>& multipliers,
                                          const std::vector<Symbol>& identity_word);

}  // namespace cadist
