#pragma once

#include "cadist/ca_structure.hpp"

namespace cadist {

struct ProfileEntry {
  int n = 0;
  Int h;
  Word witness;  // first maximizer in enumeration order
};

struct DistanceProfile {
  std::string structure;
  StateBoundConstants constants;
  std::vector<ProfileEntry> entries;  // indexed by n = 0..n_max

  const Int& h(int n) const;
  int n_max() const { return static_cast<int>(entries.size()) - 1; }
};

/// Exact h(n) for 0 <= n <= n_max by enumeration of L^{<=n_max}. Distance
/// work parallelizes over `threads` with a deterministic max-reduction.
DistanceProfile compute_h(const CayleyAutomaticStructure& s, int n_max, int threads = 1);

/// h at a single depth: the analytic closed form when the structure has one,
/// else enumeration.
Int h_value(const CayleyAutomaticStructure& s, int n);

struct LengthBoundReport {
  bool pass = true;
  int m = 0, e = 0;
  Int max_slack;  // max of m*d + e - |u| over the sample
  Word witness;   // violating word if !pass
  std::string detail;
};

/// Lemma-style length bound |u| <= m * d(1, psi(u)) + e over L^{<=n}.
LengthBoundReport check_length_bound(const CayleyAutomaticStructure& s, int n);

/// True iff p.h(n) <= K * q.h(M*n) for all n in [N, p.n_max] (requires
/// q to cover M * p.n_max). Throws BadInput on insufficient range.
bool check_equivalence_constants(const DistanceProfile& p, const DistanceProfile& q,
                                 const Int& K, int M, int N);

std::string profile_csv(const DistanceProfile& p, const Alphabet& symbols);

}  // namespace cadist
