#pragma once

#include <memory>
#include <optional>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "cadist/alphabet.hpp"

namespace cadist {

using Int = boost::multiprecision::cpp_int;

/// A symmetric generating set: letters plus the involution pairing each
/// generator with its formal inverse (possibly itself).
struct GeneratorSet {
  Alphabet alphabet;
  std::vector<Symbol> inverse;

  Symbol inv(Symbol s) const { return inverse.at(static_cast<std::size_t>(s)); }
};

/// Build from (name, inverse-name) pairs; a pair ("a","a") is self-inverse.
GeneratorSet make_generators(const std::vector<std::pair<std::string, std::string>>& pairs);

/// A word over a generating set.
using Word = std::vector<Symbol>;

Word word_inverse(const GeneratorSet& gens, const Word& w);
Word free_reduce(const GeneratorSet& gens, const Word& w);

/// Canonical element value. Slot layout per model:
///   Z: ints = {n}            Z2: ints = {x, y}       H3: ints = {x, y, z}
///   BS12: ints = {p, q, eps} for the affine map x -> 2^eps x + p / 2^q
///   LL2: ints = {cursor}, lamps = lit positions
struct GroupElement {
  std::vector<Int> ints;
  std::set<Int> lamps;

  bool operator==(const GroupElement& o) const { return ints == o.ints && lamps == o.lamps; }
  bool operator<(const GroupElement& o) const {
    if (ints != o.ints) return ints < o.ints;
    return lamps < o.lamps;
  }
};

struct DistanceExceedsCap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class GroupModel {
 public:
  virtual ~GroupModel() = default;

  virtual const std::string& name() const = 0;
  virtual const GeneratorSet& generators() const = 0;
  virtual GroupElement identity() const = 0;
  virtual GroupElement multiply(const GroupElement& g, const GroupElement& h) const = 0;
  virtual GroupElement generator_value(Symbol s) const = 0;
  virtual GroupElement inverse(const GroupElement& g) const = 0;
  /// Word-metric distance to the identity, when a closed form exists.
  virtual std::optional<Int> closed_form_distance(const GroupElement& g) const {
    return std::nullopt;
  }

  GroupElement apply(const GroupElement& g, Symbol s) const {
    return multiply(g, generator_value(s));
  }
  GroupElement evaluate(const Word& w) const;

  /// d_S(g, h); closed form when available, else bidirectional BFS up to
  /// radius_cap. Throws DistanceExceedsCap past the cap.
  Int distance(const GroupElement& g, const GroupElement& h, Int radius_cap) const;

  /// A geodesic word from g to h; ties broken by generator order.
  Word geodesic(const GroupElement& g, const GroupElement& h, Int radius_cap) const;

  /// The ball {g : d(1,g) <= radius}; throws BudgetExceeded past safety_bound
  /// elements.
  std::set<GroupElement> ball(int radius, std::size_t safety_bound = 2'000'000) const;

  std::string render_element(const GroupElement& g) const;
};

/// Factory for "Z", "Z2", "H3", "BS12", "LL2".
std::shared_ptr<const GroupModel> make_model(const std::string& name);

/// The commutator [a, t^{2n+1} a t^{-(2n+1)}] in the lamplighter generators;
/// length exactly 8n+8, evaluates to the identity.
Word dense_witness_loops(const GroupModel& lamplighter, int n);

}  // namespace cadist
