#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cadist {

/// Symbol index into an Alphabet; kPad is the padding symbol "$".
using Symbol = int16_t;
constexpr Symbol kPad = -1;

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An ordered finite set of printable symbols. The padding symbol is
/// implicit and distinct from every letter; it renders as "$".
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  int size() const { return static_cast<int>(letters_.size()); }
  const std::string& name(Symbol s) const;
  Symbol index(const std::string& name) const;
  bool has(const std::string& name) const { return by_name_.count(name) != 0; }
  bool valid(Symbol s) const { return s == kPad || (s >= 0 && s < size()); }
  const std::vector<std::string>& letters() const { return letters_; }

  bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }

 private:
  std::vector<std::string> letters_;
  std::map<std::string, Symbol> by_name_;
};

/// A fixed-arity tuple of letters-or-padding. The all-padding tuple is
/// never a transition label.
using PaddedTuple = std::vector<Symbol>;

bool all_padding(const PaddedTuple& t);

/// Component order used everywhere: letters in declared order, padding last.
/// Tuples compare componentwise with that order.
bool tuple_less(const PaddedTuple& a, const PaddedTuple& b);

/// A k-tuple of unpadded words over the letter set.
struct Convolution {
  std::vector<std::vector<Symbol>> words;

  int tapes() const { return static_cast<int>(words.size()); }
  std::size_t padded_length() const;
  /// The synchronous encoding: shorter words are padded at the right end.
  std::vector<PaddedTuple> padded() const;

  bool operator==(const Convolution& o) const { return words == o.words; }
};

std::string render_word(const Alphabet& a, const std::vector<Symbol>& w);
std::vector<Symbol> parse_word(const Alphabet& a, const std::string& text);

}  // namespace cadist
