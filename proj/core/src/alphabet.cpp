#include "cadist/alphabet.hpp"

#include <algorithm>
#include <sstream>

namespace cadist {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i] == "$")
      throw BadInput("alphabet letter clashes with the padding symbol \"$\"");
    auto [it, fresh] = by_name_.emplace(letters_[i], static_cast<Symbol>(i));
    (void)it;
    if (!fresh) throw BadInput("duplicate alphabet letter: " + letters_[i]);
  }
}

const std::string& Alphabet::name(Symbol s) const {
  static const std::string pad = "$";
  if (s == kPad) return pad;
  if (s < 0 || s >= size()) throw BadInput("symbol index out of range");
  return letters_[s];
}

Symbol Alphabet::index(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw BadInput("letter not in alphabet: " + name);
  return it->second;
}

bool all_padding(const PaddedTuple& t) {
  return std::all_of(t.begin(), t.end(), [](Symbol s) { return s == kPad; });
}

bool tuple_less(const PaddedTuple& a, const PaddedTuple& b) {
  auto rank = [](Symbol s) { return s == kPad ? INT16_MAX : s; };
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (rank(a[i]) != rank(b[i])) return rank(a[i]) < rank(b[i]);
  }
  return a.size() < b.size();
}

std::size_t Convolution::padded_length() const {
  std::size_t n = 0;
  for (const auto& w : words) n = std::max(n, w.size());
  return n;
}

std::vector<PaddedTuple> Convolution::padded() const {
  std::size_t n = padded_length();
  std::vector<PaddedTuple> out(n, PaddedTuple(words.size(), kPad));
  for (std::size_t t = 0; t < words.size(); ++t)
    for (std::size_t i = 0; i < words[t].size(); ++i) out[i][t] = words[t][i];
  return out;
}

std::string render_word(const Alphabet& a, const std::vector<Symbol>& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << a.name(w[i]);
  }
  return os.str();
}

std::vector<Symbol> parse_word(const Alphabet& a, const std::string& text) {
  std::vector<Symbol> out;
  if (text.find_first_of(" \t\n") != std::string::npos) {
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) out.push_back(a.index(tok));
    return out;
  }
  // No whitespace: greedy longest-match tokenization.
  std::size_t pos = 0;
  while (pos < text.size()) {
    int best = 0;
    Symbol sym = kPad;
    for (Symbol s = 0; s < a.size(); ++s) {
      const std::string& n = a.name(s);
      if (static_cast<int>(n.size()) > best && text.compare(pos, n.size(), n) == 0) {
        best = static_cast<int>(n.size());
        sym = s;
      }
    }
    if (best == 0) throw BadInput("cannot tokenize word at position " + std::to_string(pos) + ": " + text);
    out.push_back(sym);
    pos += best;
  }
  return out;
}

}  // namespace cadist
