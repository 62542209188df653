#include "cadist/filling.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace cadist {

Presentation presentation_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open presentation file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw BadInput(path + ": " + e.what());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : j.at("generators"))
    pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  Presentation pres{make_generators(pairs), {}};
  for (const auto& r : j.at("relators"))
    pres.relators.push_back(parse_word(pres.gens.alphabet, r.get<std::string>()));
  if (pres.relators.empty()) throw BadInput(path + ": no relators");
  return pres;
}

namespace {

struct AreaSearcher {
  const GeneratorSet& gens;
  std::vector<Word> moves;  // cyclic conjugates of relators and inverses
  std::size_t max_relator = 1;
  std::size_t cap = 0;
  std::map<Word, int> failed;  // word -> highest remaining budget that failed

  explicit AreaSearcher(const Presentation& p) : gens(p.gens) {
    std::set<Word> seen;
    for (const Word& r0 : p.relators) {
      Word r = free_reduce(gens, r0);
      if (r.empty()) continue;
      max_relator = std::max(max_relator, r.size());
      for (const Word& base : {r, word_inverse(gens, r)})
        for (std::size_t k = 0; k < base.size(); ++k) {
          Word rot(base.begin() + k, base.end());
          rot.insert(rot.end(), base.begin(), base.begin() + k);
          if (seen.insert(rot).second) moves.push_back(std::move(rot));
        }
    }
    if (moves.empty()) throw BadInput("area: presentation has only trivial relators");
  }

  // No length-based pruning: a single conjugate g r g^-1 already has
  // unbounded reduced length, so |w| says nothing about the area.
  bool dfs(const Word& w, int remaining, std::vector<Word>* trail) {
    if (w.empty()) return true;
    if (remaining == 0) return false;
    auto it = failed.find(w);
    if (it != failed.end() && it->second >= remaining) return false;

    // Children ordered shortest-first; deterministic tie-break by word.
    std::set<std::pair<std::size_t, Word>> children;
    for (const Word& mv : moves)
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        Word nw(w.begin(), w.begin() + pos);
        nw.insert(nw.end(), mv.begin(), mv.end());
        nw.insert(nw.end(), w.begin() + pos, w.end());
        nw = free_reduce(gens, nw);
        if (nw.size() <= cap) children.emplace(nw.size(), std::move(nw));
      }
    for (const auto& [len, nw] : children) {
      if (dfs(nw, remaining - 1, trail)) {
        trail->push_back(nw);
        return true;
      }
    }
    auto [fit, fresh] = failed.emplace(w, remaining);
    if (!fresh) fit->second = std::max(fit->second, remaining);
    return false;
  }
};

}  // namespace

AreaResult area(const Presentation& p, const Word& w, int max_area) {
  AreaSearcher search(p);
  Word w0 = free_reduce(p.gens, w);
  search.cap = w0.size() + 2 * search.max_relator;
  if (w0.empty()) return {w, 0, {}};
  for (int depth = 1; depth <= max_area; ++depth) {
    search.failed.clear();
    std::vector<Word> trail;
    if (search.dfs(w0, depth, &trail)) {
      std::reverse(trail.begin(), trail.end());
      return {w, depth, std::move(trail)};
    }
  }
  throw AreaExceedsMax("area exceeds max_area=" + std::to_string(max_area));
}

}  // namespace cadist
