#include "cadist/group.hpp"

#include <map>
#include <sstream>

namespace cadist {

GeneratorSet make_generators(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::string> names;
  for (const auto& [g, gi] : pairs) {
    names.push_back(g);
    if (gi != g) names.push_back(gi);
  }
  GeneratorSet gens{Alphabet(names), {}};
  gens.inverse.resize(names.size());
  for (const auto& [g, gi] : pairs) {
    Symbol a = gens.alphabet.index(g), b = gens.alphabet.index(gi);
    gens.inverse[a] = b;
    gens.inverse[b] = a;
  }
  return gens;
}

Word word_inverse(const GeneratorSet& gens, const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(gens.inv(*it));
  return out;
}

Word free_reduce(const GeneratorSet& gens, const Word& w) {
  Word out;
  for (Symbol s : w) {
    if (!out.empty() && gens.inv(out.back()) == s)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

GroupElement GroupModel::evaluate(const Word& w) const {
  GroupElement g = identity();
  for (Symbol s : w) g = apply(g, s);
  return g;
}

Int GroupModel::distance(const GroupElement& g, const GroupElement& h, Int radius_cap) const {
  GroupElement e = multiply(inverse(g), h);
  if (auto d = closed_form_distance(e)) {
    if (*d > radius_cap)
      throw DistanceExceedsCap("distance " + d->str() + " exceeds cap " + radius_cap.str());
    return *d;
  }
  if (e == identity()) return 0;

  // Bidirectional BFS between 1 and e; symmetric generators make the
  // neighbor relation the same on both sides.
  std::map<GroupElement, int> side[2];
  std::vector<GroupElement> front[2];
  int depth[2] = {0, 0};
  side[0].emplace(identity(), 0);
  front[0].push_back(identity());
  side[1].emplace(e, 0);
  front[1].push_back(e);
  const Alphabet& alpha = generators().alphabet;
  Int best = -1;

  while (true) {
    Int floor = depth[0] + depth[1] + 1;
    if (best >= 0 && best <= floor) return best;
    if (Int(depth[0] + depth[1]) >= radius_cap)
      throw DistanceExceedsCap("distance exceeds cap " + radius_cap.str());
    int i = front[0].size() <= front[1].size() ? 0 : 1;
    if (front[i].empty()) i = 1 - i;
    if (front[i].empty())
      throw DistanceExceedsCap("elements not connected within explored ball");
    std::vector<GroupElement> next;
    for (const GroupElement& x : front[i])
      for (Symbol s = 0; s < alpha.size(); ++s) {
        GroupElement y = apply(x, s);
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

Word GroupModel::geodesic(const GroupElement& g, const GroupElement& h, Int radius_cap) const {
  Int d = distance(g, h, radius_cap);
  Word out;
  GroupElement cur = g;
  const Alphabet& alpha = generators().alphabet;
  while (d > 0) {
    for (Symbol s = 0; s < alpha.size(); ++s) {
      GroupElement y = apply(cur, s);
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

std::set<GroupElement> GroupModel::ball(int radius, std::size_t safety_bound) const {
  std::set<GroupElement> seen{identity()};
  std::vector<GroupElement> front{identity()};
  const Alphabet& alpha = generators().alphabet;
  for (int depth = 0; depth < radius && !front.empty(); ++depth) {
    std::vector<GroupElement> next;
    for (const GroupElement& x : front)
      for (Symbol s = 0; s < alpha.size(); ++s) {
        GroupElement y = apply(x, s);
        if (seen.insert(y).second) {
          if (seen.size() > safety_bound)
            throw BudgetExceeded("ball exceeds safety bound of " +
                                 std::to_string(safety_bound) + " elements");
          next.push_back(std::move(y));
        }
      }
    front = std::move(next);
  }
  return seen;
}

std::string GroupModel::render_element(const GroupElement& g) const {
  std::ostringstream out;
  if (!g.lamps.empty() || name() == "LL2") {
    out << "({";
    bool first = true;
    for (const Int& p : g.lamps) {
      if (!first) out << ",";
      first = false;
      out << p;
    }
    out << "}," << g.ints.at(0) << ")";
    return out.str();
  }
  if (g.ints.size() == 1) {
    out << g.ints[0];
    return out.str();
  }
  out << "(";
  for (std::size_t i = 0; i < g.ints.size(); ++i) {
    if (i) out << ",";
    out << g.ints[i];
  }
  out << ")";
  return out.str();
}

Word dense_witness_loops(const GroupModel& lamplighter, int n) {
  if (lamplighter.name() != "LL2") throw BadInput("dense_witness_loops: needs the LL2 model");
  if (n < 1) throw BadInput("dense_witness_loops: n must be >= 1");
  const Alphabet& alpha = lamplighter.generators().alphabet;
  Symbol t = alpha.index("t"), ti = alpha.index("T"), a = alpha.index("a");
  Word w;
  auto run = [&](Symbol s, int count) { w.insert(w.end(), count, s); };
  // [a, t^{2n+1} a t^{-(2n+1)}], with a its own inverse.
  run(a, 1);
  run(t, 2 * n + 1);
  run(a, 1);
  run(ti, 2 * n + 1);
  run(a, 1);
  run(t, 2 * n + 1);
  run(a, 1);
  run(ti, 2 * n + 1);
  return w;
}

}  // namespace cadist
