#include "cadist/group.hpp"

namespace cadist {

namespace {

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

class ZModel : public GroupModel {
 public:
  ZModel() : gens_(make_generators({{"t", "T"}})) {}
  const std::string& name() const override {
    static const std::string n = "Z";
    return n;
  }
  const GeneratorSet& generators() const override { return gens_; }
  GroupElement identity() const override { return {{0}, {}}; }
  GroupElement generator_value(Symbol s) const override {
    return {{s == gens_.alphabet.index("t") ? 1 : -1}, {}};
  }
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const override {
    return {{g.ints[0] + h.ints[0]}, {}};
  }
  GroupElement inverse(const GroupElement& g) const override { return {{-g.ints[0]}, {}}; }
  std::optional<Int> closed_form_distance(const GroupElement& g) const override {
    return iabs(g.ints[0]);
  }

 private:
  GeneratorSet gens_;
};

class Z2Model : public GroupModel {
 public:
  Z2Model() : gens_(make_generators({{"x", "X"}, {"y", "Y"}})) {}
  const std::string& name() const override {
    static const std::string n = "Z2";
    return n;
  }
  const GeneratorSet& generators() const override { return gens_; }
  GroupElement identity() const override { return {{0, 0}, {}}; }
  GroupElement generator_value(Symbol s) const override {
    std::string t = gens_.alphabet.name(s);
    if (t == "x") return {{1, 0}, {}};
    if (t == "X") return {{-1, 0}, {}};
    if (t == "y") return {{0, 1}, {}};
    return {{0, -1}, {}};
  }
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const override {
    return {{g.ints[0] + h.ints[0], g.ints[1] + h.ints[1]}, {}};
  }
  GroupElement inverse(const GroupElement& g) const override {
    return {{-g.ints[0], -g.ints[1]}, {}};
  }
  std::optional<Int> closed_form_distance(const GroupElement& g) const override {
    return iabs(g.ints[0]) + iabs(g.ints[1]);
  }

 private:
  GeneratorSet gens_;
};

// Upper unitriangular 3x3 matrices (x,y,z):
//   (x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2 + x1*y2).
class H3Model : public GroupModel {
 public:
  H3Model() : gens_(make_generators({{"x", "X"}, {"y", "Y"}})) {}
  const std::string& name() const override {
    static const std::string n = "H3";
    return n;
  }
  const GeneratorSet& generators() const override { return gens_; }
  GroupElement identity() const override { return {{0, 0, 0}, {}}; }
  GroupElement generator_value(Symbol s) const override {
    std::string t = gens_.alphabet.name(s);
    if (t == "x") return {{1, 0, 0}, {}};
    if (t == "X") return {{-1, 0, 0}, {}};
    if (t == "y") return {{0, 1, 0}, {}};
    return {{0, -1, 0}, {}};
  }
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const override {
    return {{g.ints[0] + h.ints[0], g.ints[1] + h.ints[1],
             g.ints[2] + h.ints[2] + g.ints[0] * h.ints[1]},
            {}};
  }
  GroupElement inverse(const GroupElement& g) const override {
    return {{-g.ints[0], -g.ints[1], g.ints[0] * g.ints[1] - g.ints[2]}, {}};
  }

 private:
  GeneratorSet gens_;
};

// Affine maps x -> 2^eps x + p/2^q with t a t^-1 = a^2; composition order
// matches left-to-right word evaluation: (g h)(x) = g(h(x)).
class BS12Model : public GroupModel {
 public:
  BS12Model() : gens_(make_generators({{"a", "A"}, {"t", "T"}})) {}
  const std::string& name() const override {
    static const std::string n = "BS12";
    return n;
  }
  const GeneratorSet& generators() const override { return gens_; }
  GroupElement identity() const override { return {{0, 0, 0}, {}}; }
  GroupElement generator_value(Symbol s) const override {
    std::string t = gens_.alphabet.name(s);
    if (t == "a") return {{1, 0, 0}, {}};
    if (t == "A") return {{-1, 0, 0}, {}};
    if (t == "t") return {{0, 0, 1}, {}};
    return {{0, 0, -1}, {}};
  }
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const override {
    // r = p1/2^q1 + 2^eps1 * p2/2^q2, as N / 2^Qs with Qs possibly negative.
    const Int &p1 = g.ints[0], &q1 = g.ints[1], &e1 = g.ints[2];
    const Int &p2 = h.ints[0], &q2 = h.ints[1], &e2 = h.ints[2];
    Int shift = q2 - e1;  // 2^eps1 p2 / 2^q2 = p2 / 2^(q2-eps1)
    Int q = q1 > shift ? q1 : shift;
    if (q < 0) q = 0;
    Int n = p1 * pow2(q - q1) + p2 * pow2(q - shift);
    return normalized(n, q, e1 + e2);
  }
  GroupElement inverse(const GroupElement& g) const override {
    // g^-1(x) = 2^-eps x - p / 2^(q+eps)
    const Int &p = g.ints[0], &q = g.ints[1], &e = g.ints[2];
    Int qs = q + e;
    if (qs < 0) return normalized(-p * pow2(-qs), 0, -e);
    return normalized(-p, qs, -e);
  }

 private:
  static Int pow2(const Int& k) {
    Int r = 1;
    for (Int i = 0; i < k; ++i) r <<= 1;
    return r;
  }
  static GroupElement normalized(Int n, Int q, Int e) {
    if (n == 0) return {{0, 0, e}, {}};
    while (q > 0 && (n & 1) == 0) {
      n >>= 1;
      --q;
    }
    return {{n, q, e}, {}};
  }
  GeneratorSet gens_;
};

// Restricted wreath product Z2 wr Z: (A1,k1)(A2,k2) = (A1 xor (A2+k1), k1+k2).
class LL2Model : public GroupModel {
 public:
  LL2Model() : gens_(make_generators({{"t", "T"}, {"a", "a"}})) {}
  const std::string& name() const override {
    static const std::string n = "LL2";
    return n;
  }
  const GeneratorSet& generators() const override { return gens_; }
  GroupElement identity() const override { return {{0}, {}}; }
  GroupElement generator_value(Symbol s) const override {
    std::string t = gens_.alphabet.name(s);
    if (t == "t") return {{1}, {}};
    if (t == "T") return {{-1}, {}};
    return {{0}, {0}};
  }
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const override {
    GroupElement out{{g.ints[0] + h.ints[0]}, g.lamps};
    for (const Int& p : h.lamps) {
      Int q = p + g.ints[0];
      if (!out.lamps.erase(q)) out.lamps.insert(q);
    }
    return out;
  }
  GroupElement inverse(const GroupElement& g) const override {
    GroupElement out{{-g.ints[0]}, {}};
    for (const Int& p : g.lamps) out.lamps.insert(p - g.ints[0]);
    return out;
  }
  std::optional<Int> closed_form_distance(const GroupElement& g) const override {
    const Int& k = g.ints[0];
    if (g.lamps.empty()) return iabs(k);
    Int lo = *g.lamps.begin(), hi = *g.lamps.rbegin();
    if (lo > 0) lo = 0;
    if (lo > k) lo = k;
    if (hi < 0) hi = 0;
    if (hi < k) hi = k;
    Int left_first = (0 - lo) + (hi - lo) + (hi - k);
    Int right_first = (hi - 0) + (hi - lo) + (k - lo);
    Int walk = left_first < right_first ? left_first : right_first;
    return Int(g.lamps.size()) + walk;
  }

 private:
  GeneratorSet gens_;
};

}  // namespace

std::shared_ptr<const GroupModel> make_model(const std::string& name) {
  if (name == "Z") return std::make_shared<ZModel>();
  if (name == "Z2") return std::make_shared<Z2Model>();
  if (name == "H3") return std::make_shared<H3Model>();
  if (name == "BS12") return std::make_shared<BS12Model>();
  if (name == "LL2") return std::make_shared<LL2Model>();
  throw BadInput("unknown model: " + name);
}

}  // namespace cadist
