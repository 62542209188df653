#include "cadist/catalog.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cadist/automaton_json.hpp"
#include "cadist/combine.hpp"

namespace cadist {

Int zigzag_decode(const Word& w) {
  Int code = 0;
  for (std::size_t i = w.size(); i-- > 0;) code = (code << 1) | static_cast<int>(w[i]);
  return (code & 1) == 0 ? Int(code >> 1) : Int(-((code + 1) >> 1));
}

Word zigzag_encode(const Int& v) {
  Int code = v >= 0 ? Int(v << 1) : Int((-v << 1) - 1);
  Word w;
  while (code > 0) {
    w.push_back(static_cast<Symbol>(static_cast<int>(code & 1)));
    code >>= 1;
  }
  return w;
}

namespace builders {

SyncAutomaton canonical_binary_language() {
  // A: start (empty word ok), O: last bit 1, Z: last bit 0.
  Alphabet bits({"0", "1"});
  SyncAutomaton a(1, bits, 3, 0, {0, 1});
  const Symbol b0 = 0, b1 = 1;
  a.add_transition(0, {b0}, 2);
  a.add_transition(0, {b1}, 1);
  a.add_transition(1, {b0}, 2);
  a.add_transition(1, {b1}, 1);
  a.add_transition(2, {b0}, 2);
  a.add_transition(2, {b1}, 1);
  a.freeze();
  return a;
}

namespace {

// Raw LSB-first increment: carry state C until a 0 absorbs it, copy after.
SyncAutomaton raw_increment() {
  Alphabet bits({"0", "1"});
  const Symbol b0 = 0, b1 = 1;
  SyncAutomaton a(2, bits, 3, 0, {1, 2});  // C=0, D=1, F=2
  a.add_transition(0, {b1, b0}, 0);
  a.add_transition(0, {b0, b1}, 1);
  a.add_transition(0, {kPad, b1}, 2);
  a.add_transition(1, {b0, b0}, 1);
  a.add_transition(1, {b1, b1}, 1);
  a.freeze();
  return a;
}

}  // namespace

SyncAutomaton natural_increment() {
  return product(raw_increment(), pair_language(canonical_binary_language()));
}

SyncAutomaton unary_z_language() {
  Alphabet g({"t", "T"});
  SyncAutomaton a(1, g, 3, 0, {0, 1, 2});
  a.add_transition(0, {0}, 1);
  a.add_transition(1, {0}, 1);
  a.add_transition(0, {1}, 2);
  a.add_transition(2, {1}, 2);
  a.freeze();
  return a;
}

SyncAutomaton unary_z_increment() {
  Alphabet g({"t", "T"});
  const Symbol t = 0, ti = 1;
  SyncAutomaton a(2, g, 4, 0, {3});  // 0 start, 1 positive run, 2 negative run, 3 final
  a.add_transition(0, {t, t}, 1);
  a.add_transition(0, {kPad, t}, 3);
  a.add_transition(0, {ti, ti}, 2);
  a.add_transition(0, {ti, kPad}, 3);
  a.add_transition(1, {t, t}, 1);
  a.add_transition(1, {kPad, t}, 3);
  a.add_transition(2, {ti, ti}, 2);
  a.add_transition(2, {ti, kPad}, 3);
  a.freeze();
  return a;
}

SyncAutomaton zigzag_increment() {
  Alphabet bits({"0", "1"});
  const Symbol b0 = 0, b1 = 1;
  // S=0, P1=1, F0=2; increment-on-tails C=3, D=4, F=5; decrement C=6, D=7, F=8.
  SyncAutomaton a(2, bits, 9, 0, {2, 4, 5, 7, 8});
  a.add_transition(0, {kPad, b0}, 1);  // u = empty, v = 01
  a.add_transition(1, {kPad, b1}, 2);
  a.add_transition(0, {b1, kPad}, 2);  // u = 1, v = empty
  a.add_transition(0, {b0, b0}, 3);    // even code: +1 on the tail
  a.add_transition(0, {b1, b1}, 6);    // odd code > 1: -1 on the tail
  a.add_transition(3, {b1, b0}, 3);
  a.add_transition(3, {b0, b1}, 4);
  a.add_transition(3, {kPad, b1}, 5);
  a.add_transition(4, {b0, b0}, 4);
  a.add_transition(4, {b1, b1}, 4);
  a.add_transition(6, {b0, b1}, 6);
  a.add_transition(6, {b1, b0}, 7);
  a.add_transition(6, {b1, kPad}, 8);
  a.add_transition(7, {b0, b0}, 7);
  a.add_transition(7, {b1, b1}, 7);
  a.freeze();
  return product(a, pair_language(canonical_binary_language()));
}

SyncAutomaton ll2_marker_shift() {
  Alphabet bits({"0", "1"});
  const Symbol b0 = 0, b1 = 1;
  // Marker index parity decides direction: even p steps to p+2, odd p >= 3
  // steps to p-2, p = 1 steps to 0.
  // S=0, O=1, E2=2, U1=3, U2=4, V1=5, V2=6, C1=7, F=8.
  SyncAutomaton a(2, bits, 9, 0, {8});
  a.add_transition(0, {b0, b0}, 1);
  a.add_transition(0, {b1, b0}, 3);
  a.add_transition(0, {b0, b1}, 7);
  a.add_transition(1, {b0, b0}, 2);
  a.add_transition(1, {b0, b1}, 5);
  a.add_transition(2, {b0, b0}, 1);
  a.add_transition(2, {b1, b0}, 3);
  a.add_transition(3, {kPad, b0}, 4);
  a.add_transition(4, {kPad, b1}, 8);
  a.add_transition(5, {b0, kPad}, 6);
  a.add_transition(6, {b1, kPad}, 8);
  a.add_transition(7, {b1, kPad}, 8);
  a.freeze();
  return a;
}

}  // namespace builders

namespace {

const PairScheme& bit_pair_scheme() {
  static const PairScheme ps{Alphabet({"0", "1"}), Alphabet({"0", "1"})};
  return ps;
}

// Toggle-at-marker relation for the lamplighter: cursor components equal,
// lamp bits equal except at the marker step (absent bits read as 0).
SyncAutomaton ll2_toggle(const SyncAutomaton& language) {
  const PairScheme& ps = bit_pair_scheme();
  const Alphabet& pa = ps.pair_alphabet();
  SyncAutomaton a(2, pa, 2, 0, {1});  // B=0 (before marker), A=1 (after)
  auto lamp_bit = [&](Symbol p) { return p == kPad ? 0 : (ps.component(p, 0) == 1 ? 1 : 0); };
  auto cursor = [&](Symbol p) {  // -1 = absent
    if (p == kPad) return -1;
    Symbol c = ps.component(p, 1);
    return c == kPad ? -1 : static_cast<int>(c);
  };
  for (Symbol pu = kPad; pu < pa.size(); ++pu)
    for (Symbol pv = kPad; pv < pa.size(); ++pv) {
      if (pu == kPad && pv == kPad) continue;
      int cu = cursor(pu), cv = cursor(pv);
      bool lamps_equal = lamp_bit(pu) == lamp_bit(pv);
      if (cu == 0 && cv == 0 && lamps_equal) a.add_transition(0, {pu, pv}, 0);
      if (cu == 1 && cv == 1 && !lamps_equal) a.add_transition(0, {pu, pv}, 1);
      if (cu == -1 && cv == -1 && lamps_equal) a.add_transition(1, {pu, pv}, 1);
    }
  a.freeze();
  return product(a, pair_language(language));
}

Int position_index(const Int& p) {  // lamp/cursor position -> interleaved index
  return p >= 0 ? Int(p << 1) : Int((-p << 1) - 1);
}

Int index_position(std::size_t i) {
  return (i & 1) == 0 ? Int(i / 2) : Int(-static_cast<long long>(i / 2) - 1);
}

Int ll2_h(int n) {
  if (n <= 0) return 0;
  // Valid positions (index <= n-1) form the interval [pmin, pmax]; the
  // maximizer lights all of them, so only the final cursor varies.
  long long pmax = (n - 1) / 2, pmin = -(n / 2);
  Int best = pmax > -pmin ? pmax : -pmin;  // lamp-free configurations
  for (long long k = pmin; k <= pmax; ++k) {
    long long lo = std::min({pmin, 0LL, k}), hi = std::max({pmax, 0LL, k});
    long long left = (0 - lo) + (hi - lo) + (hi - k);
    long long right = (hi - 0) + (hi - lo) + (k - lo);
    Int cost = Int(pmax - pmin + 1) + std::min(left, right);
    if (cost > best) best = cost;
  }
  return best;
}

CayleyAutomaticStructure z_unary_structure() {
  CayleyAutomaticStructure s;
  s.name = "Z-unary";
  s.codec = "unary-z";
  s.model = make_model("Z");
  s.generators = s.model->generators();
  for (Symbol g = 0; g < s.generators.alphabet.size(); ++g)
    s.generator_values[g] = s.model->generator_value(g);
  s.symbols = Alphabet({"t", "T"});
  s.language = builders::unary_z_language();
  SyncAutomaton mt = builders::unary_z_increment();
  s.multipliers[s.generators.alphabet.index("T")] = mt.transposed();
  s.multipliers[s.generators.alphabet.index("t")] = std::move(mt);
  s.symbol_values[0] = s.model->generator_value(s.generators.alphabet.index("t"));
  s.symbol_values[1] = s.model->generator_value(s.generators.alphabet.index("T"));
  auto model = s.model;
  s.psi = [model](const Word& w) {
    GroupElement g = model->identity();
    for (Symbol c : w) g = model->multiply(g, model->generator_value(c));
    return g;
  };
  s.psi_inverse = [](const GroupElement& g) {
    Word w;
    Int n = g.ints[0];
    for (Int i = 0; i < (n < 0 ? -n : n); ++i) w.push_back(n > 0 ? 0 : 1);
    return w;
  };
  s.closed_distance = [model](const GroupElement& g) { return model->closed_form_distance(g); };
  s.analytic_h = [](int) { return std::optional<Int>(0); };
  return s;
}

CayleyAutomaticStructure z_zigzag_structure() {
  CayleyAutomaticStructure s;
  s.name = "Z-zigzag";
  s.codec = "zigzag-z";
  s.model = make_model("Z");
  s.generators = s.model->generators();
  for (Symbol g = 0; g < s.generators.alphabet.size(); ++g)
    s.generator_values[g] = s.model->generator_value(g);
  s.symbols = Alphabet({"0", "1"});
  s.language = builders::canonical_binary_language();
  SyncAutomaton mt = builders::zigzag_increment();
  s.multipliers[s.generators.alphabet.index("T")] = mt.transposed();
  s.multipliers[s.generators.alphabet.index("t")] = std::move(mt);
  // Shipped default symbol values: g_0 = 1, g_1 = t.
  s.symbol_values[0] = s.model->identity();
  s.symbol_values[1] = s.model->generator_value(s.generators.alphabet.index("t"));
  s.psi = [](const Word& w) { return GroupElement{{zigzag_decode(w)}, {}}; };
  s.psi_inverse = [](const GroupElement& g) { return zigzag_encode(g.ints[0]); };
  auto model = s.model;
  s.closed_distance = [model](const GroupElement& g) { return model->closed_form_distance(g); };
  s.analytic_h = [](int n) {
    if (n <= 0) return std::optional<Int>(0);
    return std::optional<Int>((Int(1) << (n - 1)) + n);
  };
  return s;
}

CayleyAutomaticStructure z2_zigzag_structure() {
  const PairScheme& ps = bit_pair_scheme();
  CayleyAutomaticStructure s;
  s.name = "Z2-zigzag";
  s.codec = "zigzag-z2";
  s.model = make_model("Z2");
  s.generators = s.model->generators();
  for (Symbol g = 0; g < s.generators.alphabet.size(); ++g)
    s.generator_values[g] = s.model->generator_value(g);
  s.symbols = ps.pair_alphabet();
  SyncAutomaton lzz = builders::canonical_binary_language();
  s.language = combine_1tape(ps, lzz, lzz);
  SyncAutomaton inc = builders::zigzag_increment();
  SyncAutomaton eq = equality_relation(lzz);
  SyncAutomaton mx = combine_2tape(ps, inc, eq);
  SyncAutomaton my = combine_2tape(ps, eq, inc);
  s.multipliers[s.generators.alphabet.index("X")] = mx.transposed();
  s.multipliers[s.generators.alphabet.index("x")] = std::move(mx);
  s.multipliers[s.generators.alphabet.index("Y")] = my.transposed();
  s.multipliers[s.generators.alphabet.index("y")] = std::move(my);
  for (Symbol a = 0; a < s.symbols.size(); ++a) s.symbol_values[a] = s.model->identity();
  s.psi = [&ps](const Word& w) {
    auto [w1, w2] = ps.unzip(w);
    return GroupElement{{zigzag_decode(w1), zigzag_decode(w2)}, {}};
  };
  s.psi_inverse = [&ps](const GroupElement& g) {
    return ps.zip(zigzag_encode(g.ints[0]), zigzag_encode(g.ints[1]));
  };
  auto model = s.model;
  s.closed_distance = [model](const GroupElement& g) { return model->closed_form_distance(g); };
  s.analytic_h = [](int n) {
    if (n <= 0) return std::optional<Int>(0);
    return std::optional<Int>(Int(1) << n);
  };
  return s;
}

CayleyAutomaticStructure ll2_structure() {
  const PairScheme& ps = bit_pair_scheme();
  CayleyAutomaticStructure s;
  s.name = "LL2";
  s.codec = "lamplighter";
  s.model = make_model("LL2");
  s.generators = s.model->generators();
  for (Symbol g = 0; g < s.generators.alphabet.size(); ++g)
    s.generator_values[g] = s.model->generator_value(g);
  s.symbols = ps.pair_alphabet();
  SyncAutomaton lamp = builders::canonical_binary_language();
  Alphabet bits({"0", "1"});
  SyncAutomaton cursor(1, bits, 2, 0, {1});  // 0*1: exactly one marker, at the end
  cursor.add_transition(0, {0}, 0);
  cursor.add_transition(0, {1}, 1);
  cursor.freeze();
  s.language = combine_1tape(ps, lamp, cursor);
  SyncAutomaton mt = combine_2tape(ps, equality_relation(lamp), builders::ll2_marker_shift());
  s.multipliers[s.generators.alphabet.index("T")] = mt.transposed();
  s.multipliers[s.generators.alphabet.index("t")] = std::move(mt);
  s.multipliers[s.generators.alphabet.index("a")] = ll2_toggle(s.language);
  for (Symbol a = 0; a < s.symbols.size(); ++a) s.symbol_values[a] = s.model->identity();
  s.psi = [&ps](const Word& w) {
    auto [lamps, marker] = ps.unzip(w);
    GroupElement g{{index_position(marker.size() - 1)}, {}};
    for (std::size_t i = 0; i < lamps.size(); ++i)
      if (lamps[i] == 1) g.lamps.insert(index_position(i));
    return g;
  };
  s.psi_inverse = [&ps](const GroupElement& g) {
    Word lamps;
    for (const Int& p : g.lamps) {
      std::size_t i = static_cast<std::size_t>(position_index(p));
      if (lamps.size() <= i) lamps.resize(i + 1, 0);
      lamps[i] = 1;
    }
    Word marker(static_cast<std::size_t>(position_index(g.ints[0])), 0);
    marker.push_back(1);
    return ps.zip(lamps, marker);
  };
  auto model = s.model;
  s.closed_distance = [model](const GroupElement& g) { return model->closed_form_distance(g); };
  s.analytic_h = [](int n) { return std::optional<Int>(ll2_h(n)); };
  return s;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"Z-unary", "Z-zigzag", "Z2-zigzag", "LL2"};
}

CayleyAutomaticStructure make_structure(const std::string& name) {
  if (name == "Z-unary") return z_unary_structure();
  if (name == "Z-zigzag") return z_zigzag_structure();
  if (name == "Z2-zigzag") return z2_zigzag_structure();
  if (name == "LL2") return ll2_structure();
  throw BadInput("unknown structure: " + name);
}

std::string save_structure_bundle(const CayleyAutomaticStructure& s, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json j;
  j["name"] = s.name;
  j["model"] = s.model->name();
  j["codec"] = s.codec;
  std::string lang_file = s.name + ".language.json";
  automaton_to_json_file(s.language, (fs::path(dir) / lang_file).string());
  j["language"] = lang_file;
  nlohmann::json mults = nlohmann::json::object();
  for (const auto& [g, m] : s.multipliers) {
    std::string gen = s.generators.alphabet.name(g);
    std::string file = s.name + ".M_" + gen + ".json";
    automaton_to_json_file(m, (fs::path(dir) / file).string());
    mults[gen] = file;
  }
  j["multipliers"] = mults;
  std::string manifest = (fs::path(dir) / (s.name + ".bundle.json")).string();
  std::ofstream out(manifest);
  out << j.dump(2) << "\n";
  return manifest;
}

CayleyAutomaticStructure load_structure_bundle(const std::string& manifest_path) {
  namespace fs = std::filesystem;
  std::ifstream in(manifest_path);
  if (!in) throw BadInput("cannot open bundle manifest: " + manifest_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw BadInput(manifest_path + ": " + e.what());
  }
  CayleyAutomaticStructure s = make_structure(j.at("name").get<std::string>());
  if (j.at("model").get<std::string>() != s.model->name())
    throw BadInput(manifest_path + ": model does not match codec registry entry");
  if (j.at("codec").get<std::string>() != s.codec)
    throw BadInput(manifest_path + ": unknown codec for structure");
  fs::path dir = fs::path(manifest_path).parent_path();
  auto load = [&](const std::string& file) {
    SyncAutomaton a = automaton_from_json_file((dir / file).string());
    if (!(a.alphabet() == s.symbols))
      throw BadInput(file + ": alphabet differs from the structure's symbols");
    return a;
  };
  s.language = load(j.at("language").get<std::string>());
  for (const auto& [gen, file] : j.at("multipliers").items()) {
    if (!s.generators.alphabet.has(gen))
      throw BadInput(manifest_path + ": multiplier for unknown generator " + gen);
    s.multipliers[s.generators.alphabet.index(gen)] = load(file.get<std::string>());
  }
  return s;
}

}  // namespace cadist
