#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>

#include "cadist/catalog.hpp"
#include "cadist/profile.hpp"

using namespace cadist;

TEST_CASE("zigzag codec round trip and canonical form") {
  for (int v = -300; v <= 300; ++v) {
    Word w = zigzag_encode(v);
    CHECK(zigzag_decode(w) == v);
    if (!w.empty()) CHECK(w.back() == 1);  // canonical codes end in 1
  }
  CHECK(zigzag_encode(0).empty());
}

TEST_CASE("zigzag increment automaton: soundness and completeness oracle") {
  SyncAutomaton inc = builders::zigzag_increment();
  CHECK(inc.num_states() == 16);  // measured on the shipped machine
  int seen = 0;
  for (const Convolution& c : enumerate_language(inc, 9)) {
    CHECK(zigzag_decode(c.words[1]) == zigzag_decode(c.words[0]) + 1);
    ++seen;
  }
  CHECK(seen > 200);
  for (int k = -120; k <= 120; ++k)
    CHECK(inc.accepts({{zigzag_encode(k), zigzag_encode(k + 1)}}));
}

TEST_CASE("unary increment automaton against arithmetic") {
  SyncAutomaton inc = builders::unary_z_increment();
  auto code = [](int v) {
    return v >= 0 ? Word(static_cast<std::size_t>(v), 0) : Word(static_cast<std::size_t>(-v), 1);
  };
  for (int a = -8; a <= 8; ++a)
    for (int b = -8; b <= 8; ++b) CHECK(inc.accepts({{code(a), code(b)}}) == (b == a + 1));
}

TEST_CASE("marker shift automaton tracks the interleaved cursor index") {
  SyncAutomaton shift = builders::ll2_marker_shift();
  // Cursor words 0^p 1 encode position q(p) = p/2 if even, -(p+1)/2 if odd;
  // the shift accepts (0^p 1, 0^p' 1) iff the position advances by one.
  auto cursor = [](int p) {
    Word w(static_cast<std::size_t>(p), 0);
    w.push_back(1);
    return w;
  };
  auto pos = [](int p) { return p % 2 == 0 ? p / 2 : -(p + 1) / 2; };
  for (int p = 0; p <= 12; ++p)
    for (int q = 0; q <= 12; ++q)
      CHECK(shift.accepts({{cursor(p), cursor(q)}}) == (pos(q) == pos(p) + 1));
}

TEST_CASE("catalog structures verify at depth 5 and report measured constants") {
  std::map<std::string, std::pair<int, int>> expect{
      {"Z-unary", {4, 0}}, {"Z-zigzag", {16, 0}}, {"Z2-zigzag", {70, 0}}, {"LL2", {34, 1}}};
  for (const std::string& name : catalog_names()) {
    CayleyAutomaticStructure s = make_structure(name);
    VerificationReport rep = verify_structure(s, 5);
    INFO(name, ": ", rep.regularity.detail, rep.bijectivity.detail, rep.soundness.detail,
         rep.completeness.detail);
    CHECK(rep.all_pass());
    StateBoundConstants c = s.constants();
    CHECK(c.m == expect.at(name).first);
    CHECK(c.e == expect.at(name).second);
  }
}

TEST_CASE("a fault-injected multiplier is caught with a counterexample") {
  CayleyAutomaticStructure s = make_structure("Z-unary");
  SyncAutomaton& m = s.multipliers.begin()->second;
  m.set_accepting(m.initial(), !m.is_accepting(m.initial()));
  VerificationReport rep = verify_structure(s, 5);
  CHECK_FALSE(rep.all_pass());
  CHECK((!rep.soundness.pass || !rep.completeness.pass));
  CHECK_FALSE((rep.soundness.pass ? rep.completeness : rep.soundness).detail.empty());
}

TEST_CASE("analytic h agrees with enumeration on every catalog structure") {
  std::map<std::string, int> depth{
      {"Z-unary", 10}, {"Z-zigzag", 9}, {"Z2-zigzag", 6}, {"LL2", 7}};
  for (const std::string& name : catalog_names()) {
    CayleyAutomaticStructure s = make_structure(name);
    DistanceProfile p = compute_h(s, depth.at(name));
    for (const ProfileEntry& e : p.entries) {
      REQUIRE(s.analytic_h);
      auto closed = s.analytic_h(e.n);
      REQUIRE(closed.has_value());
      CHECK(*closed == e.h);
    }
  }
}

TEST_CASE("h is monotone and the profile CSV is well formed") {
  CayleyAutomaticStructure s = make_structure("Z-zigzag");
  DistanceProfile p = compute_h(s, 8);
  for (int n = 1; n <= p.n_max(); ++n) CHECK(p.h(n) >= p.h(n - 1));
  CHECK(p.h(4) == 12);
  std::string csv = profile_csv(p, s.symbols);
  CHECK(csv.rfind("n,h,witness\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);  // header + 9 rows
}

TEST_CASE("parallel compute_h is deterministic") {
  CayleyAutomaticStructure s = make_structure("Z2-zigzag");
  DistanceProfile a = compute_h(s, 5, 1), b = compute_h(s, 5, 8);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].h == b.entries[i].h);
    CHECK(a.entries[i].witness == b.entries[i].witness);
  }
}

TEST_CASE("length bound holds on every catalog structure") {
  for (const std::string& name : catalog_names()) {
    LengthBoundReport rep = check_length_bound(make_structure(name), 8);
    INFO(name, ": ", rep.detail);
    CHECK(rep.pass);
  }
}

TEST_CASE("equivalence constant check") {
  CayleyAutomaticStructure s = make_structure("Z-zigzag");
  DistanceProfile p = compute_h(s, 6), q = compute_h(s, 12);
  CHECK(check_equivalence_constants(p, q, 1, 2, 0));
  // A growing profile is not dominated by the flat unary one.
  DistanceProfile flat = compute_h(make_structure("Z-unary"), 12);
  CHECK_FALSE(check_equivalence_constants(p, flat, 5, 2, 1));
  CHECK_THROWS_AS(check_equivalence_constants(q, p, 1, 2, 0), BadInput);
}

TEST_CASE("alphabet merge keeps the structure sound") {
  CayleyAutomaticStructure s = make_structure("Z-zigzag");
  auto model = s.model;
  std::map<Symbol, MergeChoice> choice;
  choice[s.symbols.index("0")] = {model->identity(), {}};
  choice[s.symbols.index("1")] = {model->evaluate({s.generators.alphabet.index("t")}),
                                  {s.generators.alphabet.index("t")}};
  CayleyAutomaticStructure merged = merge_alphabet(s, choice);
  CHECK(merged.generators.alphabet.size() > s.generators.alphabet.size());
  VerificationReport rep = verify_structure(merged, 4);
  INFO(rep.soundness.detail, rep.completeness.detail);
  CHECK(rep.all_pass());
  // Distances can only shrink under a larger generating set.
  for (int v = -6; v <= 6; ++v) {
    GroupElement g = model->evaluate(Word(static_cast<std::size_t>(std::abs(v)),
                                          v >= 0 ? s.generators.alphabet.index("t")
                                                 : s.generators.alphabet.index("T")));
    CHECK(merged.distance(model->identity(), g, 100) <= s.distance(model->identity(), g, 100));
  }
}

TEST_CASE("generating set transport on Z with squares adjoined") {
  CayleyAutomaticStructure s = make_structure("Z-unary");
  auto model = s.model;
  std::map<std::string, GroupElement> y_values{
      {"t", model->evaluate({s.generators.alphabet.index("t")})},
      {"T", model->evaluate({s.generators.alphabet.index("T")})},
      {"d", model->evaluate(Word(2, s.generators.alphabet.index("t")))},
      {"D", model->evaluate(Word(2, s.generators.alphabet.index("T")))}};
  TransportResult tr = transport(s, {{"t", "T"}, {"d", "D"}}, y_values,
                                 {{"t", "t"}, {"T", "T"}},
                                 {{"t", {"t"}}, {"T", {"T"}}, {"d", {"t", "t"}},
                                  {"D", {"T", "T"}}});
  CHECK(tr.m1 == 2);
  CHECK(tr.m2 == 1);
  VerificationReport rep = verify_structure(tr.structure, 5);
  INFO(rep.soundness.detail, rep.completeness.detail);
  CHECK(rep.all_pass());
  // Transport inequalities with the construction's own constants.
  DistanceProfile ps = compute_h(s, 8), py = compute_h(tr.structure, 8);
  DistanceProfile ps_far = compute_h(s, 8 * tr.m1), py_far = compute_h(tr.structure, 8 * tr.m2);
  CHECK(check_equivalence_constants(py, ps_far, tr.m1, tr.m1, 0));
  CHECK(check_equivalence_constants(ps, py_far, tr.m2, tr.m2, 0));
}

TEST_CASE("structure bundles round trip through disk") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "cadist_bundle_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const std::string& name : {std::string("Z-zigzag"), std::string("LL2")}) {
    CayleyAutomaticStructure s = make_structure(name);
    std::string manifest = save_structure_bundle(s, (dir / name).string());
    CayleyAutomaticStructure back = load_structure_bundle(manifest);
    CHECK(back.name == s.name);
    CHECK(back.codec == s.codec);
    CHECK(back.language.num_states() == s.language.num_states());
    REQUIRE(back.multipliers.size() == s.multipliers.size());
    VerificationReport rep = verify_structure(back, 4);
    CHECK(rep.all_pass());
  }
  fs::remove_all(dir);
}

TEST_CASE("psi inverse round trips every element of the 5-ball") {
  for (const std::string& name : catalog_names()) {
    CayleyAutomaticStructure s = make_structure(name);
    for (const GroupElement& g : s.model->ball(4)) {
      Word u = s.psi_inverse(g);
      CHECK(s.language.accepts({{u}}));
      CHECK(s.psi(u) == g);
    }
  }
}
