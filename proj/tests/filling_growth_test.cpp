#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>
#include <queue>
#include <random>

#include "cadist/catalog.hpp"
#include "cadist/filling.hpp"
#include "cadist/growth.hpp"
#include "cadist/profile.hpp"

using namespace cadist;

namespace {

Presentation z2_presentation() {
  Presentation p{make_generators({{"x", "X"}, {"y", "Y"}}), {}};
  p.relators = {parse_word(p.gens.alphabet, "xyXY")};
  return p;
}

// Independent area oracle for Z^2 = <x,y | [x,y]>: trace the loop on the
// integer grid and sum |winding number| over unit cells.  Every cell of a
// minimal filling maps onto one unit square, and a square with winding w
// needs |w| cells over it, so the sum is exactly the minimal area.
Int winding_area(const Presentation& p, const Word& w) {
  Symbol x = p.gens.alphabet.index("x"), ix = p.gens.alphabet.index("X");
  Symbol y = p.gens.alphabet.index("y");
  struct VEdge {
    int a, b, dir;  // vertical edge x = a, y in (b, b+1), +1 up / -1 down
  };
  std::vector<VEdge> edges;
  int cx = 0, cy = 0, lo = 0, hi = 0;
  for (Symbol s : w) {
    if (s == x) {
      ++cx;
    } else if (s == ix) {
      --cx;
    } else if (s == y) {
      edges.push_back({cx, cy, +1});
      ++cy;
    } else {
      --cy;
      edges.push_back({cx, cy, -1});
    }
    lo = std::min({lo, cx, cy});
    hi = std::max({hi, cx, cy});
  }
  REQUIRE(cx == 0);
  REQUIRE(cy == 0);
  Int total = 0;
  for (int i = lo - 1; i <= hi; ++i)
    for (int j = lo - 1; j <= hi; ++j) {
      int winding = 0;  // crossings of the rightward ray from (i+1/2, j+1/2)
      for (const VEdge& e : edges)
        if (e.b == j && e.a > i) winding += e.dir;
      total += std::abs(winding);
    }
  return total;
}

// One legal rewriting move: next arises from cur by inserting a cyclic
// conjugate of the relator or its inverse, then freely reducing.
bool one_insertion_apart(const Presentation& p, const Word& cur, const Word& next) {
  for (const Word& base :
       {free_reduce(p.gens, p.relators[0]), word_inverse(p.gens, p.relators[0])})
    for (std::size_t k = 0; k < base.size(); ++k) {
      Word mv(base.begin() + k, base.end());
      mv.insert(mv.end(), base.begin(), base.begin() + k);
      for (std::size_t pos = 0; pos <= cur.size(); ++pos) {
        Word nw(cur.begin(), cur.begin() + pos);
        nw.insert(nw.end(), mv.begin(), mv.end());
        nw.insert(nw.end(), cur.begin() + pos, cur.end());
        if (free_reduce(p.gens, nw) == next) return true;
      }
    }
  return false;
}

}  // namespace

TEST_CASE("area agrees with the winding oracle on every identity word of length <= 8") {
  Presentation p = z2_presentation();
  auto z2 = make_model("Z2");
  std::map<Word, Int> memo;  // keyed by reduced word; many inputs share one
  int checked = 0;
  for (int len = 0; len <= 8; len += 2) {
    // All words of the given length via odometer.
    Word w(static_cast<std::size_t>(len), 0);
    while (true) {
      if (z2->evaluate(w) == z2->identity()) {
        Word r = free_reduce(p.gens, w);
        auto [it, fresh] = memo.emplace(r, 0);
        if (fresh) it->second = Int(area(p, r, 8).area);
        CHECK(it->second == winding_area(p, w));
        ++checked;
      }
      std::size_t i = 0;
      for (; i < w.size() && w[i] == 3; ++i) w[i] = 0;
      if (i == w.size()) break;
      ++w[i];
    }
  }
  CHECK(checked > 2000);
}

TEST_CASE("area certificates replay: each step is one relator application") {
  Presentation p = z2_presentation();
  std::map<std::string, int> expect{
      {"xyXY", 1}, {"xxyXXY", 2}, {"xxyyXXYY", 4}, {"xyxyXYXY", 2}};
  for (const auto& [text, want] : expect) {
    AreaResult r = area(p, parse_word(p.gens.alphabet, text), 16);
    CHECK(r.area == want);
    CHECK(r.certificate.size() == static_cast<std::size_t>(r.area));
    Word cur = free_reduce(p.gens, r.word);
    for (const Word& next : r.certificate) {
      CHECK(one_insertion_apart(p, cur, next));
      cur = next;
    }
    CHECK(cur.empty());
  }
}

TEST_CASE("area of non-identity words is undefined and throws the budget error") {
  Presentation p = z2_presentation();
  CHECK_THROWS_AS(area(p, parse_word(p.gens.alphabet, "x"), 6), AreaExceedsMax);
}

TEST_CASE("corridor certificates validate on seeded random Z2 loops") {
  CayleyAutomaticStructure s = make_structure("Z2-zigzag");
  std::mt19937 rng(2024);
  int made = 0;
  while (made < 20) {
    Word w(static_cast<std::size_t>(2 + 2 * (rng() % 5)));
    for (Symbol& a : w)
      a = static_cast<Symbol>(rng() % static_cast<unsigned>(s.generators.alphabet.size()));
    if (!(s.model->evaluate(w) == s.model->identity())) continue;
    ++made;
    FillingCertificate cert = corridor_fill(s, w);
    std::string why;
    CHECK_MESSAGE(validate_certificate(s, cert, &why), why);
    CHECK(cell_count_bound_check(cert));
    CHECK(Int(cert.max_cell_perimeter) <= cert.perimeter_bound);
  }
}

TEST_CASE("corridor certificates validate on LL2 dense loops") {
  CayleyAutomaticStructure s = make_structure("LL2");
  for (int n = 1; n <= 2; ++n) {
    Word loop = dense_witness_loops(*s.model, n);
    FillingCertificate cert = corridor_fill(s, loop);
    std::string why;
    CHECK_MESSAGE(validate_certificate(s, cert, &why), why);
    CHECK(cell_count_bound_check(cert));
    for (const FillingCell& c : cert.cells)
      CHECK(s.model->evaluate([&] {
              Word over_model;
              for (Symbol a : c.boundary) over_model.push_back(a);
              return over_model;
            }()) == s.model->identity());
  }
}

TEST_CASE("tampered certificates are rejected") {
  CayleyAutomaticStructure s = make_structure("Z2-zigzag");
  Word loop = parse_word(s.generators.alphabet, "xyXY");
  FillingCertificate cert = corridor_fill(s, loop);
  std::string why;
  REQUIRE(validate_certificate(s, cert, &why));

  // Drop a cell that contributes to the product (one whose boundary does
  // not already freely cancel); the replay must notice.
  FillingCertificate broken = cert;
  for (std::size_t i = 0; i < broken.cells.size(); ++i)
    if (!free_reduce(s.generators, broken.cells[i].boundary).empty()) {
      broken.cells.erase(broken.cells.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  REQUIRE(broken.cells.size() == cert.cells.size() - 1);
  CHECK_FALSE(validate_certificate(s, broken, &why));

  broken = cert;
  for (FillingCell& c : broken.cells)
    if (!c.boundary.empty()) {
      c.boundary.push_back(c.boundary.front());  // no longer a loop
      break;
    }
  CHECK_FALSE(validate_certificate(s, broken, &why));
}

TEST_CASE("non-loops are refused") {
  CayleyAutomaticStructure s = make_structure("Z2-zigzag");
  CHECK_THROWS_AS(corridor_fill(s, parse_word(s.generators.alphabet, "xy")), BadInput);
}

TEST_CASE("certificate JSON carries the constants block") {
  CayleyAutomaticStructure s = make_structure("Z-unary");
  FillingCertificate cert = corridor_fill(s, parse_word(s.generators.alphabet, "t T"));
  std::string j = certificate_json(s, cert);
  for (const char* key : {"\"m\"", "\"e\"", "\"sigma\"", "\"cells\"", "\"perimeter_bound\""})
    CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("dehn inequality check passes on Z2 at several scales") {
  CayleyAutomaticStructure s = make_structure("Z2-zigzag");
  Presentation p = z2_presentation();
  for (int n : {4, 6, 8}) {
    DehnCheckReport rep = dehn_inequality_check(s, p, n, 99, 6);
    CHECK(rep.all_pass);
    CHECK(rep.min_margin >= 0);
    CHECK(rep.rows.size() == 6);
  }
}

TEST_CASE("phi step function: values, monotonicity, breakpoint fixpoints") {
  StepFunction phi = phi_step_function({16, 24, 32});
  CHECK(phi.eval(20) == 16);
  CHECK(phi.eval(24) == 24);
  CHECK(phi.eval(15) == 0);
  for (int n = 1; n <= 40; ++n) {
    CHECK(phi.eval(n) <= n);
    if (n > 1) CHECK(phi.eval(n) >= phi.eval(n - 1));
  }
  CHECK_THROWS_AS(phi_step_function({4, 4}), BadInput);
}

TEST_CASE("incomparable step function hits the published values") {
  SymbolicFunction f = SymbolicFunction::incomparable_step();
  CHECK(f.eval(2) == 2);
  CHECK(f.eval(4) == 16);
  CHECK(f.eval(16) == 16);
  CHECK(f.eval(256) == 65536);
  CHECK(f.eval(255) == 16);
}

TEST_CASE("grid refutation separates the incomparable step from identity") {
  SymbolicFunction f = SymbolicFunction::incomparable_step();
  SymbolicFunction i = SymbolicFunction::identity();
  for (const auto& [g, h] : {std::pair<const SymbolicFunction*, const SymbolicFunction*>{&f, &i},
                             {&i, &f}}) {
    GridRefutation r = refute_preceq_grid(*g, *h, 16, 8, Int(1) << 32);
    CHECK(r.all_refuted);
    CHECK(r.survivors.empty());
    CHECK(r.violations.size() == 16 * 8);
  }
}

TEST_CASE("verify_preceq: exhaustive on steps, flagged otherwise") {
  SymbolicFunction phi = SymbolicFunction::step(phi_step_function({2, 4, 8}));
  PreceqReport r = verify_preceq(phi, SymbolicFunction::identity(), {1, 1, 1}, 1000);
  CHECK(r.holds);
  CHECK(r.exhaustive);
  // n^2 <= 2^n only from n = 5 on (it fails at n = 3), and a range beyond
  // the exhaustive-sweep threshold exercises the sampled path.
  PreceqReport r2 = verify_preceq(SymbolicFunction::power(2), SymbolicFunction::exponential(2),
                                  {1, 1, 5}, 1000000);
  CHECK(r2.holds);
  CHECK_FALSE(r2.exhaustive);
  PreceqReport r3 = verify_preceq(SymbolicFunction::power(2), SymbolicFunction::identity(),
                                  {4, 2, 1}, 100000);
  CHECK_FALSE(r3.holds);
  CHECK(r3.first_violation > 0);
}

TEST_CASE("affine normalization produces verified witnesses") {
  SymbolicFunction f = SymbolicFunction::poly_log();
  AffineNormalization norm = normalize_affine(f, 2, 3, 5, 2);
  PreceqReport fwd = verify_preceq(norm.h, f, norm.forward, 100000);
  PreceqReport bwd = verify_preceq(f, norm.h, norm.backward, 100000);
  CHECK(fwd.holds);
  CHECK(bwd.holds);
}

TEST_CASE("superquadratic sampling matches catalog ground truth") {
  for (const char* spec : {"identity", "pow:1.5", "pow:2", "pow:3", "n2logn", "exp:1.5",
                           "falpha:2", "step:incomparable"}) {
    SymbolicFunction f = SymbolicFunction::parse(spec);
    SuperQuadraticReport rep = superquadratic_check(f, 8, 1000000);
    REQUIRE(f.super_quadratic_truth().has_value());
    INFO(spec, ": ", rep.note);
    CHECK(rep.sampled_super_quadratic == *f.super_quadratic_truth());
    REQUIRE(rep.ground_truth.has_value());
    CHECK(*rep.ground_truth == *f.super_quadratic_truth());
  }
}

TEST_CASE("strong super-polynomiality: witness for 2^n, none for f_alpha or n^3") {
  StrongSuperpolyReport e = strongly_superpoly_check(SymbolicFunction::exponential(2),
                                                     Int(1) << 10, 8, 1000000);
  CHECK(e.witness_found);
  StrongSuperpolyReport a = strongly_superpoly_check(SymbolicFunction::f_alpha(2),
                                                     Int(1) << 10, 8, 1000000);
  CHECK_FALSE(a.witness_found);
  StrongSuperpolyReport c = strongly_superpoly_check(SymbolicFunction::power(3),
                                                     Int(1) << 10, 8, 1000000);
  CHECK_FALSE(c.witness_found);
}
