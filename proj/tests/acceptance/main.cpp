// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure.  argv[1] is the cadist binary; CLI-facing criteria shell out to it
// and everything else goes through the library against independent oracles.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "cadist/catalog.hpp"
#include "cadist/filling.hpp"
#include "cadist/growth.hpp"
#include "cadist/profile.hpp"

namespace fs = std::filesystem;
using namespace cadist;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cadist;
fs::path g_work;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int sh(const std::string& args) {
  std::string cmd = g_cadist + " " + args + " >> " + (g_work / "cli.log").string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  return rc < 0 ? rc : WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Profile CSV: '#' header block, then "n,h,witness" rows.
std::map<int, long long> read_profile(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw BadInput("missing artifact " + p.string());
  std::map<int, long long> h;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
    auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    h[std::stoi(line.substr(0, c1))] = std::stoll(line.substr(c1 + 1, c2 - c1 - 1));
  }
  return h;
}

Presentation z2_presentation() {
  Presentation p{make_generators({{"x", "X"}, {"y", "Y"}}), {}};
  p.relators = {parse_word(p.gens.alphabet, "xyXY")};
  return p;
}

std::vector<Word> relator_moves(const Presentation& p) {
  std::vector<Word> moves;
  for (const Word& base :
       {free_reduce(p.gens, p.relators[0]), word_inverse(p.gens, p.relators[0])})
    for (std::size_t k = 0; k < base.size(); ++k) {
      Word rot(base.begin() + k, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + k);
      moves.push_back(rot);
    }
  return moves;
}

// Independent BFS over the rewriting graph: distance from w to the empty
// word, moves = insert a cyclic conjugate of r^{+-1} then freely reduce.
int bfs_area(const Presentation& p, const std::vector<Word>& moves, const Word& w0) {
  if (w0.empty()) return 0;
  std::size_t cap = w0.size() + 8;
  std::map<Word, int> dist{{w0, 0}};
  std::queue<Word> q;
  q.push(w0);
  while (!q.empty()) {
    Word w = q.front();
    q.pop();
    int d = dist.at(w);
    for (const Word& mv : moves)
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        Word nw(w.begin(), w.begin() + pos);
        nw.insert(nw.end(), mv.begin(), mv.end());
        nw.insert(nw.end(), w.begin() + pos, w.end());
        nw = free_reduce(p.gens, nw);
        if (nw.empty()) return d + 1;
        if (nw.size() <= cap && dist.emplace(nw, d + 1).second) q.push(nw);
      }
  }
  return -1;
}

bool check_certificate(const CayleyAutomaticStructure& s, const Word& loop, std::string& note) {
  FillingCertificate cert = corridor_fill(s, loop);
  std::string why;
  if (!validate_certificate(s, cert, &why)) {
    note = why;
    return false;
  }
  for (const FillingCell& c : cert.cells)  // every cell a genuine loop
    if (!(s.model->evaluate(c.boundary) == s.model->identity())) {
      note = "cell boundary is not a loop";
      return false;
    }
  if (Int(cert.max_cell_perimeter) > cert.perimeter_bound) {
    note = "perimeter bound violated";
    return false;
  }
  // The bound must really be 4 h(c|w|+d) + sigma for this structure.
  const FillingConstants& k = cert.constants;
  auto hv = s.analytic_h(static_cast<int>(k.c() * static_cast<int>(loop.size()) + k.d()));
  if (!hv || Int(4) * *hv + k.sigma() != cert.perimeter_bound) {
    note = "perimeter bound does not match the formula";
    return false;
  }
  if (!cell_count_bound_check(cert)) {
    note = "cell count bound violated";
    return false;
  }
  return true;
}

bool dirs_identical(const fs::path& a, const fs::path& b, std::string& note) {
  std::set<fs::path> rel;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) rel.insert(fs::relative(e.path(), a));
  for (const auto& e : fs::recursive_directory_iterator(b))
    if (e.is_regular_file()) rel.insert(fs::relative(e.path(), b));
  for (const fs::path& r : rel) {
    if (!fs::exists(a / r) || !fs::exists(b / r)) {
      note = "artifact set differs: " + r.string();
      return false;
    }
    if (slurp(a / r) != slurp(b / r)) {
      note = "artifact differs: " + r.string();
      return false;
    }
  }
  return !rel.empty();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance_test <path-to-cadist>\n";
    return 2;
  }
  g_cadist = argv[1];
  g_work = fs::temp_directory_path() / "cadist_acceptance";
  fs::remove_all(g_work);
  fs::create_directories(g_work);
  {
    std::ofstream z2(g_work / "z2.json");
    z2 << R"({"generators": [["x","X"],["y","Y"]], "relators": ["xyXY"]})" << "\n";
  }

  int failures = 0;
  auto criterion = [&](int id, const char* desc, const std::function<bool(std::string&)>& fn) {
    std::string note;
    bool ok = false;
    try {
      ok = fn(note);
    } catch (const std::exception& e) {
      note = e.what();
    }
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " — " << desc;
    if (!note.empty()) std::cout << " [" << note << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
  };

  criterion(1, "Z-unary h(n)=0 for n<=12 in under 1s", [&](std::string& note) {
    fs::path dir = g_work / "c1";
    auto t0 = Clock::now();
    if (sh("hfun --structure Z-unary --n 12 --out-dir " + dir.string()) != 0) return false;
    double t = seconds_since(t0);
    std::map<int, long long> h = read_profile(dir / "hfun_Z-unary.csv");
    if (h.rbegin()->first != 12) return false;
    for (const auto& [n, v] : h)
      if (v != 0) return false;
    std::ostringstream s;
    s << t << "s";
    note = s.str();
    return t < 1.0;
  });

  criterion(2, "Z-zigzag profile unbounded, h(4) matches brute-force oracle, under 30s",
            [&](std::string& note) {
    fs::path dir = g_work / "c2";
    auto t0 = Clock::now();
    if (sh("hfun --structure Z-zigzag --n 14 --out-dir " + dir.string()) != 0) return false;
    double t = seconds_since(t0);
    std::map<int, long long> h = read_profile(dir / "hfun_Z-zigzag.csv");
    if (h.rbegin()->first != 14) return false;
    long long prev = -1;
    for (const auto& [n, v] : h) {
      if (v < prev) return false;  // non-decreasing
      prev = v;
    }
    if (!(h.at(14) > h.at(8) && h.at(8) > h.at(4) && h.at(4) > 0)) return false;  // unbounded
    // Brute-force oracle: canonical codes are LSB-first binary, empty or
    // ending in 1; value by zigzag, word image counts the ones.
    long long oracle = 0;
    for (int len = 0; len <= 4; ++len)
      for (int bits = 0; bits < (1 << len); ++bits) {
        if (len > 0 && !((bits >> (len - 1)) & 1)) continue;
        long long v = bits % 2 == 0 ? bits / 2 : -(bits + 1) / 2;
        oracle = std::max(oracle, std::abs(v - __builtin_popcount(bits)));
      }
    std::ostringstream s;
    s << "h(4)=" << h.at(4) << " oracle=" << oracle << " " << t << "s";
    note = s.str();
    return h.at(4) == oracle && t < 30.0;
  });

  criterion(3, "length bound holds on every structure at n=10", [&](std::string& note) {
    for (const std::string& name : catalog_names()) {
      LengthBoundReport rep = check_length_bound(make_structure(name), 10);
      if (!rep.pass) {
        note = name + ": " + rep.detail;
        return false;
      }
    }
    return true;
  });

  criterion(4, "verify_structure at depth 8 everywhere; fault injection caught",
            [&](std::string& note) {
    for (const std::string& name : catalog_names()) {
      VerificationReport rep = verify_structure(make_structure(name), 8);
      if (!rep.all_pass()) {
        note = name + " failed";
        return false;
      }
    }
    CayleyAutomaticStructure s = make_structure("Z-unary");
    SyncAutomaton& m = s.multipliers.begin()->second;
    m.set_accepting(m.initial(), !m.is_accepting(m.initial()));
    VerificationReport rep = verify_structure(s, 8);
    if (rep.all_pass()) {
      note = "fault not detected";
      return false;
    }
    const ConditionReport& bad = rep.soundness.pass ? rep.completeness : rep.soundness;
    note = bad.detail.substr(0, 60);
    return !bad.detail.empty();  // concrete counterexample reported
  });

  criterion(5, "transport to Y = {t,T,t^2,T^2} satisfies both inequalities on n<=8",
            [&](std::string& note) {
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
    if (!verify_structure(tr.structure, 5).all_pass()) return false;
    DistanceProfile ps = compute_h(s, 8), py = compute_h(tr.structure, 8);
    DistanceProfile ps_far = compute_h(s, 8 * tr.m1), py_far = compute_h(tr.structure, 8 * tr.m2);
    std::ostringstream o;
    o << "M1=" << tr.m1 << " M2=" << tr.m2;
    note = o.str();
    return check_equivalence_constants(py, ps_far, tr.m1, tr.m1, 0) &&
           check_equivalence_constants(ps, py_far, tr.m2, tr.m2, 0);
  });

  criterion(6, "corridor certificates on 50 random Z2 loops and LL2 dense loops in under 2min",
            [&](std::string& note) {
    auto t0 = Clock::now();
    CayleyAutomaticStructure z2 = make_structure("Z2-zigzag");
    std::mt19937 rng(2026);
    int made = 0;
    while (made < 50) {
      Word w(static_cast<std::size_t>(2 + 2 * (rng() % 6)));  // length <= 12
      for (Symbol& a : w)
        a = static_cast<Symbol>(rng() % static_cast<unsigned>(z2.generators.alphabet.size()));
      if (!(z2.model->evaluate(w) == z2.model->identity())) continue;
      ++made;
      if (!check_certificate(z2, w, note)) return false;
    }
    CayleyAutomaticStructure ll2 = make_structure("LL2");
    for (int n = 1; n <= 2; ++n)
      if (!check_certificate(ll2, dense_witness_loops(*ll2.model, n), note)) return false;
    double t = seconds_since(t0);
    std::ostringstream s;
    s << t << "s";
    note = s.str();
    return t < 120.0;
  });

  criterion(7, "area values and agreement with BFS over the rewriting graph up to length 8",
            [&](std::string& note) {
    Presentation p = z2_presentation();
    std::vector<Word> moves = relator_moves(p);
    if (area(p, parse_word(p.gens.alphabet, "xyXY"), 8).area != 1) return false;
    if (area(p, parse_word(p.gens.alphabet, "xxyXXY"), 8).area != 2) return false;
    if (area(p, parse_word(p.gens.alphabet, "xXyY"), 8).area != 0) return false;
    auto model = make_model("Z2");
    std::set<Word> reduced;
    for (int len = 0; len <= 8; len += 2) {
      Word w(static_cast<std::size_t>(len), 0);
      while (true) {
        if (model->evaluate(w) == model->identity()) reduced.insert(free_reduce(p.gens, w));
        std::size_t i = 0;
        for (; i < w.size() && w[i] == 3; ++i) w[i] = 0;
        if (i == w.size()) break;
        ++w[i];
      }
    }
    int agreements = 0;
    for (const Word& w : reduced) {
      if (area(p, w, 8).area != bfs_area(p, moves, w)) {
        note = "disagreement at " + render_word(p.gens.alphabet, w);
        return false;
      }
      ++agreements;
    }
    note = std::to_string(agreements) + " identity words";
    return agreements > 100;
  });

  criterion(8, "dehn inequality with D=c+e holds on Z2 for n in {4,6,8}", [&](std::string& note) {
    CayleyAutomaticStructure s = make_structure("Z2-zigzag");
    Presentation p = z2_presentation();
    StateBoundConstants k = s.constants();
    if (FillingConstants{k.m, k.e}.big_d() != Int(k.m) / 2 + k.e) {
      note = "D != c+e";
      return false;
    }
    for (int n : {4, 6, 8})
      if (!dehn_inequality_check(s, p, n, 99, 6).all_pass) {
        note = "violated at n=" + std::to_string(n);
        return false;
      }
    return true;
  });

  criterion(9, "grid refutation of K<=16, M<=8 in both directions in under 10s",
            [&](std::string& note) {
    auto t0 = Clock::now();
    SymbolicFunction f = SymbolicFunction::incomparable_step();
    SymbolicFunction i = SymbolicFunction::identity();
    for (const auto& [g, h] : {std::pair<const SymbolicFunction*, const SymbolicFunction*>{&f, &i},
                               {&i, &f}}) {
      GridRefutation r = refute_preceq_grid(*g, *h, 16, 8, Int(1) << 32);
      if (!r.all_refuted || !r.survivors.empty() || r.violations.size() != 16 * 8) return false;
    }
    double t = seconds_since(t0);
    std::ostringstream s;
    s << t << "s";
    note = s.str();
    return t < 10.0;
  });

  criterion(10, "strong super-polynomiality witnesses and superquadratic ground truth",
            [&](std::string& note) {
    if (!strongly_superpoly_check(SymbolicFunction::exponential(2), Int(1) << 10, 8, 1000000)
             .witness_found)
      return false;
    if (strongly_superpoly_check(SymbolicFunction::f_alpha(2), Int(1) << 10, 8, 1000000)
            .witness_found)
      return false;
    if (strongly_superpoly_check(SymbolicFunction::power(3), Int(1) << 10, 8, 1000000)
            .witness_found)
      return false;
    for (const char* spec : {"identity", "pow:1.5", "pow:2", "pow:3", "n2logn", "exp:1.5",
                             "falpha:2", "step:incomparable"}) {
      SymbolicFunction f = SymbolicFunction::parse(spec);
      SuperQuadraticReport rep = superquadratic_check(f, 8, 1000000);
      if (!f.super_quadratic_truth() ||
          rep.sampled_super_quadratic != *f.super_quadratic_truth()) {
        note = std::string(spec) + ": sampled evidence disagrees";
        return false;
      }
    }
    return true;
  });

  criterion(11, "artifacts byte-identical across thread counts 1 and 8", [&](std::string& note) {
    std::string z2 = (g_work / "z2.json").string();
    std::vector<std::string> cmds{
        "hfun --structure Z-unary --n 12",
        "hfun --structure Z-zigzag --n 14",
        "verify --structure Z2-zigzag --depth 5",
        "fill --structure Z2-zigzag --loop \"x y X Y\"",
        "fill --structure LL2 --dense-n 1",
        "area --presentation " + z2 + " --word \"x y X Y\"",
        "dehn-check --structure Z2-zigzag --presentation " + z2 +
            " --n 6 --samples 4 --seed 7",
        "dense-loops --n 3",
        "phi --dense-n 3",
        "compare --g step:incomparable --f identity --grid 16x8 --range 4294967296",
        "compare --f exp:2 --superpoly --K 1024 --M 8 --range 1000000",
        "list"};
    for (const char* tag : {"t1", "t8"}) {
      fs::path dir = g_work / "c11" / tag;
      std::string threads = tag[1] == '1' ? "1" : "8";
      for (const std::string& c : cmds)
        if (sh(c + " --threads " + threads + " --out-dir " + dir.string()) != 0) {
          note = "command failed: " + c;
          return false;
        }
    }
    return dirs_identical(g_work / "c11" / "t1", g_work / "c11" / "t8", note);
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
