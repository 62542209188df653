#include <sys/resource.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cadist/catalog.hpp"
#include "cadist/filling.hpp"
#include "cadist/growth.hpp"
#include "cadist/profile.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cadist;

namespace {

constexpr const char* kVersion = "cadist 0.1.0";

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

struct Options {
  std::string config_path, out_dir = ".", structure, model, out;
  std::string word, loop, loop_file, presentation, g_spec, f_spec, grid, lengths;
  int depth = 8, n = 8, dense_n = 0, threads = 1, samples = 8, max_area = 16, eval_max = 0;
  unsigned seed = 0;
  Int K = 1, M = 1, N = 1, range = Int(1) << 32;
  bool fault_inject = false, breakpoints_only = false, superquad = false, superpoly = false;
};

/// Canonical record of everything that shapes artifact content. Thread count
/// and output locations are deliberately excluded so parallel runs stay
/// byte-identical.
std::string canonical_config(const std::string& sub, const Options& o) {
  std::ostringstream s;
  s << "cmd=" << sub << ";structure=" << o.structure << ";depth=" << o.depth << ";n=" << o.n
    << ";dense_n=" << o.dense_n << ";samples=" << o.samples << ";max_area=" << o.max_area
    << ";seed=" << o.seed << ";word=" << o.word << ";loop=" << o.loop
    << ";presentation=" << o.presentation << ";g=" << o.g_spec << ";f=" << o.f_spec
    << ";grid=" << o.grid << ";lengths=" << o.lengths << ";K=" << o.K << ";M=" << o.M
    << ";N=" << o.N << ";range=" << o.range << ";eval_max=" << o.eval_max
    << ";fault=" << o.fault_inject << ";bponly=" << o.breakpoints_only << ";sq=" << o.superquad
    << ";sp=" << o.superpoly;
  return s.str();
}

struct Header {
  std::string digest;
  unsigned seed = 0;
  std::optional<FillingConstants> constants;

  std::string csv() const {
    std::ostringstream s;
    s << "# " << kVersion << "\n# config " << digest << "\n# seed " << seed << "\n";
    if (constants)
      s << "# constants m=" << constants->m << " e=" << constants->e << " c=" << constants->c()
        << " d=" << constants->d() << " sigma=" << constants->sigma()
        << " D=" << constants->big_d() << "\n";
    return s.str();
  }
  json to_json() const {
    json j{{"tool", kVersion}, {"config_digest", digest}, {"seed", seed}};
    if (constants)
      j["constants"] = {{"m", constants->m},         {"e", constants->e},
                        {"c", constants->c()},       {"d", constants->d()},
                        {"sigma", constants->sigma()}, {"D", constants->big_d()}};
    return j;
  }
};

FillingConstants constants_of(const CayleyAutomaticStructure& s) {
  StateBoundConstants sb = s.constants();
  return {sb.m, sb.e};
}

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path().empty() ? "." : p.parent_path());
  std::ofstream out(p);
  if (!out) throw BadInput("cannot write " + p.string());
  out << text;
  std::cout << "wrote " << p.string() << "\n";
}

void write_failure(const fs::path& out_dir, const std::string& kind, const std::string& msg) {
  json j{{"tool", kVersion}, {"failure", kind}, {"message", msg}};
  fs::create_directories(out_dir);
  std::ofstream(out_dir / "failure.json") << j.dump(2) << "\n";
}

Word parse_loop(const CayleyAutomaticStructure& s, const Options& o) {
  if (o.dense_n > 0 && o.loop.empty() && o.loop_file.empty()) {
    if (s.name != "LL2") throw BadInput("--dense-n requires the LL2 structure");
    return dense_witness_loops(*s.model, o.dense_n);
  }
  std::string text = o.loop;
  if (!o.loop_file.empty()) {
    std::ifstream in(o.loop_file);
    if (!in) throw BadInput("cannot open " + o.loop_file);
    std::getline(in, text);
  }
  if (text.empty()) throw BadInput("fill: need --loop, --loop-file, or --dense-n");
  return parse_word(s.generators.alphabet, text);
}

int cmd_list(const Options& o, const Header& h) {
  std::ostringstream out;
  out << h.csv() << "kind,name\n";
  for (const std::string& n : catalog_names()) out << "structure," << n << "\n";
  for (const char* n : {"Z", "Z2", "H3", "BS12", "LL2"}) out << "model," << n << "\n";
  write_file(fs::path(o.out_dir) / "catalog.csv", out.str());
  return 0;
}

int cmd_verify(const Options& o, Header h) {
  CayleyAutomaticStructure s = make_structure(o.structure);
  h.constants = constants_of(s);
  if (o.fault_inject) {
    // Demonstration fault: declare the multiplier's initial state accepting.
    SyncAutomaton& m = s.multipliers.begin()->second;
    m.set_accepting(m.initial(), !m.is_accepting(m.initial()));
  }
  VerificationReport rep = verify_structure(s, o.depth);
  json j{{"header", h.to_json()},
         {"structure", o.structure},
         {"depth", o.depth},
         {"fault_injected", o.fault_inject},
         {"all_pass", rep.all_pass()}};
  for (auto [name, cr] : {std::pair<const char*, const ConditionReport*>{"regularity", &rep.regularity},
                          {"bijectivity", &rep.bijectivity},
                          {"soundness", &rep.soundness},
                          {"completeness", &rep.completeness}})
    j["conditions"][name] = {{"pass", cr->pass}, {"detail", cr->detail}};
  write_file(fs::path(o.out_dir) / ("verify_" + o.structure + ".json"), j.dump(2) + "\n");
  if (!rep.all_pass()) {
    write_failure(o.out_dir, "verification", "structure " + o.structure + " failed at depth " +
                                                 std::to_string(o.depth));
    return 1;
  }
  return 0;
}

int cmd_hfun(const Options& o, Header h) {
  CayleyAutomaticStructure s = make_structure(o.structure);
  h.constants = constants_of(s);
  DistanceProfile p = compute_h(s, o.n, o.threads);
  std::string name = o.out.empty() ? "hfun_" + o.structure + ".csv" : o.out;
  write_file(fs::path(o.out_dir) / name, h.csv() + profile_csv(p, s.symbols));
  return 0;
}

int cmd_fill(const Options& o, Header h) {
  CayleyAutomaticStructure s = make_structure(o.structure);
  h.constants = constants_of(s);
  Word loop = parse_loop(s, o);
  FillingCertificate cert = corridor_fill(s, loop);
  std::string why;
  bool ok = validate_certificate(s, cert, &why) && cell_count_bound_check(cert);
  json j = json::parse(certificate_json(s, cert));
  j["header"] = h.to_json();
  j["valid"] = ok;
  std::string name = o.out.empty() ? "cert_" + o.structure + ".json" : o.out;
  write_file(fs::path(o.out_dir) / name, j.dump(2) + "\n");
  if (!ok) {
    write_failure(o.out_dir, "filling", why.empty() ? "cell count bound violated" : why);
    return 1;
  }
  return 0;
}

int cmd_area(const Options& o, const Header& h) {
  Presentation p = presentation_from_json_file(o.presentation);
  Word w = parse_word(p.gens.alphabet, o.word);
  AreaResult r = area(p, w, o.max_area);
  json j{{"header", h.to_json()}, {"word", o.word}, {"area", r.area}};
  j["certificate"] = json::array();
  for (const Word& step : r.certificate)
    j["certificate"].push_back(render_word(p.gens.alphabet, step));
  write_file(fs::path(o.out_dir) / "area.json", j.dump(2) + "\n");
  std::cout << "area(" << o.word << ") = " << r.area << "\n";
  return 0;
}

int cmd_dehn(const Options& o, Header h) {
  CayleyAutomaticStructure s = make_structure(o.structure);
  h.constants = constants_of(s);
  DehnCheckReport rep = dehn_inequality_check(s, presentation_from_json_file(o.presentation),
                                              o.n, o.seed, o.samples);
  json j{{"header", h.to_json()}, {"structure", o.structure}, {"n", o.n},
         {"all_pass", rep.all_pass}, {"min_margin", rep.min_margin.str()}};
  for (const auto& row : rep.rows)
    j["rows"].push_back({{"loop", render_word(s.generators.alphabet, row.loop)},
                         {"area", row.area.str()},
                         {"max_cell_area", row.max_cell_area.str()},
                         {"bound", row.bound.str()},
                         {"pass", row.pass}});
  write_file(fs::path(o.out_dir) / ("dehn_" + std::to_string(o.n) + ".json"), j.dump(2) + "\n");
  if (!rep.all_pass) {
    write_failure(o.out_dir, "dehn", "inequality violated at n=" + std::to_string(o.n));
    return 1;
  }
  return 0;
}

int cmd_dense_loops(const Options& o, const Header& h) {
  auto model = make_model("LL2");
  std::ostringstream out;
  out << h.csv() << "n,length,loop\n";
  for (int i = 1; i <= o.n; ++i) {
    Word w = dense_witness_loops(*model, i);
    out << i << "," << w.size() << "," << render_word(model->generators().alphabet, w) << "\n";
  }
  write_file(fs::path(o.out_dir) / "dense_loops.csv", out.str());
  return 0;
}

int cmd_phi(const Options& o, const Header& h) {
  std::vector<Int> lengths;
  if (!o.lengths.empty()) {
    std::stringstream ss(o.lengths);
    std::string tok;
    while (std::getline(ss, tok, ',')) lengths.emplace_back(tok);
  } else {
    for (int i = 1; i <= std::max(o.dense_n, 3); ++i) lengths.push_back(8 * i + 8);
  }
  StepFunction phi = phi_step_function(lengths);
  int top = o.eval_max > 0 ? o.eval_max : static_cast<int>(lengths.back()) + 4;
  std::ostringstream out;
  out << h.csv() << "n,phi\n";
  for (int n = 1; n <= top; ++n) out << n << "," << phi.eval(n) << "\n";
  write_file(fs::path(o.out_dir) / "phi.csv", out.str());
  return 0;
}

int cmd_compare(const Options& o, const Header& h) {
  SymbolicFunction g = SymbolicFunction::parse(o.g_spec.empty() ? "identity" : o.g_spec);
  SymbolicFunction f = SymbolicFunction::parse(o.f_spec);
  json j{{"header", h.to_json()}, {"g", g.label()}, {"f", f.label()},
         {"range", o.range.str()}};
  bool failed = false;

  if (!o.grid.empty()) {
    auto x = o.grid.find('x');
    if (x == std::string::npos) throw BadInput("--grid wants KxM, e.g. 16x8");
    Int kmax(o.grid.substr(0, x)), mmax(o.grid.substr(x + 1));
    for (auto [name, a, b] :
         {std::tuple<const char*, const SymbolicFunction*, const SymbolicFunction*>{
              "g_preceq_f", &g, &f},
          {"f_preceq_g", &f, &g}}) {
      GridRefutation r = refute_preceq_grid(*a, *b, kmax, mmax, o.range);
      json d{{"all_refuted", r.all_refuted}, {"survivors", r.survivors.size()}};
      for (const auto& [K, M, n] : r.violations)
        d["violations"].push_back({{"K", K.str()}, {"M", M.str()}, {"n", n.str()}});
      j["refute"][name] = d;
    }
    std::cout << (j["refute"]["g_preceq_f"]["all_refuted"].get<bool>() &&
                          j["refute"]["f_preceq_g"]["all_refuted"].get<bool>()
                      ? "all witnesses refuted both directions"
                      : "some witness survived")
              << "\n";
  } else if (!o.superquad && !o.superpoly) {
    PreceqReport r = verify_preceq(g, f, {o.K, o.M, o.N}, o.range);
    j["preceq"] = {{"holds", r.holds},
                   {"exhaustive", r.exhaustive},
                   {"first_violation", r.first_violation.str()},
                   {"note", r.note}};
    failed = !r.holds;
  }
  if (o.superquad) {
    SuperQuadraticReport r = superquadratic_check(f, o.M, o.range);
    json d{{"sampled_super_quadratic", r.sampled_super_quadratic}, {"note", r.note}};
    if (r.ground_truth) d["ground_truth"] = *r.ground_truth;
    for (const auto& row : r.rows)
      d["rows"].push_back({{"M", row.m.str()}, {"last_n_below", row.last_n_below.str()}});
    j["superquadratic"] = d;
  }
  if (o.superpoly) {
    StrongSuperpolyReport r = strongly_superpoly_check(f, o.K, o.M, o.range);
    json d{{"witness_found", r.witness_found}, {"note", r.note}};
    if (r.ground_truth) d["ground_truth"] = *r.ground_truth;
    j["strongly_superpoly"] = d;
  }
  write_file(fs::path(o.out_dir) / "compare.json", j.dump(2) + "\n");
  if (failed) {
    write_failure(o.out_dir, "preceq", "witness violated on the sampled range");
    return 1;
  }
  return 0;
}

void apply_config(Options& o) {
  if (o.config_path.empty()) return;
  std::ifstream in(o.config_path);
  if (!in) throw BadInput("cannot open config " + o.config_path);
  json j = json::parse(in);
  auto str = [&](const char* k, std::string& v) { if (j.contains(k)) v = j[k].get<std::string>(); };
  auto num = [&](const char* k, auto& v) { if (j.contains(k)) v = j[k]; };
  str("out_dir", o.out_dir); str("structure", o.structure); str("out", o.out);
  str("word", o.word); str("loop", o.loop); str("loop_file", o.loop_file);
  str("presentation", o.presentation); str("g", o.g_spec); str("f", o.f_spec);
  str("grid", o.grid); str("lengths", o.lengths);
  num("depth", o.depth); num("n", o.n); num("dense_n", o.dense_n); num("threads", o.threads);
  num("samples", o.samples); num("max_area", o.max_area); num("seed", o.seed);
  num("eval_max", o.eval_max);
  if (j.contains("K")) o.K = Int(j["K"].get<long long>());
  if (j.contains("M")) o.M = Int(j["M"].get<long long>());
  if (j.contains("N")) o.N = Int(j["N"].get<long long>());
  if (j.contains("range")) o.range = Int(j["range"].dump());
  num("fault_inject", o.fault_inject);
  num("breakpoints_only", o.breakpoints_only);
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* mb = std::getenv("CADIST_BUDGET_MB")) {
    rlimit lim{};
    lim.rlim_cur = lim.rlim_max = std::strtoull(mb, nullptr, 10) << 20;
    setrlimit(RLIMIT_AS, &lim);
  }

  Options o;
  // Config file first (flags win): peek at --config before real parsing.
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") o.config_path = argv[i + 1];
  try {
    apply_config(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App app{std::string(kVersion) + " — Cayley automatic structure toolkit"};
  app.require_subcommand(1);
  std::string krange = o.range.str(), kk = o.K.str(), km = o.M.str(), kn = o.N.str();
  app.add_option("--config", o.config_path, "JSON config; flags override it");
  app.add_option("--out-dir", o.out_dir, "artifact directory");
  app.add_option("--threads", o.threads, "worker threads");
  app.add_option("--seed", o.seed, "seed for randomized sampling");

  auto subcmd = [&app](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->fallthrough();  // global flags may follow the subcommand
    return s;
  };
  CLI::App* c_list = subcmd("list", "catalog structures and models");
  CLI::App* c_verify = subcmd("verify", "check the four structure conditions");
  c_verify->add_option("--structure", o.structure)->required();
  c_verify->add_option("--depth", o.depth);
  c_verify->add_flag("--fault-inject", o.fault_inject, "tamper a multiplier first");
  CLI::App* c_hfun = subcmd("hfun", "distance profile h(n) by enumeration");
  c_hfun->add_option("--structure", o.structure)->required();
  c_hfun->add_option("--n", o.n);
  c_hfun->add_option("--out", o.out);
  CLI::App* c_fill = subcmd("fill", "corridor-filling certificate");
  c_fill->add_option("--structure", o.structure)->required();
  c_fill->add_option("--loop", o.loop);
  c_fill->add_option("--loop-file", o.loop_file);
  c_fill->add_option("--dense-n", o.dense_n, "use the LL2 dense witness loop");
  c_fill->add_option("--out", o.out);
  CLI::App* c_area = subcmd("area", "minimal relator-application count");
  c_area->add_option("--presentation", o.presentation)->required();
  c_area->add_option("--word", o.word)->required();
  c_area->add_option("--max-area", o.max_area);
  CLI::App* c_dehn = subcmd("dehn-check", "area vs corridor-cell bound");
  c_dehn->add_option("--structure", o.structure)->required();
  c_dehn->add_option("--presentation", o.presentation)->required();
  c_dehn->add_option("--n", o.n);
  c_dehn->add_option("--samples", o.samples);
  CLI::App* c_dense = subcmd("dense-loops", "lamplighter dense witness loops");
  c_dense->add_option("--n", o.n);
  CLI::App* c_phi = subcmd("phi", "relator-length step function");
  c_phi->add_option("--lengths", o.lengths, "comma-separated breakpoints");
  c_phi->add_option("--dense-n", o.dense_n, "breakpoints from dense loop lengths");
  c_phi->add_option("--eval-max", o.eval_max);
  CLI::App* c_cmp = subcmd("compare", "growth-order checks");
  c_cmp->add_option("--g", o.g_spec);
  c_cmp->add_option("--f", o.f_spec)->required();
  c_cmp->add_option("--K", kk);
  c_cmp->add_option("--M", km);
  c_cmp->add_option("--N", kn);
  c_cmp->add_option("--range", krange);
  c_cmp->add_option("--grid", o.grid, "KxM refutation grid");
  c_cmp->add_flag("--breakpoints-only", o.breakpoints_only,
                  "informational: checks use breakpoints when exhaustive");
  c_cmp->add_flag("--superquad", o.superquad);
  c_cmp->add_flag("--superpoly", o.superpoly);

  CLI11_PARSE(app, argc, argv);
  o.K = Int(kk);
  o.M = Int(km);
  o.N = Int(kn);
  o.range = Int(krange);

  try {
    const CLI::App* sub = app.get_subcommands().front();
    Header h{fnv1a(canonical_config(sub->get_name(), o)), o.seed, std::nullopt};
    if (sub == c_list) return cmd_list(o, h);
    if (sub == c_verify) return cmd_verify(o, h);
    if (sub == c_hfun) return cmd_hfun(o, h);
    if (sub == c_fill) return cmd_fill(o, h);
    if (sub == c_area) return cmd_area(o, h);
    if (sub == c_dehn) return cmd_dehn(o, h);
    if (sub == c_dense) return cmd_dense_loops(o, h);
    if (sub == c_phi) return cmd_phi(o, h);
    if (sub == c_cmp) return cmd_compare(o, h);
    return 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const AreaExceedsMax& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const DistanceExceedsCap& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_alloc&) {
    std::cerr << "budget exhausted: out of memory\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    write_failure(o.out_dir, "error", e.what());
    return 1;
  }
}
