#include "cadist/filling.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cadist/profile.hpp"

namespace cadist {

namespace {

void append(Word& w, const Word& tail) { w.insert(w.end(), tail.begin(), tail.end()); }

Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const Word& p : parts) append(out, p);
  return out;
}

GroupElement eval_s(const CayleyAutomaticStructure& s, const Word& w) {
  GroupElement g = s.model->identity();
  for (Symbol a : w) g = s.model->multiply(g, s.generator_values.at(a));
  return g;
}

}  // namespace

FillingCertificate corridor_fill(const CayleyAutomaticStructure& s, const Word& loop) {
  const int n = static_cast<int>(loop.size());
  for (Symbol a : loop)
    if (!s.generator_values.count(a)) throw BadInput("corridor_fill: loop letter outside S");

  FillingCertificate cert;
  cert.loop = loop;
  StateBoundConstants sb = s.constants();
  cert.constants = {sb.m, sb.e};
  const FillingConstants& fc = cert.constants;
  cert.perimeter_bound = 4 * h_value(s, fc.c() * n + fc.d()) + fc.sigma();

  GroupElement id = s.model->identity();
  std::vector<GroupElement> vertex(static_cast<std::size_t>(n) + 1, id);
  for (int i = 0; i < n; ++i)
    vertex[i + 1] = s.model->multiply(vertex[i], s.generator_values.at(loop[i]));
  if (!(vertex[n] == id)) throw BadInput("corridor_fill: word is not a loop");
  if (n == 0) return cert;

  const Int geo_cap = 1'000'000;
  // Value word W_a per Lambda-letter; pi lifts letterwise through these.
  std::vector<Word> W(static_cast<std::size_t>(s.symbols.size()));
  for (std::size_t a = 0; a < W.size(); ++a)
    W[a] = s.geodesic_word(id, s.symbol_values.at(static_cast<Symbol>(a)), geo_cap);
  auto lift = [&](const Word& y) {
    Word out;
    for (Symbol a : y) append(out, W[static_cast<std::size_t>(a)]);
    return out;
  };
  // Gamma(y): correction tail from pi(y) to psi(y).
  auto tail = [&](const Word& y) { return s.geodesic_word(s.pi(y), s.psi(y), geo_cap); };

  std::vector<Word> u(static_cast<std::size_t>(n) + 1), E(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    u[i] = s.psi_inverse(vertex[i]);
    E[i] = free_reduce(s.generators, concat({lift(u[i]), tail(u[i])}));
  }
  Word E0inv = word_inverse(s.generators, E[0]);

  for (int i = 0; i < n; ++i) {
    const SyncAutomaton& M = s.multipliers.at(loop[i]);
    Convolution conv{{u[i], u[i + 1]}};
    if (!M.accepts(conv))
      throw BadInput("corridor_fill: multiplier rejects consecutive normal forms");
    std::vector<int> run = accepting_run(M, conv);
    const std::size_t J = run.size() - 1;

    // Row j: close the run state by its shortest completion, then rung
    // R_j = W(alpha) Gamma(y_j) s Gamma(z_j)^-1 W(beta)^-1.
    std::vector<Word> R(J + 1);
    for (std::size_t j = 0; j <= J; ++j) {
      Word alpha, beta;
      for (const PaddedTuple& t : shortest_completion(M, run[j])) {
        if (t[0] != kPad) alpha.push_back(t[0]);
        if (t[1] != kPad) beta.push_back(t[1]);
      }
      Word y(u[i].begin(), u[i].begin() + std::min(j, u[i].size()));
      Word z(u[i + 1].begin(), u[i + 1].begin() + std::min(j, u[i + 1].size()));
      append(y, alpha);
      append(z, beta);
      R[j] = free_reduce(
          s.generators,
          concat({lift(alpha), tail(y), {loop[i]},
                  word_inverse(s.generators, tail(z)), word_inverse(s.generators, lift(beta))}));
    }

    // The corridor's conjugated cells multiply to D_i = E_i s E_{i+1}^-1 in
    // the free group: rows J..1 telescope to W(u_i) R_J W(u_{i+1})^-1 R_0^-1,
    // and the base loop R_0, emitted first and conjugated by D_i itself,
    // absorbs the leftover.
    Word D = free_reduce(s.generators,
                         concat({E[i], {loop[i]}, word_inverse(s.generators, E[i + 1])}));
    cert.cells.push_back({free_reduce(s.generators, concat({E0inv, D})), R[0]});
    Word P = lift(u[i]);  // prefix value words, consumed right to left
    std::vector<FillingCell> rows;
    for (std::size_t j = J; j >= 1; --j) {
      Word V = j <= u[i].size() ? W[static_cast<std::size_t>(u[i][j - 1])] : Word{};
      Word Vp = j <= u[i + 1].size() ? W[static_cast<std::size_t>(u[i + 1][j - 1])] : Word{};
      P.resize(P.size() - V.size());
      rows.push_back({free_reduce(s.generators, concat({E0inv, P})),
                      free_reduce(s.generators,
                                  concat({V, R[j], word_inverse(s.generators, Vp),
                                          word_inverse(s.generators, R[j - 1])}))});
    }
    cert.cells.insert(cert.cells.end(), rows.begin(), rows.end());
  }

  for (const FillingCell& c : cert.cells)
    cert.max_cell_perimeter = std::max(cert.max_cell_perimeter, c.boundary.size());
  return cert;
}

bool validate_certificate(const CayleyAutomaticStructure& s, const FillingCertificate& cert,
                          std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::size_t max_perim = 0;
  Word product;
  for (std::size_t i = 0; i < cert.cells.size(); ++i) {
    const FillingCell& c = cert.cells[i];
    if (!(eval_s(s, c.boundary) == s.model->identity()))
      return fail("cell " + std::to_string(i) + " boundary is not a loop");
    max_perim = std::max(max_perim, c.boundary.size());
    append(product, c.conjugator);
    append(product, c.boundary);
    append(product, word_inverse(s.generators, c.conjugator));
  }
  if (max_perim != cert.max_cell_perimeter) return fail("max_cell_perimeter mismatch");
  if (Int(max_perim) > cert.perimeter_bound) return fail("cell perimeter exceeds bound");
  if (free_reduce(s.generators, product) != free_reduce(s.generators, cert.loop))
    return fail("conjugated cell product does not reduce to the loop");
  return true;
}

bool cell_count_bound_check(const FillingCertificate& cert) {
  Int n = cert.loop.size();
  return Int(cert.cells.size()) <= n * (Int(cert.constants.m) * n / 2 + cert.constants.e);
}

std::string certificate_json(const CayleyAutomaticStructure& s, const FillingCertificate& cert) {
  nlohmann::json j;
  j["structure"] = s.name;
  j["loop"] = render_word(s.generators.alphabet, cert.loop);
  j["constants"] = {{"m", cert.constants.m},
                    {"e", cert.constants.e},
                    {"c", cert.constants.c()},
                    {"d", cert.constants.d()},
                    {"sigma", cert.constants.sigma()},
                    {"D", cert.constants.big_d()}};
  j["max_cell_perimeter"] = cert.max_cell_perimeter;
  j["perimeter_bound"] = cert.perimeter_bound.str();
  j["cells"] = nlohmann::json::array();
  for (const FillingCell& c : cert.cells)
    j["cells"].push_back({{"conjugator", render_word(s.generators.alphabet, c.conjugator)},
                          {"boundary", render_word(s.generators.alphabet, c.boundary)}});
  return j.dump(2);
}

DehnCheckReport dehn_inequality_check(const CayleyAutomaticStructure& s, const Presentation& p,
                                      int n, unsigned seed, int samples) {
  if (!(p.gens.alphabet == s.generators.alphabet))
    throw BadInput("dehn_inequality_check: presentation generators differ from S");
  if (n < 2 || samples < 1) throw BadInput("dehn_inequality_check: need n >= 2, samples >= 1");

  std::mt19937 rng(seed);
  std::vector<Word> loops;
  for (int tries = 0; tries < 200'000 && static_cast<int>(loops.size()) < samples; ++tries) {
    int len = 2 * (1 + static_cast<int>(rng() % static_cast<unsigned>(n / 2)));
    Word w(static_cast<std::size_t>(len));
    for (Symbol& a : w) a = static_cast<Symbol>(rng() % static_cast<unsigned>(
                                                   s.generators.alphabet.size()));
    if (!(eval_s(s, w) == s.model->identity())) continue;
    if (free_reduce(s.generators, w).empty() && tries < 150'000) continue;
    loops.push_back(std::move(w));
  }
  if (loops.empty()) throw BudgetExceeded("dehn_inequality_check: no identity loops sampled");

  DehnCheckReport rep;
  for (const Word& loop : loops) {
    FillingCertificate cert = corridor_fill(s, loop);
    std::string why;
    if (!validate_certificate(s, cert, &why))
      throw BadInput("dehn_inequality_check: bad certificate: " + why);

    DehnCheckReport::Row row;
    row.loop = loop;
    row.area = area(p, loop, 64).area;
    // Exact cell areas when cheap; otherwise honest under-estimates, so the
    // reported inequality only ever gets harder to satisfy.  (Word length is
    // useless here: a single conjugate g r g^-1 has area 1 at any length.)
    row.max_cell_area = 0;
    for (const FillingCell& c : cert.cells) {
      Word r = free_reduce(p.gens, c.boundary);
      Int cell_area;
      if (r.empty()) {
        cell_area = 0;
      } else if (r.size() <= 8) {
        try {
          cell_area = area(p, r, 4).area;
        } catch (const AreaExceedsMax&) {
          cell_area = 5;  // area > 4 proven
        }
      } else {
        cell_area = 1;
      }
      row.max_cell_area = std::max(row.max_cell_area, cell_area);
    }
    row.bound = Int(cert.constants.big_d()) * n * n * row.max_cell_area;
    row.pass = row.area <= row.bound;
    if (!row.pass) rep.all_pass = false;
    Int margin = row.bound - row.area;
    if (rep.rows.empty() || margin < rep.min_margin) rep.min_margin = margin;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace cadist
