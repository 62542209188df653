#pragma once

#include "cadist/ca_structure.hpp"
#include "cadist/growth.hpp"

namespace cadist {

struct FillingCell {
  Word conjugator;  // rho_i, over S
  Word boundary;    // w_i, over S; evaluates to the identity
};

struct FillingConstants {
  int m = 2, e = 0;
  int c() const { return m / 2; }
  int d() const { return e + m; }
  int sigma() const { return 4 * m + 4; }
  int big_d() const { return c() + e; }
};

struct FillingCertificate {
  Word loop;
  std::vector<FillingCell> cells;
  FillingConstants constants;
  std::size_t max_cell_perimeter = 0;
  Int perimeter_bound;  // 4 h(c|loop| + d) + sigma
};

/// The corridor decomposition: normal forms u_i for the loop's vertices,
/// multiplier runs between consecutive ones, rows closed by shortest
/// completions, cells conjugated back to the basepoint left-to-right,
/// bottom-to-top. The free product of the conjugated cells reduces to the
/// loop exactly.
FillingCertificate corridor_fill(const CayleyAutomaticStructure& s, const Word& loop);

/// Replays the certificate: boundaries are loops and the conjugated product
/// freely reduces to the loop.
bool validate_certificate(const CayleyAutomaticStructure& s, const FillingCertificate& cert,
                          std::string* why = nullptr);

/// |cells| <= n (m n / 2 + e) for n = |loop|.
bool cell_count_bound_check(const FillingCertificate& cert);

std::string certificate_json(const CayleyAutomaticStructure& s, const FillingCertificate& cert);

struct Presentation {
  GeneratorSet gens;
  std::vector<Word> relators;
};

Presentation presentation_from_json_file(const std::string& path);

struct AreaExceedsMax : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AreaResult {
  Word word;
  int area = 0;
  std::vector<Word> certificate;  // inserted conjugate per step, replayable
};

/// Minimal number of relator applications (insertion of a cyclic conjugate
/// of a relator or its inverse, with free reduction after each move) taking
/// w to the empty word; iterative deepening, exact within max_area.
/// Intermediate words are capped at |w| + 2 max|r| letters.
AreaResult area(const Presentation& p, const Word& w, int max_area);

struct DehnCheckReport {
  struct Row {
    Word loop;
    Int area;
    Int max_cell_area;  // lower-bounded when a cell exceeds the oracle cap
    Int bound;          // D n^2 max_cell_area
    bool pass;
  };
  std::vector<Row> rows;
  bool all_pass = true;
  Int min_margin;  // min of bound - area
};

/// Prop-3.2-style inequality area(loop) <= D n^2 max-cell-area on sampled
/// loops of length <= n, with cells from corridor_fill.
DehnCheckReport dehn_inequality_check(const CayleyAutomaticStructure& s, const Presentation& p,
                                      int n, unsigned seed, int samples = 8);

}  // namespace cadist
