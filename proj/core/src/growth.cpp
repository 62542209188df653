#include "cadist/growth.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cadist {

namespace {

// Refutations must not be rounding artifacts: an inequality only counts as
// violated when it fails with a relative guard band well above the 50-digit
// working precision.
const Real kGuard("1e-35");

bool definitely_greater(const Real& a, const Real& b) {
  return a > b + abs(b) * kGuard + kGuard;
}

Real real_of(const Int& n) { return Real(n); }

Real log_real(const Int& n) { return log(real_of(n)); }

}  // namespace

Int StepFunction::eval(const Int& n) const {
  Int v = 0;
  for (const Int& b : breakpoints) {
    if (b > n) break;
    v = b;
  }
  return v;
}

StepFunction phi_step_function(const std::vector<Int>& lengths) {
  if (lengths.empty()) throw BadInput("phi_step_function: empty length sequence");
  for (std::size_t i = 1; i < lengths.size(); ++i)
    if (lengths[i] <= lengths[i - 1])
      throw BadInput("phi_step_function: lengths must be strictly increasing");
  if (lengths.front() <= 0) throw BadInput("phi_step_function: lengths must be positive");
  return StepFunction{lengths};
}

SymbolicFunction SymbolicFunction::constant(Int c) {
  if (c < 0) throw BadInput("constant function must be >= 0");
  SymbolicFunction f;
  Real v = real_of(c);
  f.eval_ = [v](const Int&) { return v; };
  f.label_ = "const:" + c.str();
  f.breaks_ = std::vector<Int>{};
  f.super_quadratic_ = false;
  f.strongly_superpoly_ = false;
  return f;
}

SymbolicFunction SymbolicFunction::identity() {
  SymbolicFunction f;
  f.eval_ = [](const Int& n) { return real_of(n); };
  f.label_ = "identity";
  f.super_quadratic_ = false;
  f.strongly_superpoly_ = false;
  return f;
}

SymbolicFunction SymbolicFunction::power(double alpha) {
  if (alpha <= 0) throw BadInput("power exponent must be positive");
  SymbolicFunction f;
  f.eval_ = [alpha](const Int& n) { return exp(Real(alpha) * log_real(n)); };
  std::ostringstream lbl;
  lbl << "pow:" << alpha;
  f.label_ = lbl.str();
  f.super_quadratic_ = alpha > 2;
  f.strongly_superpoly_ = false;
  return f;
}

SymbolicFunction SymbolicFunction::poly_log() {
  SymbolicFunction f;
  f.eval_ = [](const Int& n) { return real_of(n * n) * log_real(n); };
  f.label_ = "n2logn";
  f.domain_start_ = 2;
  f.super_quadratic_ = true;
  f.strongly_superpoly_ = false;
  return f;
}

SymbolicFunction SymbolicFunction::exponential(double base) {
  if (base <= 1) throw BadInput("exponential base must exceed 1");
  SymbolicFunction f;
  f.eval_ = [base](const Int& n) { return exp(real_of(n) * log(Real(base))); };
  std::ostringstream lbl;
  lbl << "exp:" << base;
  f.label_ = lbl.str();
  f.super_quadratic_ = true;
  f.strongly_superpoly_ = true;
  return f;
}

SymbolicFunction SymbolicFunction::f_alpha(double alpha) {
  if (alpha <= 1) throw BadInput("f_alpha base must exceed 1");
  SymbolicFunction f;
  f.eval_ = [alpha](const Int& n) {
    Real ln = log_real(n);
    return exp(log(Real(alpha)) * pow(ln, Real(1.5)));
  };
  std::ostringstream lbl;
  lbl << "falpha:" << alpha;
  f.label_ = lbl.str();
  f.super_quadratic_ = true;        // super-polynomial, hence super-quadratic
  f.strongly_superpoly_ = false;    // but not strongly so
  return f;
}

SymbolicFunction SymbolicFunction::step(StepFunction s) {
  SymbolicFunction f;
  f.eval_ = [s](const Int& n) { return real_of(s.eval(n)); };
  f.label_ = "step";
  f.breaks_ = s.breakpoints;
  f.super_quadratic_ = false;  // phi <= identity pointwise
  f.strongly_superpoly_ = false;
  return f;
}

SymbolicFunction SymbolicFunction::incomparable_step() {
  // n_0 = 2, n_{i+1} = n_i^2; value 2 on [2,4), and n_{2i+1}^2 from each
  // odd-indexed breakpoint to the next odd-indexed one.
  std::vector<Int> seq{2};
  while (seq.back() < (Int(1) << 300)) seq.push_back(seq.back() * seq.back());
  auto seq_eval = [seq](const Int& n) {
    Int v = 2;
    for (std::size_t i = 1; i < seq.size(); i += 2)
      if (seq[i] <= n) v = seq[i] * seq[i];
    return v;
  };
  SymbolicFunction f;
  f.eval_ = [seq_eval](const Int& n) { return real_of(seq_eval(n)); };
  f.label_ = "step:incomparable";
  f.domain_start_ = 2;
  std::vector<Int> breaks{2};
  for (std::size_t i = 1; i < seq.size(); i += 2) breaks.push_back(seq[i]);
  f.breaks_ = breaks;
  f.super_quadratic_ = false;  // dips to n at every even-indexed n_i
  f.strongly_superpoly_ = false;
  return f;
}

SymbolicFunction SymbolicFunction::sampled(std::vector<std::pair<Int, Int>> table,
                                           std::string label) {
  if (table.empty()) throw BadInput("sampled function needs at least one point");
  std::sort(table.begin(), table.end());
  for (std::size_t i = 1; i < table.size(); ++i)
    if (table[i].second < table[i - 1].second)
      throw BadInput("sampled function must be non-decreasing");
  SymbolicFunction f;
  std::vector<Int> breaks;
  for (const auto& [n, v] : table) breaks.push_back(n);
  f.eval_ = [table](const Int& n) {
    Int v = table.front().second;
    for (const auto& [x, y] : table) {
      if (x > n) break;
      v = y;
    }
    return real_of(v);
  };
  f.label_ = std::move(label);
  f.breaks_ = breaks;
  return f;
}

SymbolicFunction SymbolicFunction::affine(SymbolicFunction base, Int A, Int B, Int C, Int D) {
  if (A < 1 || D < 1 || B < 0 || C < 0) throw BadInput("affine: need A,D >= 1 and B,C >= 0");
  SymbolicFunction f;
  auto inner = base.eval_;
  Real c = real_of(C), d = real_of(D);
  f.eval_ = [inner, A, B, c, d](const Int& n) { return d * inner(A * n + B) + c; };
  f.label_ = base.label_ + "~affine(" + A.str() + "," + B.str() + "," + C.str() + "," +
             D.str() + ")";
  f.domain_start_ = base.domain_start_;
  f.super_quadratic_ = base.super_quadratic_;
  f.strongly_superpoly_ = base.strongly_superpoly_;
  return f;
}

Real SymbolicFunction::eval(const Int& n) const {
  // Clamp below the domain so witnesses with small N stay well defined.
  return eval_(n < domain_start_ ? Int(domain_start_) : n);
}

SymbolicFunction SymbolicFunction::parse(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (spec == "identity") return identity();
  if (spec == "n2logn") return poly_log();
  if (head == "const") return constant(Int(arg));
  if (head == "pow") return power(std::stod(arg));
  if (head == "exp") return exponential(std::stod(arg));
  if (head == "falpha") return f_alpha(std::stod(arg));
  if (head == "step") {
    if (arg == "incomparable") return incomparable_step();
    std::vector<Int> lengths;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) lengths.emplace_back(tok);
    return step(phi_step_function(lengths));
  }
  throw BadInput("unknown function spec: " + spec);
}

namespace {

// Points where g(n) <= K f(Mn) can first fail. For piecewise-constant g and
// non-decreasing f the left ends of g's plateaus suffice; for
// piecewise-constant f and non-decreasing g the right ends of the plateaus
// of n -> f(Mn) suffice. Otherwise the check falls back to a dense prefix
// plus a geometric grid and is flagged non-exhaustive.
std::pair<std::set<Int>, bool> candidate_points(const SymbolicFunction& g,
                                                const SymbolicFunction& f, const Int& M,
                                                const Int& N, const Int& range_end) {
  std::set<Int> pts{N, range_end};
  bool exhaustive = true;
  if (range_end - N <= 200000) {
    for (Int n = N; n <= range_end; ++n) pts.insert(n);
    return {pts, true};
  }
  if (g.step_breakpoints()) {
    for (const Int& b : *g.step_breakpoints())
      if (b >= N && b <= range_end) pts.insert(b);
  }
  if (f.step_breakpoints()) {
    for (const Int& b : *f.step_breakpoints()) {
      Int n = (b - 1) / M;  // last n with Mn < b
      if (n >= N && n <= range_end) pts.insert(n);
      if (n + 1 >= N && n + 1 <= range_end) pts.insert(n + 1);
    }
  }
  if (!g.step_breakpoints() && !f.step_breakpoints()) {
    // Dense prefix plus geometric grid; honest but not exhaustive.
    exhaustive = false;
    for (Int n = N; n <= std::min(range_end, N + Int(10000)); ++n) pts.insert(n);
    Int n = N + 10000;
    while (n < range_end) {
      pts.insert(n);
      n += std::max(Int(1), Int(n / 16));
    }
  }
  return {pts, exhaustive};
}

}  // namespace

PreceqReport verify_preceq(const SymbolicFunction& g, const SymbolicFunction& f,
                           const OrderWitness& w, const Int& range_end) {
  if (w.K < 1 || w.M < 1 || w.N < 1) throw BadInput("verify_preceq: K, M, N must be >= 1");
  Int start = std::max(w.N, Int(std::max(g.domain_start(), f.domain_start())));
  PreceqReport rep;
  if (start > range_end) {
    rep.note = "empty range";
    return rep;
  }
  auto [pts, exhaustive] = candidate_points(g, f, w.M, start, range_end);
  rep.exhaustive = exhaustive;
  Real K = real_of(w.K);
  for (const Int& n : pts) {
    if (definitely_greater(g.eval(n), K * f.eval(w.M * n))) {
      rep.holds = false;
      rep.first_violation = n;
      break;
    }
  }
  rep.note = std::string(rep.exhaustive ? "exhaustive" : "sampled") + " check on [" +
             start.str() + ", " + range_end.str() + "]";
  return rep;
}

GridRefutation refute_preceq_grid(const SymbolicFunction& g, const SymbolicFunction& f,
                                  const Int& k_max, const Int& m_max, const Int& range_end) {
  GridRefutation out;
  for (Int K = 1; K <= k_max; ++K)
    for (Int M = 1; M <= m_max; ++M) {
      PreceqReport rep = verify_preceq(g, f, {K, M, 1}, range_end);
      if (rep.holds) {
        out.all_refuted = false;
        out.survivors.push_back({K, M, 1});
      } else {
        out.violations.emplace_back(K, M, rep.first_violation);
      }
    }
  return out;
}

AffineNormalization normalize_affine(const SymbolicFunction& f, const Int& A, const Int& B,
                                     const Int& C, const Int& D) {
  bool zero = true;
  for (Int n = f.domain_start(); n <= f.domain_start() + 64; ++n)
    if (f.eval(n) > 0) {
      zero = false;
      break;
    }
  if (zero) throw BadInput("normalize_affine: the zero function is excluded");

  AffineNormalization out{SymbolicFunction::affine(f, A, B, C, D), {}, {}};
  // h(n) = D f(An+B) + C <= (D+1) f(2An) once An+B <= 2An and C <= f(2An).
  Int n0 = B / A + 1;
  Int n1 = f.domain_start();
  while (n1 < 1000000 && definitely_greater(real_of(C), f.eval(2 * A * n1))) ++n1;
  out.forward = {D + 1, 2 * A, std::max({n0, n1, Int(f.domain_start())})};
  out.backward = {1, 1, Int(f.domain_start())};
  return out;
}

SuperQuadraticReport superquadratic_check(const SymbolicFunction& f, const Int& m_max,
                                          const Int& range_end) {
  SuperQuadraticReport rep;
  rep.ground_truth = f.super_quadratic_truth();
  std::set<Int> pts;
  Int start = f.domain_start();
  for (Int n = start; n <= std::min(range_end, Int(10000)); ++n) pts.insert(n);
  Int n = 10000;
  while (n < range_end) {
    pts.insert(n);
    n += std::max(Int(1), Int(n / 16));
  }
  pts.insert(range_end);
  if (f.step_breakpoints())
    for (const Int& b : *f.step_breakpoints()) {
      if (b >= start && b <= range_end) pts.insert(b);
      if (b - 1 >= start && b - 1 <= range_end) pts.insert(b - 1);
    }
  for (Int M = 1; M <= m_max; ++M) {
    Int last = -1;
    for (const Int& x : pts)
      if (!definitely_greater(f.eval(x), real_of(M) * real_of(x * x))) last = x;
    rep.rows.push_back({M, last});
    if (last == range_end) rep.sampled_super_quadratic = false;
  }
  rep.note = "sampled evidence on [" + start.str() + ", " + range_end.str() + "]";
  return rep;
}

StrongSuperpolyReport strongly_superpoly_check(const SymbolicFunction& f, const Int& k_max,
                                               const Int& m_max, const Int& range_end) {
  StrongSuperpolyReport rep;
  rep.ground_truth = f.strongly_superpoly_truth();
  Int start = std::max(Int(f.domain_start()), Int(16));
  std::set<Int> pts{start, range_end};
  Int n = start;
  while (n < range_end) {
    pts.insert(n);
    n += std::max(Int(1), Int(n / 8));
  }
  for (Int M = 1; M <= m_max; ++M) {
    // T(n) = f(Mn) / (n^2 f(n)); K scales it linearly, so compute once.
    Real tail_min(0);
    Real end_value(0);
    bool first = true;
    for (const Int& x : pts) {
      Real fx = f.eval(x);
      if (fx <= 0) continue;
      Real t = f.eval(M * x) / (real_of(x * x) * fx);
      if (first || t < tail_min) tail_min = t;
      first = false;
      if (x == range_end) end_value = t;
    }
    if (first) continue;
    // A staircase witness t needs the tail of K*T to clear 2 and keep
    // growing; K cancels from the growth condition.
    bool grows = end_value > tail_min * 4;
    for (Int K = 1; K <= k_max; K *= 2) {
      bool survives = grows && !definitely_greater(Real(2), real_of(K) * tail_min);
      if (survives) {
        rep.cells.push_back({K, M, tail_min, end_value, true});
        rep.witness_found = true;
      }
    }
  }
  for (const Int& x : {start, Int((start + range_end) / 2), range_end}) {
    Real fx = f.eval(x);
    if (fx > 0 && x > 1) rep.lnf_over_lnn.emplace_back(x, log(fx) / log_real(x));
  }
  rep.note = "witness search on [" + start.str() + ", " + range_end.str() +
             "], K powers of two";
  return rep;
}

}  // namespace cadist
