#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cadist/group.hpp"

namespace cadist {

using Real = boost::multiprecision::cpp_bin_float_50;

/// phi(n) = l_i on [l_i, l_{i+1}), 0 below l_1.
struct StepFunction {
  std::vector<Int> breakpoints;  // strictly increasing

  Int eval(const Int& n) const;
};

StepFunction phi_step_function(const std::vector<Int>& lengths);

/// Non-decreasing symbolic functions with exact/high-precision evaluation.
/// Catalog kinds carry a ground-truth classification where the underlying
/// asymptotics are known.
class SymbolicFunction {
 public:
  static SymbolicFunction constant(Int c);
  static SymbolicFunction identity();
  static SymbolicFunction power(double alpha);       // n^alpha
  static SymbolicFunction poly_log();                // n^2 ln n
  static SymbolicFunction exponential(double base);  // base^n
  static SymbolicFunction f_alpha(double alpha);     // alpha^{(ln n)^{1.5}}
  static SymbolicFunction step(StepFunction s);
  /// Lemma-2.8-style family: n_0 = 2, n_{i+1} = n_i^2; constant n_{2i+1}^2
  /// on [n_{2i+1}, n_{2i+3}), and 2 on [2, 4).
  static SymbolicFunction incomparable_step();
  static SymbolicFunction sampled(std::vector<std::pair<Int, Int>> table, std::string label);
  /// Affine normalization n -> D f(An+B) + C.
  static SymbolicFunction affine(SymbolicFunction f, Int A, Int B, Int C, Int D);
  /// Parse a CLI spec: identity | const:<c> | pow:<a> | n2logn | exp:<a> |
  /// falpha:<a> | step:incomparable | step:<l1>,<l2>,...
  static SymbolicFunction parse(const std::string& spec);

  Real eval(const Int& n) const;
  const std::string& label() const { return label_; }
  int domain_start() const { return domain_start_; }
  /// Breakpoints if piecewise constant (used for exact order checks).
  const std::optional<std::vector<Int>>& step_breakpoints() const { return breaks_; }
  std::optional<bool> super_quadratic_truth() const { return super_quadratic_; }
  std::optional<bool> strongly_superpoly_truth() const { return strongly_superpoly_; }

 private:
  std::function<Real(const Int&)> eval_;
  std::string label_;
  int domain_start_ = 1;
  std::optional<std::vector<Int>> breaks_;
  std::optional<bool> super_quadratic_, strongly_superpoly_;
};

struct OrderWitness {
  Int K = 1;
  Int M = 1;
  Int N = 1;
};

/// Finite-range check of g(n) <= K f(Mn) on [N, range_end]. Exhaustive when
/// the range is small or both functions are piecewise constant; otherwise
/// the check runs on breakpoint-derived critical points plus a dense grid
/// and the report says so.
struct PreceqReport {
  bool holds = true;
  bool exhaustive = true;
  Int first_violation = -1;
  std::string note;
};
PreceqReport verify_preceq(const SymbolicFunction& g, const SymbolicFunction& f,
                           const OrderWitness& w, const Int& range_end);

struct GridRefutation {
  bool all_refuted = true;
  std::vector<OrderWitness> survivors;
  std::vector<std::tuple<Int, Int, Int>> violations;  // (K, M, violating n)
};
GridRefutation refute_preceq_grid(const SymbolicFunction& g, const SymbolicFunction& f,
                                  const Int& k_max, const Int& m_max, const Int& range_end);

struct AffineNormalization {
  SymbolicFunction h;
  OrderWitness forward;   // h preceq f
  OrderWitness backward;  // f preceq h
};
AffineNormalization normalize_affine(const SymbolicFunction& f, const Int& A, const Int& B,
                                     const Int& C, const Int& D);

struct SuperQuadraticReport {
  struct PerM {
    Int m;
    Int last_n_below;  // largest sampled n with f(n) <= M n^2; -1 if none
  };
  std::vector<PerM> rows;
  bool sampled_super_quadratic = true;  // every M bounded away on the tail
  std::optional<bool> ground_truth;
  std::string note;
};
SuperQuadraticReport superquadratic_check(const SymbolicFunction& f, const Int& m_max,
                                          const Int& range_end);

struct StrongSuperpolyReport {
  struct Cell {
    Int k, m;
    Real tail_min;   // min over the sampled tail of K f(Mn) / (n^2 f(n))
    Real end_value;  // at range_end
    bool survives;
  };
  std::vector<Cell> cells;
  bool witness_found = false;
  std::optional<bool> ground_truth;
  std::vector<std::pair<Int, Real>> lnf_over_lnn;  // super-polynomial limit samples
  std::string note;
};
StrongSuperpolyReport strongly_superpoly_check(const SymbolicFunction& f, const Int& k_max,
                                               const Int& m_max, const Int& range_end);

}  // namespace cadist
