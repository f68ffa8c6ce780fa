#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sumrule/cheb.hpp"

// Jacobi operators J e_n = p_n e_{n-1} + q_n e_n + p_{n+1} e_{n+1} with an
// eventually-free tail: p_k = 1 and q_k = 0 outside a finite window.  The
// half-line variant acts on l^2(Z_+) (J e_0 = q_0 e_0 + p_1 e_1, p-index
// starts at 1); the whole-line variant acts on l^2(Z).

namespace sumrule {

enum class Side { half_line, whole_line };

using SparseVec = std::map<long, double>;

class JacobiOperator {
 public:
  static JacobiOperator free_operator(Side side);
  // Overrides of the free values; absent indices mean p = 1 / q = 0.
  static JacobiOperator make(Side side, std::map<long, double> p_over,
                             std::map<long, double> q_over);

  Side side() const { return side_; }
  double p(long k) const;
  double q(long k) const;
  bool is_free() const { return p_over_.empty() && q_over_.empty(); }

  const std::map<long, double>& p_overrides() const { return p_over_; }
  const std::map<long, double>& q_overrides() const { return q_over_; }

  // Inclusive range of sites touched by a non-free coefficient (a p-override
  // at k touches sites k-1 and k); nullopt for the free operator.
  std::optional<std::pair<long, long>> rank_window() const;

  // Smallest n >= 1 with p_k = 1 for k >= n and q_k = 0 for k >= n
  // (half-line); 1 for the free operator.
  long free_tail_index() const;

  // J^{(k)}: coefficient indices shifted down by k (half-line only).
  JacobiOperator shifted(long k) const;

  SparseVec apply(const SparseVec& v) const;

 private:
  JacobiOperator(Side side, std::map<long, double> p, std::map<long, double> q);
  Side side_;
  std::map<long, double> p_over_;
  std::map<long, double> q_over_;
};

// <J^k e_i, e_i>, computed on a local window (exact).
double diag_power(const JacobiOperator& J, long i, int k);

// <{Phi(J) - Phi(J_0)} e_k, e_k>; J_0 is the free operator on the same side.
double diag_entry_poly_delta(const JacobiOperator& J, const PowerPoly& phi, long k);

// t_0 = sum log p_j; t_k = tr(J^k - J_0^k) for k >= 1 (windowed, exact).
double trace_tk(const JacobiOperator& J, int k);
// All of t_0..t_K in one sweep.
std::vector<double> trace_tk_upto(const JacobiOperator& J, int K);

// Row-wise bound on the spectrum: max_i(|q_i| + p_i + p_{i+1}).
double gershgorin_radius(const JacobiOperator& J);

struct ShiftLemmaResult {
  bool holds = false;
  bool precondition_met = false;  // n >= l-1
  double max_deviation = 0.0;
};
// Entrywise comparison of (J^{(k)})^l e_n with (J^l)^{(k)} e_n.
ShiftLemmaResult shift_lemma_check(const JacobiOperator& J, long k, int l, long n);

// Dense n x n symmetric tridiagonal truncation.
class FiniteTruncation {
 public:
  FiniteTruncation(std::vector<double> diag, std::vector<double> off);
  // First n rows/columns of a half-line operator: q_0..q_{n-1}, p_1..p_{n-1}.
  static FiniteTruncation of(const JacobiOperator& J, int n);
  static FiniteTruncation free_of(int n);

  int size() const { return static_cast<int>(diag_.size()); }
  const std::vector<double>& diag() const { return diag_; }
  const std::vector<double>& off() const { return off_; }

  // Dense matrix, row-major.
  std::vector<double> dense() const;

 private:
  std::vector<double> diag_, off_;
};

// tr(a^k - b^k) by dense powering; sizes must match.
double truncation_trace(const FiniteTruncation& a, const FiniteTruncation& b, int k);

}  // namespace sumrule
