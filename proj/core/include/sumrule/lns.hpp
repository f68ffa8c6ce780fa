#pragma once

#include <map>
#include <utility>
#include <vector>

#include "sumrule/cheb.hpp"
#include "sumrule/jacobi.hpp"

// Whole-line Chebyshev functional calculus T_l(J), closed forms for the top
// band diagonals, the Hankel-minus-Toeplitz positivity check, Hilbert-Schmidt
// diagnostics, the linearization of T_l around the free operator, and the
// quadratic form that opens the expansion of H_A about J_0.

namespace sumrule {

// Doubly-infinite real sequence equal to a constant outside finitely many
// overrides; the band recurrences stay exact on these.
class DiagSeq {
 public:
  DiagSeq() : free_(0.0) {}
  explicit DiagSeq(double free_value) : free_(free_value) {}

  double free_value() const { return free_; }
  double at(long i) const;
  void set(long i, double v);
  const std::map<long, double>& overrides() const { return over_; }

  // result.at(i) = at(i - s); s = -1 gives the "look one site up" sequence.
  DiagSeq shifted(long s) const;

  // sum_i (at(i) - free_value), a finite sum.
  double deviation_sum() const;
  // sum_i (at(i)^2 - free_value^2).
  double deviation_sum_squares() const;

  friend DiagSeq operator*(const DiagSeq& a, const DiagSeq& b);
  friend DiagSeq operator+(const DiagSeq& a, const DiagSeq& b);
  friend DiagSeq operator-(const DiagSeq& a, const DiagSeq& b);
  DiagSeq& operator*=(double s);

 private:
  double free_;
  std::map<long, double> over_;
};

// T_l(J) = sum_{k=-l}^{l} band(k) S^k with diagonal coefficients.
class BandDecomposition {
 public:
  BandDecomposition(int order, std::map<int, DiagSeq> bands)
      : order_(order), bands_(std::move(bands)) {}
  int order() const { return order_; }
  const DiagSeq& band(int k) const;

 private:
  int order_;
  std::map<int, DiagSeq> bands_;
  static const DiagSeq zero_;
};

// Operator recurrence T_l = J T_{l-1} - T_{l-2} on the band coefficients.
BandDecomposition T_of_J(const JacobiOperator& J, int l);

// Closed forms for the top three diagonals of T_l(J):
//   Lambda_l(l)_i     = p_i p_{i-1} ... p_{i-l+1}
//   Lambda_{l-1}(l)_i = p_i ... p_{i-l+2} (q_i + ... + q_{i-l+1})
//   Lambda_{l-2}(l)_i = p_i ... p_{i-l+3} [ sum_{j=-1}^{l-2}(p_{i-j}^2 - 1)
//                        + sum_{0 <= a <= b <= l-2} q_{i-a} q_{i-b} ]
struct ClosedBands {
  DiagSeq top, second, third;
};
ClosedBands band_closed_forms(const JacobiOperator& J, int l);  // l >= 2

// a_k(J) = tr{T_k(J) - T_k(J_0)}/k for k >= 1; a_0 = sum_i log p_i^2.
double a_k_of(const JacobiOperator& J, int k);
std::vector<double> a_k_upto(const JacobiOperator& J, int kmax);

// K x K matrix {a_{k+l} - a_{|k-l|}}, k,l = 1..K, and its smallest eigenvalue.
struct PsdResult {
  std::vector<std::vector<double>> matrix;
  double min_eigenvalue = 0.0;
};
PsdResult hankel_toeplitz_psd(const JacobiOperator& J, int K);

// H_{U_m U_n}(J) = a_{m+n}(J) - a_{|m-n|}(J)  (a_0 covers the m = n case).
double H_chebyshev(const JacobiOperator& J, int m, int n);

// Trace route for H_{U_l^2} against the row-wise (t_l, q~_l) formula.
struct HsIdentity {
  double lhs = 0.0, rhs = 0.0, residual = 0.0;
};
HsIdentity hs_identity_check(const JacobiOperator& J, int l);

// Squared l^2-norms of {sum_{k=1}^n u_{j+k}}, {sum_{k=1}^n q_{j+k}},
// {u_j^2}, {q_j^2} with u_j = p_j^2 - 1.
struct L2Report {
  double window_u = 0.0, window_q = 0.0, u_sq = 0.0, q_sq = 0.0;
};
L2Report l2_condition_report(const JacobiOperator& J, int n);

// Perturbation direction dJ = (dp, dq) and its interleaved vector
// dj = {..., 2dp_i, dq_i, 2dp_{i+1}, dq_{i+1}, ...} (2dp_i at slot 2i).
struct PerturbationDirection {
  std::map<long, double> dp, dq;
  std::map<long, double> dj_vector() const;
  // Whole-line operator J_0 + eps * dJ (p_i = 1 + eps dp_i, q_i = eps dq_i).
  JacobiOperator applied(double eps) const;
};

// Column of the derivative of T_l at J_0: dT_l(J) e_0 as index -> value.
std::map<long, double> dT_linearization(const PerturbationDirection& dJ, int l);

// (1/2) <dj | A(J_0) | dj>; A(J_0) acts by convolution with the coefficients
// of A(S + S^{-1}) on the interleaved (half-spaced) lattice.
double quadratic_form(const ChebUExpansion& A, const PerturbationDirection& dJ);

// Squared norms of the windowed sums {dq_{i+1}+...+dq_{i+l}} and
// {2dp_{i+1}+...+2dp_{i+l}}; their sum is 2 * quadratic_form(U_l^2, dJ).
struct R2Report {
  double dq_norm = 0.0, dp_norm = 0.0;
};
R2Report r2_condition_report(const PerturbationDirection& dJ, int l);

// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> M);

}  // namespace sumrule
