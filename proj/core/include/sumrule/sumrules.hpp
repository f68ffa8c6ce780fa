#pragma once

#include <string>
#include <vector>

#include "sumrule/cheb.hpp"
#include "sumrule/jacobi.hpp"
#include "sumrule/orthopoly.hpp"

// Both sides of the sum rule for a nonnegative weight polynomial A:
//   Lambda_A(J)  from the spectral data (eigenvalue term sum F(x_k) plus the
//                relative-entropy-type log integral over [-2,2]),
//   H_A(J)       from the coefficient sequences (shifted local windows of
//                Phi(J) - Phi(J_0), or the equivalent trace form),
// and the finite-rank verifier for the identity H_A = Lambda_A.

namespace sumrule {

// F(x) = int_2^x A sqrt(t^2-4) dt for x > 2 (mirrored for x < -2); F >= 0.
double F_of(const ChebUExpansion& A, double x);

// Density of the measure lambda: the three-branch formula (log branch inside
// the band, counting-function branches outside).
double lambda_density(const SpectralData& sd, const ChebUExpansion& A, double x);

// Eigenvalue term and log-integral term of Lambda_A, reported separately.
struct LambdaSplit {
  double eigen_term = 0.0;
  double log_integral_term = 0.0;
  double value() const { return eigen_term + log_integral_term; }
};
LambdaSplit Lambda_A_split(const SpectralData& sd, const ChebUExpansion& A, int nodes);
double Lambda_A(const SpectralData& sd, const ChebUExpansion& A, int nodes);

// h_A o tau^k = -a log p_{m+k+2} + <{Phi(J)-Phi(J_0)} e_{m+k+1}, e_{m+k+1}>.
double h_A_at(const JacobiOperator& J, const ChebUExpansion& A, long k);

// The series route: head sum over k = 0..m plus the shifted-window tail;
// terminates exactly for finite-rank J.
double H_A(const JacobiOperator& J, const ChebUExpansion& A);
// Individual terms (head terms then tail terms) for diagnostics.
std::vector<double> H_A_terms(const JacobiOperator& J, const ChebUExpansion& A);
// Partial sum with the tail capped at N terms.
double H_A_partial(const JacobiOperator& J, const ChebUExpansion& A, long N);

// The trace route: -a t_0 + sum_k Phi_k t_k.  Valid on either line.
double H_via_trace(const JacobiOperator& J, const ChebUExpansion& A);

// Killip-Simon case A = 1 written directly in the coefficients:
// sum (p_k^2 - 1 - log p_k^2) + (1/2) sum q_k^2 (no additive constant).
double killip_simon_H(const JacobiOperator& J);

struct SumRuleReport {
  double lambda_value = 0.0;
  double h_value = 0.0;
  double h_trace_value = 0.0;
  double eigen_term = 0.0;
  double log_integral_term = 0.0;
  double residual = 0.0;  // |h_value - lambda_value|
  int quadrature_nodes = 0;
  std::vector<double> A_coeffs;  // U-basis coefficients c_1..c_{m+1}
  bool pass = false;
};

// residual <= 1e-6 (1 + |Lambda|); the two H routes must agree to 1e-10.
SumRuleReport verify_sum_rule(const JacobiOperator& J, const ChebUExpansion& A, int nodes);

}  // namespace sumrule
