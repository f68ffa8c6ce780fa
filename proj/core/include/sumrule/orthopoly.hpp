#pragma once

#include <complex>
#include <vector>

#include "sumrule/jacobi.hpp"

// Orthonormal polynomials P_n, Q_n of a Jacobi operator, the Joukowski map
// zeta(z), the resolvent r(z) = <(J-z)^{-1} e_0, e_0>, spectral data of a
// finite-rank perturbation (a.c. density, eigenvalues, point masses) and the
// perturbation determinant Delta_n(z) = (p_n P_n - zeta P_{n-1}) zeta^n.

namespace sumrule {

// Branch with |zeta| < 1 of zeta + 1/zeta = z; z off [-2,2].
cdouble zeta_map(cdouble z);
// Real values for |x| > 2, cancellation-free near the band edges.
double zeta_real(double x);
// Boundary values zeta(x + i0) = e^{-i theta}, x = 2 cos theta in (-2,2).
cdouble zeta_boundary(double x);
// d zeta / dz = -zeta / sqrt(z^2-4).
cdouble zeta_deriv(cdouble z);

// sqrt(z^2-4) on the branch that behaves like z at infinity.
cdouble sqrt_z2m4(cdouble z);

struct OrthoPolys {
  std::vector<cdouble> P, Q;
};
// P_0..P_n and Q_0..Q_n from the three-term recurrence
// (P_0 = 1, Q_0 = 0, Q_1 = 1/p_1).
OrthoPolys eval_PQ(const JacobiOperator& J, int n, cdouble z);

struct OrthoPolysReal {
  std::vector<double> P, dP, Q, dQ;
};
OrthoPolysReal eval_PQ_deriv(const JacobiOperator& J, int n, double x);

// u(z) = p_n P_n(z) - zeta(z) P_{n-1}(z) with n = free_tail_index(J);
// its zeros off [-2,2] are the eigenvalues of J there.
cdouble u_function(const JacobiOperator& J, cdouble z);
double u_function_real(const JacobiOperator& J, double x);
// |u(x+i0)|^2 for x in (-2,2).
double u_boundary_mod2(const JacobiOperator& J, double x);

// r(z) = -(p_n Q_n - zeta Q_{n-1}) / (p_n P_n - zeta P_{n-1}); throws at poles.
cdouble resolvent_rn(const JacobiOperator& J, cdouble z);

// sigma'_{a.c.}(x) = (1/pi) (sqrt(4-x^2)/2) / |u(x+i0)|^2, x in (-2,2).
double ac_density(const JacobiOperator& J, double x);

struct OutsideEigs {
  std::vector<double> minus;  // ascending, in (-inf, -2)
  std::vector<double> plus;   // ascending, in (2, inf)
  std::vector<double> all() const;
};
// Sign-scan plus bisection inside the Gershgorin bound; adaptive grid
// refinement until the root count is stable across two refinements.
OutsideEigs eigenvalues_outside(const JacobiOperator& J);

// Residue weights of r at the given eigenvalues; all positive.
std::vector<double> point_mass_weights(const JacobiOperator& J, const std::vector<double>& eigs);

cdouble delta_direct(const JacobiOperator& J, cdouble z);

struct DeltaTraces {
  cdouble log_value;        // -t_0 - sum_{k<=K} t_k/(k z^k)
  cdouble value;            // exp(log_value)
  double truncation_bound;  // crude tail estimate O((R/|z|)^{K+1})
};
DeltaTraces delta_via_traces(const JacobiOperator& J, cdouble z, int K);

// Assembled spectral data of a finite-rank half-line operator.
class SpectralData {
 public:
  static SpectralData build(const JacobiOperator& J);

  const JacobiOperator& op() const { return J_; }
  long n_star() const { return n_; }
  const OutsideEigs& eigs() const { return eigs_; }
  const std::vector<double>& weights_minus() const { return w_minus_; }
  const std::vector<double>& weights_plus() const { return w_plus_; }

  double density(double x) const { return ac_density(J_, x); }
  double weight_sum() const;
  double ac_mass(int nodes = 2000) const;
  // weight_sum + ac_mass; equals 1 up to quadrature error.
  double total_mass(int nodes = 2000) const;
  // int x^order dsigma including the point masses.
  double moment(int order, int nodes = 2000) const;

 private:
  SpectralData(JacobiOperator J, long n, OutsideEigs e, std::vector<double> wm,
               std::vector<double> wp);
  JacobiOperator J_;
  long n_;
  OutsideEigs eigs_;
  std::vector<double> w_minus_, w_plus_;
};

}  // namespace sumrule
