#pragma once

#include <complex>
#include <vector>

#include "sumrule/cheb.hpp"
#include "sumrule/jacobi.hpp"
#include "sumrule/laurent.hpp"
#include "sumrule/orthopoly.hpp"
#include "sumrule/sumrules.hpp"

// Normalization polynomials B_n and B~_n, the limit function D(z), and the
// convergence experiment for the normalized orthonormal polynomials
// zeta^{n+1} sqrt(z^2-4) P_n(z) exp(-B~_n / (A sqrt(z^2-4))) -> D(z).

namespace sumrule {

// Expansion of log(zeta^{n+1} sqrt(z^2-4) P_n(z)) at infinity:
// s_0 = -log(p_1..p_n), s_k = -tr(Jt(n)^k - Jt_0(n)^k)/k, valid for K <= 2n+1
// (the neglected log(1 - zeta^{2n+2}) term cannot reach retained orders).
LaurentSeries log_Pn_series(const JacobiOperator& J, int n, int K);

struct NormalizationPoly {
  int n = 0;                    // polynomial index (0 for the B_n route)
  PowerPoly poly;               // degree <= m+1
  double remainder_z1 = 0.0;    // 1/z coefficient of the matched remainder
  // Largest power with a surviving coefficient in the matching residual
  // log-expression - poly/(A sqrt(z^2-4)); should be <= -(m+2).
  int residual_top_power = 0;
  double residual_top_coeff = 0.0;
};

// B~_n: polynomial part of A * sqrt(z^2-4) * log_Pn_series.
NormalizationPoly compute_B_tilde(const JacobiOperator& J, int n, const ChebUExpansion& A);
// B_n: polynomial part of A * sqrt(z^2-4) * log Delta_n (trace coefficients);
// the 1/z coefficient of the remainder equals -Lambda_A(J).
NormalizationPoly compute_B(const JacobiOperator& J, const ChebUExpansion& A);

// D(z) = exp( (1/(A sqrt(z^2-4))) int dlambda/(x-z) ).
cdouble D_of(const SpectralData& sd, const ChebUExpansion& A, cdouble z, int nodes = 2000);

// zeta^{n+1} sqrt(z^2-4) P_n(z) exp(-B~_n/(A sqrt(z^2-4))).
cdouble normalized_Pn(const JacobiOperator& J, int n, const ChebUExpansion& A, cdouble z);
// Same with a precomputed B~_n (the experiment reuses it per n).
cdouble normalized_Pn_with(const JacobiOperator& J, int n, const NormalizationPoly& Bt,
                           const ChebUExpansion& A, cdouble z);

// Rectangular probe grid: dist(z, [-2,2]) >= dist_min, |z| <= rmax.
std::vector<cdouble> probe_grid(double dist_min, double rmax, double step);
double dist_to_band(cdouble z);

struct ConvergenceRow {
  int n = 0;
  double sup_err = 0.0;
};
struct ConvergenceTable {
  std::vector<cdouble> grid;
  std::vector<ConvergenceRow> rows;
  std::vector<std::vector<double>> errors;  // errors[i][j]: row i, grid point j
};
// Rows are independent; jobs > 1 maps them onto workers with the output
// order fixed by n.
ConvergenceTable convergence_experiment(const JacobiOperator& J, const ChebUExpansion& A,
                                        int n_min, int n_max, int stride,
                                        const std::vector<cdouble>& grid, int nodes = 2000,
                                        int jobs = 1);

}  // namespace sumrule
