#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sumrule/asymptotics.hpp"
#include "sumrule/quadrature.hpp"

using namespace sumrule;

namespace {

JacobiOperator rank1_q0(double c) {
  return JacobiOperator::make(Side::half_line, {}, {{0, c}});
}

JacobiOperator rank3_one_eig() {
  return JacobiOperator::make(Side::half_line, {{1, 1.1}, {2, 0.95}},
                              {{0, 1.4}, {1, 0.2}, {2, -0.1}});
}

ChebUExpansion one() { return ChebUExpansion::basis(1); }
ChebUExpansion U2sq() { return u_product(ChebUExpansion::basis(2), ChebUExpansion::basis(2)); }

}  // namespace

TEST_CASE("log_Pn_series: free case vanishes, rank-one first trace") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  LaurentSeries s0 = log_Pn_series(J0, 5, 9);
  for (int p = 0; p >= s0.bottom_degree(); --p)
    CHECK(s0.coeff(p) == doctest::Approx(0.0).scale(1.0));

  double c = 0.8;
  LaurentSeries s1 = log_Pn_series(rank1_q0(c), 1, 3);
  CHECK(s1.coeff(0) == doctest::Approx(0.0).scale(1.0));
  CHECK(s1.coeff(-1) == doctest::Approx(-c));

  CHECK_THROWS_AS(log_Pn_series(rank1_q0(c), 2, 6), std::invalid_argument);  // K > 2n+1
}

TEST_CASE("exp of the truncated series tracks the direct product") {
  JacobiOperator J = rank3_one_eig();
  const int n = 12, K = 10;
  LaurentSeries s = log_Pn_series(J, n, K);
  cdouble z(10.0, 0.0);
  cdouble direct = zeta_map(z) * sqrt_z2m4(z);
  {
    OrthoPolys pq = eval_PQ(J, n, z);
    direct *= std::pow(zeta_map(z), n) * pq.P[n];
  }
  CHECK(std::abs(std::exp(s.eval(z)) - direct) <= 1e-8 * std::abs(direct));
}

TEST_CASE("B~ for the free operator is zero") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  for (const ChebUExpansion& A : {one(), U2sq()}) {
    int m = A.degree();
    int n_min = (m + 1) / 2 + 1;
    NormalizationPoly Bt = compute_B_tilde(J0, n_min + 2, A);
    CHECK(Bt.poly.is_zero());
    CHECK(Bt.remainder_z1 == doctest::Approx(0.0).scale(1.0));
  }
}

TEST_CASE("B~ rank-one with A = 1 uses s_0, s_1") {
  // A sqrt(z^2-4) log(...) = (z - 2/z - ...) (s_0 + s_1/z + s_2/z^2 + ...):
  // polynomial part s_0 z + s_1, remainder (s_2 - 2 s_0)/z + ...
  double c = 0.8;
  JacobiOperator J = rank1_q0(c);
  const int n = 4;
  LaurentSeries s = log_Pn_series(J, n, 3);
  NormalizationPoly Bt = compute_B_tilde(J, n, one());
  CHECK(Bt.poly.degree() <= 1);
  CHECK(Bt.poly.coeff(1) == doctest::Approx(s.coeff(0)).scale(1.0));
  CHECK(Bt.poly.coeff(0) == doctest::Approx(s.coeff(-1)));
  CHECK(Bt.remainder_z1 == doctest::Approx(s.coeff(-2) - 2.0 * s.coeff(0)).scale(1.0));
}

TEST_CASE("B~ is linear in A") {
  JacobiOperator J = rank3_one_eig();
  ChebUExpansion A = U2sq();
  NormalizationPoly b1 = compute_B_tilde(J, 20, A);
  NormalizationPoly b2 = compute_B_tilde(J, 20, 2.0 * A);
  for (int k = 0; k <= b1.poly.degree(); ++k)
    CHECK(b2.poly.coeff(k) == doctest::Approx(2.0 * b1.poly.coeff(k)).epsilon(1e-12));
}

TEST_CASE("B: free operator, remainder coefficient equals -Lambda_A") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  NormalizationPoly b0 = compute_B(J0, U2sq());
  CHECK(b0.poly.is_zero());

  JacobiOperator J1 = rank1_q0(1.5);
  SpectralData sd1 = SpectralData::build(J1);
  NormalizationPoly b1 = compute_B(J1, one());
  CHECK(b1.remainder_z1 == doctest::Approx(-Lambda_A(sd1, one(), 4000)).epsilon(1e-8));

  JacobiOperator J3 = rank3_one_eig();
  SpectralData sd3 = SpectralData::build(J3);
  NormalizationPoly b3 = compute_B(J3, U2sq());
  CHECK(b3.remainder_z1 == doctest::Approx(-Lambda_A(sd3, U2sq(), 4000)).epsilon(1e-8));
}

TEST_CASE("B and B~ agree once n clears the window") {
  JacobiOperator J = rank3_one_eig();
  ChebUExpansion A = U2sq();
  NormalizationPoly B = compute_B(J, A);
  for (int n : {12, 30, 60}) {
    NormalizationPoly Bt = compute_B_tilde(J, n, A);
    for (int k = 0; k <= std::max(B.poly.degree(), Bt.poly.degree()); ++k)
      CHECK(Bt.poly.coeff(k) == doctest::Approx(B.poly.coeff(k)).epsilon(1e-11));
  }
}

TEST_CASE("matching residual order") {
  JacobiOperator J = rank3_one_eig();
  ChebUExpansion A = U2sq();
  NormalizationPoly Bt = compute_B_tilde(J, 20, A);
  CHECK(Bt.residual_top_power <= -(A.degree() + 2));
}

TEST_CASE("D: free case, decay at infinity, conjugate symmetry") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  SpectralData sd0 = SpectralData::build(J0);
  CHECK(std::abs(D_of(sd0, U2sq(), cdouble(1.0, 2.0)) - 1.0) <= 1e-10);

  JacobiOperator J = rank3_one_eig();
  SpectralData sd = SpectralData::build(J);
  CHECK(std::abs(D_of(sd, U2sq(), cdouble(0.0, 600.0)) - 1.0) <= 1e-3);

  cdouble z(1.3, 1.7);
  cdouble a = D_of(sd, U2sq(), z);
  cdouble b = D_of(sd, U2sq(), std::conj(z));
  CHECK(std::abs(b - std::conj(a)) <= 1e-10);

  CHECK_THROWS_AS(D_of(sd, U2sq(), cdouble(0.5, 1e-9)), std::domain_error);
}

TEST_CASE("normalized free polynomials are 1 - zeta^{2n+2}") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  cdouble z(0.4, 1.4);
  cdouble zt = zeta_map(z);
  for (int n : {3, 6, 11}) {
    cdouble v = normalized_Pn(J0, n, one(), z);
    cdouble expect = 1.0 - std::pow(zt, 2 * n + 2);
    CHECK(std::abs(v - expect) <= 1e-12);
  }
}

TEST_CASE("ratio asymptotics P_{n-1}/(p_n P_n) -> zeta") {
  JacobiOperator J = rank3_one_eig();
  cdouble z(2.8, 0.4);
  cdouble zt = zeta_map(z);
  double prev_err = 1e9;
  for (int n : {10, 20, 40}) {
    OrthoPolys pq = eval_PQ(J, n, z);
    cdouble ratio = pq.P[(size_t)n - 1] / (J.p(n) * pq.P[(size_t)n]);
    double err = std::abs(ratio - zt);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err <= 1e-8);
}

TEST_CASE("convergence experiment: free errors follow |zeta|^{2n+2}") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  std::vector<cdouble> grid = probe_grid(1.0, 4.0, 1.0);
  ConvergenceTable t = convergence_experiment(J0, one(), 4, 12, 4, grid, 400);
  for (size_t r = 0; r < t.rows.size(); ++r) {
    int n = t.rows[r].n;
    double worst = 0.0;
    for (size_t g = 0; g < grid.size(); ++g)
      worst = std::max(worst, std::pow(std::abs(zeta_map(grid[g])), 2 * n + 2));
    CHECK(t.rows[r].sup_err == doctest::Approx(worst).epsilon(0.05));
  }
}

TEST_CASE("experiment decays for the rank-3 preset and survives grid refinement") {
  JacobiOperator J = rank3_one_eig();
  SpectralData sd = SpectralData::build(J);
  REQUIRE(sd.eigs().all().size() == 1);

  std::vector<cdouble> grid = probe_grid(1.0, 6.0, 1.0);
  ConvergenceTable t = convergence_experiment(J, U2sq(), 10, 40, 10, grid, 1000);
  CHECK(t.rows.front().sup_err > t.rows.back().sup_err);
  CHECK(t.rows.back().sup_err <= 1e-6);

  // Doubling the grid density moves the sup by less than 10% while the
  // error is still above the quadrature floor.
  std::vector<cdouble> fine = probe_grid(1.0, 6.0, 0.5);
  ConvergenceTable t2 = convergence_experiment(J, U2sq(), 10, 10, 10, fine, 1000);
  CHECK(t2.rows.front().sup_err ==
        doctest::Approx(t.rows.front().sup_err).epsilon(0.10));
}

TEST_CASE("probe grid validation") {
  CHECK_THROWS_AS(probe_grid(0.05, 4.0, 0.5), std::invalid_argument);
  for (cdouble z : probe_grid(0.5, 5.0, 0.7)) {
    CHECK(dist_to_band(z) >= 0.5);
    CHECK(std::abs(z) <= 5.0);
  }
}
