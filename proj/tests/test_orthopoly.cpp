#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sumrule/cheb.hpp"
#include "sumrule/orthopoly.hpp"
#include "sumrule/quadrature.hpp"

using namespace sumrule;

namespace {

JacobiOperator rank1_q0(double c) {
  return JacobiOperator::make(Side::half_line, {}, {{0, c}});
}

JacobiOperator random_rank(std::mt19937_64& rng, int rank) {
  std::uniform_real_distribution<double> pd(0.7, 1.3), qd(-0.4, 0.4);
  std::map<long, double> p, q;
  for (long k = 0; k < rank; ++k) q[k] = qd(rng);
  for (long k = 1; k < rank; ++k) p[k] = pd(rng);
  return JacobiOperator::make(Side::half_line, std::move(p), std::move(q));
}

// Newton on zeta^2 - z zeta + 1 = 0 starting inside the disk.
cdouble zeta_newton(cdouble z) {
  cdouble zt = 1.0 / z;
  for (int it = 0; it < 60; ++it) zt -= (zt * zt - z * zt + 1.0) / (2.0 * zt - z);
  return zt;
}

}  // namespace

TEST_CASE("zeta values and the defining relation") {
  CHECK(zeta_map(cdouble(2.5, 0.0)).real() == doctest::Approx(0.5));
  CHECK(zeta_map(cdouble(-2.5, 0.0)).real() == doctest::Approx(-0.5));
  CHECK(zeta_map(cdouble(10.0, 0.0)).real() ==
        doctest::Approx(zeta_newton(cdouble(10.0, 0.0)).real()).epsilon(1e-13));

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> re(-5.0, 5.0), im(0.05, 4.0);
  for (int trial = 0; trial < 40; ++trial) {
    cdouble z(re(rng), im(rng));
    cdouble zt = zeta_map(z);
    CHECK(std::abs(zt) < 1.0);
    CHECK(std::abs(zt + 1.0 / zt - z) <= 1e-13 * (1.0 + std::abs(z)));
  }
  CHECK(zeta_real(2.5) == doctest::Approx(0.5));
  CHECK(zeta_real(-2.5) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(zeta_map(cdouble(0.3, 0.0)), std::domain_error);
}

TEST_CASE("boundary branch has -Im zeta = sin(theta) > 0") {
  for (double x : {-1.9, -0.5, 0.0, 1.2, 1.99}) {
    cdouble zb = zeta_boundary(x);
    CHECK(std::abs(zb) == doctest::Approx(1.0));
    CHECK(-zb.imag() > 0.0);
    CHECK(zb.real() == doctest::Approx(x / 2.0));
  }
}

TEST_CASE("free orthonormal polynomials are U_{n+1}") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  for (cdouble z : {cdouble(0.3, 1.0), cdouble(-2.7, 0.2), cdouble(5.0, 0.0)}) {
    OrthoPolys pq = eval_PQ(J0, 8, z);
    for (int n = 0; n <= 8; ++n) {
      CHECK(std::abs(pq.P[(size_t)n] - eval_U(n + 1, z)) <= 1e-12 * (1.0 + std::abs(pq.P[(size_t)n])));
      if (n >= 1)
        CHECK(std::abs(pq.Q[(size_t)n] - eval_U(n, z)) <= 1e-12 * (1.0 + std::abs(pq.Q[(size_t)n])));
    }
  }
}

TEST_CASE("P_1 and the leading coefficient") {
  double c = 0.9;
  OrthoPolys pq = eval_PQ(rank1_q0(c), 1, cdouble(3.0, 0.0));
  CHECK(pq.P[1].real() == doctest::Approx(3.0 - c));

  // Leading coefficient of P_n is 1/(p_1...p_n): evaluate at huge z.
  std::mt19937_64 rng(23);
  JacobiOperator J = random_rank(rng, 4);
  const int n = 6;
  cdouble z(1e7, 0.0);
  OrthoPolys big = eval_PQ(J, n, z);
  double lead = 1.0;
  for (int k = 1; k <= n; ++k) lead /= J.p(k);
  CHECK(big.P[n].real() / std::pow(1e7, n) == doctest::Approx(lead).epsilon(1e-5));
}

TEST_CASE("resolvent of the free operator is -zeta") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  for (cdouble z : {cdouble(2.5, 0.0), cdouble(0.0, 1.5), cdouble(-3.0, 0.5)}) {
    cdouble r = resolvent_rn(J0, z);
    CHECK(std::abs(r + zeta_map(z)) <= 1e-12);
  }
}

TEST_CASE("resolvent decays like -1/z") {
  std::mt19937_64 rng(25);
  JacobiOperator J = random_rank(rng, 3);
  cdouble z(1e8, 0.0);
  cdouble r = resolvent_rn(J, z);
  CHECK(std::abs(r + 1.0 / z) <= 1e-14);
}

TEST_CASE("resolvent equals the Cauchy transform of the spectral measure") {
  JacobiOperator J = rank1_q0(1.5);
  SpectralData sd = SpectralData::build(J);
  GaussURule rule = gauss_u(4000);
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> re(-4.0, 4.0), im(0.5, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    cdouble z(re(rng), im(rng));
    cdouble cauchy = 0.0;
    for (size_t j = 0; j < rule.x.size(); ++j) {
      double x = rule.x[j];
      cauchy += rule.w[j] / (2.0 * std::numbers::pi * u_boundary_mod2(J, x)) / (x - z);
    }
    for (size_t k = 0; k < sd.eigs().plus.size(); ++k)
      cauchy += sd.weights_plus()[k] / (sd.eigs().plus[k] - z);
    CHECK(std::abs(resolvent_rn(J, z) - cauchy) <= 1e-8);
  }
}

TEST_CASE("a.c. density: free case and rank-one value at the origin") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  for (double x : {-1.5, -0.3, 0.0, 0.8, 1.9})
    CHECK(ac_density(J0, x) ==
          doctest::Approx(std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi)).epsilon(1e-12));

  double c = 1.5;
  CHECK(ac_density(rank1_q0(c), 0.0) ==
        doctest::Approx(1.0 / (std::numbers::pi * (1.0 + c * c))).epsilon(1e-12));
}

TEST_CASE("density is even for pure off-diagonal perturbations") {
  JacobiOperator J = JacobiOperator::make(Side::half_line, {{1, 1.3}, {2, 0.8}}, {});
  for (double x : {0.3, 0.9, 1.7})
    CHECK(ac_density(J, x) == doctest::Approx(ac_density(J, -x)).epsilon(1e-12));
}

TEST_CASE("rank-one eigenvalues: closed form c + 1/c") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  CHECK(eigenvalues_outside(J0).all().empty());

  for (double c : {1.1, 1.5, 3.0}) {
    OutsideEigs e = eigenvalues_outside(rank1_q0(c));
    REQUIRE(e.plus.size() == 1);
    CHECK(e.minus.empty());
    CHECK(e.plus[0] == doctest::Approx(c + 1.0 / c).epsilon(1e-12));
  }
  CHECK(eigenvalues_outside(rank1_q0(0.5)).all().empty());
  // Mirror side
  OutsideEigs em = eigenvalues_outside(rank1_q0(-2.0));
  REQUIRE(em.minus.size() == 1);
  CHECK(em.minus[0] == doctest::Approx(-2.5).epsilon(1e-12));
}

TEST_CASE("point masses: rank-one weight and normalization") {
  double c = 1.5;
  JacobiOperator J = rank1_q0(c);
  SpectralData sd = SpectralData::build(J);
  REQUIRE(sd.weights_plus().size() == 1);
  CHECK(sd.weights_plus()[0] == doctest::Approx((c * c - 1.0) / (c * c)).epsilon(1e-12));
  CHECK(sd.total_mass(4000) == doctest::Approx(1.0).epsilon(1e-8));
  // First moment of sigma is q_0.
  CHECK(sd.moment(1, 4000) == doctest::Approx(c).epsilon(1e-8));
}

TEST_CASE("moments across a small ensemble") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    JacobiOperator J = random_rank(rng, 4);
    SpectralData sd = SpectralData::build(J);
    CHECK(sd.total_mass(4000) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sd.moment(1, 4000) == doctest::Approx(J.q(0)).epsilon(1e-8));
    CHECK(sd.moment(2, 4000) ==
          doctest::Approx(J.q(0) * J.q(0) + J.p(1) * J.p(1)).epsilon(1e-8));
  }
}

TEST_CASE("perturbation determinant: free case and rank-one closed form") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  for (cdouble z : {cdouble(3.0, 0.0), cdouble(0.0, 2.0), cdouble(-4.0, 1.0)})
    CHECK(std::abs(delta_direct(J0, z) - 1.0) <= 1e-12);

  double c = 0.8;
  cdouble z(10.0, 0.0);
  cdouble zt = zeta_map(z);
  CHECK(std::abs(delta_direct(rank1_q0(c), z) - (z - c - zt) * zt) <= 1e-12);

  // At infinity the determinant tends to exp(-t_0).
  std::mt19937_64 rng(36);
  JacobiOperator Jr = random_rank(rng, 4);
  cdouble far(0.0, 1e7);
  CHECK(std::abs(delta_direct(Jr, far) - std::exp(-trace_tk(Jr, 0))) <= 1e-6);
}

TEST_CASE("boundary modulus identity |Delta|^2 = (1/2pi) sqrt(4-x^2)/density") {
  std::mt19937_64 rng(33);
  JacobiOperator J = random_rank(rng, 4);
  for (int j = 1; j <= 10; ++j) {
    double x = -1.9 + 3.8 * j / 11.0;
    double lhs = u_boundary_mod2(J, x);  // |zeta^n| = 1 on the cut
    double rhs = std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi * ac_density(J, x));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("delta via traces matches the direct product") {
  double c = 0.9;
  JacobiOperator J1 = rank1_q0(c);
  DeltaTraces dt = delta_via_traces(J1, cdouble(10.0, 0.0), 12);
  CHECK(std::abs(dt.value - delta_direct(J1, cdouble(10.0, 0.0))) <= 1e-10);

  std::mt19937_64 rng(35);
  JacobiOperator J = random_rank(rng, 4);
  cdouble z(0.0, 8.0);
  DeltaTraces dt2 = delta_via_traces(J, z, 20);
  CHECK(std::abs(dt2.value - delta_direct(J, z)) <= 1e-8);

  // Reported tail bound shrinks with the truncation order and caps the
  // actual defect.
  DeltaTraces lo = delta_via_traces(J, z, 8);
  CHECK(lo.truncation_bound > dt2.truncation_bound);
  CHECK(std::abs(lo.value - delta_direct(J, z)) <= lo.truncation_bound);

  CHECK_THROWS_AS(delta_via_traces(J, cdouble(1.0, 0.5), 10), std::domain_error);
}

TEST_CASE("eigenvalues are exactly the zeros of u (both directions)") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    JacobiOperator J = random_rank(rng, 5);
    OutsideEigs e = eigenvalues_outside(J);
    for (double x : e.all()) CHECK(std::abs(u_function_real(J, x)) <= 1e-10);
    // No extra zeros: the measure must be fully accounted for.
    SpectralData sd = SpectralData::build(J);
    CHECK(sd.total_mass(4000) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("free-case chain") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  SpectralData sd = SpectralData::build(J0);
  CHECK(sd.eigs().all().empty());
  CHECK(std::abs(delta_direct(J0, cdouble(0.7, 1.1)) - 1.0) <= 1e-12);
  CHECK(ac_density(J0, 0.5) ==
        doctest::Approx(std::sqrt(3.75) / (2.0 * std::numbers::pi)).epsilon(1e-12));
  CHECK(std::abs(resolvent_rn(J0, cdouble(0.7, 1.1)) + zeta_map(cdouble(0.7, 1.1))) <= 1e-12);
}
