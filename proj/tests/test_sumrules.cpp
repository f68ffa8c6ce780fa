#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sumrule/quadrature.hpp"
#include "sumrule/sumrules.hpp"

using namespace sumrule;

namespace {

JacobiOperator rank1_q0(double c) {
  return JacobiOperator::make(Side::half_line, {}, {{0, c}});
}

JacobiOperator random_rank(std::mt19937_64& rng, int max_rank) {
  std::uniform_real_distribution<double> pd(0.8, 1.2), qd(-0.3, 0.3);
  std::uniform_int_distribution<int> rd(1, max_rank);
  int rank = rd(rng);
  std::map<long, double> p, q;
  for (long k = 0; k < rank; ++k) q[k] = qd(rng);
  for (long k = 1; k < rank; ++k) p[k] = pd(rng);
  return JacobiOperator::make(Side::half_line, std::move(p), std::move(q));
}

ChebUExpansion one() { return ChebUExpansion::basis(1); }
ChebUExpansion U2sq() { return u_product(ChebUExpansion::basis(2), ChebUExpansion::basis(2)); }

}  // namespace

TEST_CASE("F: endpoint limit, closed form for A = 1, symmetry") {
  // x -> 2+ gives an empty integral.
  CHECK(F_of(one(), 2.0 + 1e-9) == doctest::Approx(0.0).scale(1.0));

  // Closed-form antiderivative oracle: x/2 sqrt(x^2-4) - 2 acosh(x/2).
  auto closed = [](double x) {
    return 0.5 * x * std::sqrt(x * x - 4.0) - 2.0 * std::acosh(x / 2.0);
  };
  CHECK(F_of(one(), 2.5) == doctest::Approx(closed(2.5)).epsilon(1e-12));
  CHECK(F_of(one(), 2.5) == doctest::Approx(0.48871).epsilon(1e-4));
  CHECK(F_of(one(), 3.7) == doctest::Approx(closed(3.7)).epsilon(1e-12));
  CHECK(F_of(one(), -2.5) == doctest::Approx(F_of(one(), 2.5)).epsilon(1e-12));

  CHECK_THROWS_AS(F_of(one(), 1.5), std::domain_error);
}

TEST_CASE("lambda density: free case vanishes, outside branch integrates to F") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  SpectralData sd0 = SpectralData::build(J0);
  for (double x : {-1.5, 0.0, 1.2, 2.5, -3.0})
    CHECK(lambda_density(sd0, one(), x) == doctest::Approx(0.0).scale(1.0));

  // Rank one, single eigenvalue at 13/6: integral of the outside branch
  // equals F(13/6) (counting function is 1 on (2, 13/6)).
  JacobiOperator J = rank1_q0(1.5);
  SpectralData sd = SpectralData::build(J);
  double x1 = 13.0 / 6.0;
  double outside = integrate_adaptive(
      [&](double x) { return lambda_density(sd, one(), x); }, 2.0, x1 + 0.5, 1e-11);
  CHECK(outside == doctest::Approx(F_of(one(), x1)).epsilon(1e-9));
}

TEST_CASE("Lambda_A: free normalization and the rank-one identity") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  SpectralData sd0 = SpectralData::build(J0);
  CHECK(std::abs(Lambda_A(sd0, one(), 2000)) <= 1e-10);
  CHECK(std::abs(Lambda_A(sd0, U2sq(), 2000)) <= 1e-10);

  JacobiOperator J = rank1_q0(1.5);
  SpectralData sd = SpectralData::build(J);
  double lam = Lambda_A(sd, one(), 2000);
  CHECK(lam == doctest::Approx(H_via_trace(J, one())).epsilon(1e-6));

  // Quadrature convergence: doubling nodes moves the value below 1e-8.
  CHECK(std::abs(Lambda_A(sd, one(), 4000) - lam) <= 1e-8);

  ChebUExpansion negative({-1.0});
  CHECK_THROWS_AS(Lambda_A(sd, negative, 2000), std::invalid_argument);
}

TEST_CASE("h_A shifts") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  for (long k : {0L, 1L, 5L}) CHECK(h_A_at(J0, U2sq(), k) == doctest::Approx(0.0).scale(1.0));

  std::mt19937_64 rng(41);
  JacobiOperator J = random_rank(rng, 4);
  const long rank = 4, m = U2sq().degree();
  for (long k = rank + m + 2; k <= rank + m + 5; ++k)
    CHECK(h_A_at(J, U2sq(), k) == doctest::Approx(0.0).scale(1.0));

  // Shift consistency h_A(tau^k J) at 0 = h_A(J) at k.
  for (long k : {1L, 2L, 3L})
    CHECK(h_A_at(J, U2sq(), k) == doctest::Approx(h_A_at(J.shifted(k), U2sq(), 0)).epsilon(1e-13));
}

TEST_CASE("H_A: free vanishes, equals the trace route, partial sums terminate") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  CHECK(H_A(J0, one()) == doctest::Approx(0.0).scale(1.0));
  CHECK(H_A(J0, U2sq()) == doctest::Approx(0.0).scale(1.0));

  // Two routes across 100 random cases, weights up to degree 4.
  ChebUExpansion U3sq = u_product(ChebUExpansion::basis(3), ChebUExpansion::basis(3));
  ChebUExpansion mix({1.0, 0.5, 0.25});
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    JacobiOperator J = random_rank(rng, 5);
    for (const ChebUExpansion& A : {one(), U2sq(), U3sq, u_product(mix, mix)}) {
      double series = H_A(J, A);
      double trace = H_via_trace(J, A);
      CHECK(series == doctest::Approx(trace).epsilon(1e-10));
      // Terms beyond the window are exactly zero: a long partial sum agrees.
      CHECK(H_A_partial(J, A, 40) == doctest::Approx(series).epsilon(1e-12));
    }
  }
}

TEST_CASE("H via traces: Killip-Simon case") {
  // A = 1: H = t_2/2 - 2 t_0.
  std::mt19937_64 rng(45);
  JacobiOperator J = random_rank(rng, 4);
  double expect = trace_tk(J, 2) / 2.0 - 2.0 * trace_tk(J, 0);
  CHECK(H_via_trace(J, one()) == doctest::Approx(expect).epsilon(1e-13));

  double c = 0.7;
  CHECK(H_via_trace(rank1_q0(c), one()) == doctest::Approx(c * c / 2.0).epsilon(1e-13));
}

TEST_CASE("killip_simon_H closed forms and the missing constant") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  CHECK(killip_simon_H(J0) == doctest::Approx(0.0).scale(1.0));

  double c = 0.9;
  CHECK(killip_simon_H(rank1_q0(c)) == doctest::Approx(c * c / 2.0));

  JacobiOperator Jp = JacobiOperator::make(Side::half_line, {{1, 1.2}}, {});
  CHECK(killip_simon_H(Jp) == doctest::Approx(1.44 - 1.0 - std::log(1.44)).epsilon(1e-13));
  CHECK(killip_simon_H(Jp) == doctest::Approx(H_via_trace(Jp, one())).epsilon(1e-12));

  // The coefficient sum itself (no -1/2) equals the trace form across an
  // ensemble; a -1/2 constant would break the free normalization.
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    JacobiOperator J = random_rank(rng, 5);
    CHECK(killip_simon_H(J) == doctest::Approx(H_via_trace(J, one())).epsilon(1e-11));
  }
}

TEST_CASE("verify_sum_rule end to end") {
  JacobiOperator J0 = JacobiOperator::free_operator(Side::half_line);
  SumRuleReport r0 = verify_sum_rule(J0, U2sq(), 2000);
  CHECK(r0.pass);
  CHECK(std::abs(r0.residual) <= 1e-10);

  SumRuleReport r1 = verify_sum_rule(rank1_q0(1.5), one(), 2000);
  CHECK(r1.pass);
  CHECK(r1.eigen_term > 0.0);

  std::mt19937_64 rng(49);
  ChebUExpansion u1u2({1.0, 1.0});
  ChebUExpansion A = u_product(u1u2, u1u2);  // (U_1 + U_2)^2
  for (int trial = 0; trial < 5; ++trial) {
    JacobiOperator J = random_rank(rng, 6);
    SumRuleReport r = verify_sum_rule(J, A, 2000);
    CHECK(r.pass);
    CHECK(std::abs(r.h_value - r.h_trace_value) <= 1e-10 * (1.0 + std::abs(r.h_value)));
    CHECK(r.eigen_term >= 0.0);
  }
}

TEST_CASE("both functionals are linear in A") {
  std::mt19937_64 rng(51);
  JacobiOperator J = random_rank(rng, 4);
  SpectralData sd = SpectralData::build(J);
  ChebUExpansion A = U2sq();
  ChebUExpansion A2 = 2.0 * A;
  double lam = Lambda_A(sd, A, 2000), lam2 = Lambda_A(sd, A2, 2000);
  CHECK(lam2 == doctest::Approx(2.0 * lam).epsilon(1e-10));
  CHECK(H_A(J, A2) == doctest::Approx(2.0 * H_A(J, A)).epsilon(1e-10));
}
