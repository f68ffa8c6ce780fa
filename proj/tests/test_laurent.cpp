#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sumrule/laurent.hpp"

using namespace sumrule;

TEST_CASE("zeta series: 1/z + 1/z^3 + 2/z^5 + 5/z^7 + ...") {
  LaurentSeries zt = laurent_zeta(10);
  CHECK(zt.top_degree() == -1);
  CHECK(zt.coeff(-1) == doctest::Approx(1.0));
  CHECK(zt.coeff(-2) == doctest::Approx(0.0));
  CHECK(zt.coeff(-3) == doctest::Approx(1.0));
  CHECK(zt.coeff(-5) == doctest::Approx(2.0));
  CHECK(zt.coeff(-7) == doctest::Approx(5.0));
  CHECK(zt.coeff(-9) == doctest::Approx(14.0));

  // Numerically solves zeta + 1/zeta = z at z = 10 (20 retained terms keep
  // the truncation tail below 1e-12 there).
  double z = 10.0;
  double zeta = (z - std::sqrt(z * z - 4.0)) / 2.0;
  CHECK(std::abs(laurent_zeta(20).eval(z) - zeta) < 1e-12);
}

TEST_CASE("sqrt(z^2-4) series squares back") {
  LaurentSeries s = laurent_sqrt_z2m4(12);
  CHECK(s.coeff(1) == doctest::Approx(1.0));
  CHECK(s.coeff(-1) == doctest::Approx(-2.0));
  CHECK(s.coeff(-3) == doctest::Approx(-2.0));
  CHECK(s.coeff(-5) == doctest::Approx(-4.0));
  LaurentSeries sq = laurent_mul(s, s);
  CHECK(sq.coeff(2) == doctest::Approx(1.0));
  CHECK(sq.coeff(1) == doctest::Approx(0.0).scale(1.0));
  CHECK(sq.coeff(0) == doctest::Approx(-4.0));
  for (int p = -1; p >= sq.bottom_degree(); --p)
    CHECK(sq.coeff(p) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("zeta from (z - sqrt)/2 agrees with the direct series") {
  const int K = 9;
  LaurentSeries z_poly(1, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  LaurentSeries half = laurent_scale(laurent_sub(z_poly, laurent_sqrt_z2m4(K)), 0.5);
  LaurentSeries direct = laurent_zeta(7);
  for (int p = -1; p >= direct.bottom_degree(); --p)
    CHECK(half.coeff(p) == doctest::Approx(direct.coeff(p)));
}

TEST_CASE("log(1 + c/z) has the Mercator coefficients") {
  const double c = 0.7;
  LaurentSeries s(0, {1.0, c, 0.0, 0.0, 0.0, 0.0});
  LaurentSeries l = laurent_log(s);
  CHECK(l.coeff(0) == doctest::Approx(0.0).scale(1.0));
  CHECK(l.coeff(-1) == doctest::Approx(c));
  CHECK(l.coeff(-2) == doctest::Approx(-c * c / 2.0));
  CHECK(l.coeff(-3) == doctest::Approx(c * c * c / 3.0));
}

TEST_CASE("exp(log(s)) = s on retained coefficients") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> coef(-0.8, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(10);
    c[0] = 1.5 + 0.5 * coef(rng);  // positive leading coefficient
    for (size_t j = 1; j < c.size(); ++j) c[j] = coef(rng);
    LaurentSeries s(0, c);
    LaurentSeries back = laurent_exp(laurent_log(s));
    for (int p = 0; p >= back.bottom_degree(); --p)
      CHECK(back.coeff(p) == doctest::Approx(s.coeff(p)).epsilon(1e-12));
  }
}

TEST_CASE("inverse: s * inv(s) = 1") {
  LaurentSeries s(2, {3.0, -1.0, 0.5, 0.25, 2.0, -0.7});
  LaurentSeries prod = laurent_mul(s, laurent_inv(s));
  CHECK(prod.top_degree() == 0);
  CHECK(prod.coeff(0) == doctest::Approx(1.0));
  for (int p = -1; p >= prod.bottom_degree(); --p)
    CHECK(prod.coeff(p) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("multiplication window bookkeeping") {
  LaurentSeries a(1, {1.0, 2.0, 3.0});    // window [1, -1]
  LaurentSeries b(0, {1.0, -1.0});        // window [0, -1]
  LaurentSeries c = laurent_mul(a, b);
  CHECK(c.top_degree() == 1);
  CHECK(c.retained() == 2);  // min(3, 2)
  CHECK(c.coeff(1) == doctest::Approx(1.0));
  CHECK(c.coeff(0) == doctest::Approx(1.0));  // 2*1 + 1*(-1)
  CHECK_THROWS_AS(c.coeff(-1), std::out_of_range);
}

TEST_CASE("log requires a positive constant leading term") {
  CHECK_THROWS_AS(laurent_log(LaurentSeries(1, {1.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(laurent_log(LaurentSeries(0, {0.0, 1.0})), std::invalid_argument);
}

TEST_CASE("canonical drops exact leading zeros, keeping the bottom") {
  LaurentSeries s(3, {0.0, 0.0, 5.0, 1.0});
  LaurentSeries c = s.canonical();
  CHECK(c.top_degree() == 1);
  CHECK(c.bottom_degree() == 0);
  CHECK(c.coeff(1) == doctest::Approx(5.0));
}
