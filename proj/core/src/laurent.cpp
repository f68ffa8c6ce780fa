#include "sumrule/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sumrule {

LaurentSeries::LaurentSeries(int top, std::vector<double> coeffs)
    : top_(top), c_(std::move(coeffs)) {
  if (c_.empty()) throw std::invalid_argument("LaurentSeries: empty coefficient window");
}

double LaurentSeries::coeff(int power) const {
  if (power > top_) return 0.0;
  int j = top_ - power;
  if (j >= retained())
    throw std::out_of_range("LaurentSeries::coeff: power below retained window");
  return c_[static_cast<size_t>(j)];
}

LaurentSeries LaurentSeries::canonical(double tol) const {
  size_t lead = 0;
  while (lead + 1 < c_.size() && std::abs(c_[lead]) <= tol) ++lead;
  return LaurentSeries(top_ - static_cast<int>(lead),
                       std::vector<double>(c_.begin() + static_cast<long>(lead), c_.end()));
}

cdouble LaurentSeries::eval(cdouble z) const {
  cdouble acc = 0.0;
  // Horner in 1/z from the bottom of the window up.
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc / z + *it;
  return acc * std::pow(z, static_cast<double>(top_));
}

LaurentSeries laurent_add(const LaurentSeries& a, const LaurentSeries& b) {
  int top = std::max(a.top_degree(), b.top_degree());
  int bottom = std::max(a.bottom_degree(), b.bottom_degree());
  if (bottom > top) throw std::invalid_argument("laurent_add: windows do not overlap");
  std::vector<double> c(static_cast<size_t>(top - bottom + 1), 0.0);
  for (int p = top; p >= bottom; --p)
    c[static_cast<size_t>(top - p)] = a.coeff(p) + b.coeff(p);
  return LaurentSeries(top, std::move(c));
}

LaurentSeries laurent_sub(const LaurentSeries& a, const LaurentSeries& b) {
  return laurent_add(a, laurent_scale(b, -1.0));
}

LaurentSeries laurent_scale(const LaurentSeries& a, double s) {
  std::vector<double> c = a.raw();
  for (double& v : c) v *= s;
  return LaurentSeries(a.top_degree(), std::move(c));
}

LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b) {
  int top = a.top_degree() + b.top_degree();
  // c_p is exact iff every contributing coefficient is inside a window:
  // p >= bottom(a)+top(b) and p >= bottom(b)+top(a).
  int bottom = std::max(a.bottom_degree() + b.top_degree(),
                        b.bottom_degree() + a.top_degree());
  if (bottom > top) throw std::invalid_argument("laurent_mul: no exact coefficients");
  std::vector<double> c(static_cast<size_t>(top - bottom + 1), 0.0);
  for (int i = a.top_degree(); i >= a.bottom_degree(); --i) {
    double ai = a.coeff(i);
    if (ai == 0.0) continue;
    for (int j = b.top_degree(); j >= b.bottom_degree(); --j) {
      int p = i + j;
      if (p < bottom) break;
      c[static_cast<size_t>(top - p)] += ai * b.coeff(j);
    }
  }
  return LaurentSeries(top, std::move(c));
}

LaurentSeries laurent_log(const LaurentSeries& s) {
  if (s.top_degree() != 0)
    throw std::invalid_argument("laurent_log: series must have top degree 0");
  double s0 = s.coeff(0);
  if (!(s0 > 0.0))
    throw std::invalid_argument("laurent_log: leading coefficient must be positive");
  int K = s.retained();
  std::vector<double> sh(static_cast<size_t>(K));
  for (int j = 0; j < K; ++j) sh[static_cast<size_t>(j)] = s.coeff(-j) / s0;
  std::vector<double> l(static_cast<size_t>(K), 0.0);
  l[0] = std::log(s0);
  for (int n = 1; n < K; ++n) {
    double acc = sh[static_cast<size_t>(n)];
    for (int j = 1; j < n; ++j)
      acc -= (static_cast<double>(n - j) / n) * sh[static_cast<size_t>(j)] *
             l[static_cast<size_t>(n - j)];
    l[static_cast<size_t>(n)] = acc;
  }
  return LaurentSeries(0, std::move(l));
}

LaurentSeries laurent_exp(const LaurentSeries& s) {
  if (s.top_degree() > 0)
    throw std::invalid_argument("laurent_exp: series must have top degree <= 0");
  int K = 1 - s.bottom_degree();
  std::vector<double> u(static_cast<size_t>(K), 0.0);
  for (int j = 0; j < K; ++j) u[static_cast<size_t>(j)] = s.coeff(-j);
  std::vector<double> e(static_cast<size_t>(K), 0.0);
  e[0] = std::exp(u[0]);
  for (int n = 1; n < K; ++n) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k)
      acc += static_cast<double>(k) * u[static_cast<size_t>(k)] * e[static_cast<size_t>(n - k)];
    e[static_cast<size_t>(n)] = acc / n;
  }
  return LaurentSeries(0, std::move(e));
}

LaurentSeries laurent_inv(const LaurentSeries& s) {
  double lead = s.raw().front();
  if (lead == 0.0)
    throw std::invalid_argument("laurent_inv: zero leading coefficient (canonicalize first)");
  int K = s.retained();
  std::vector<double> r(static_cast<size_t>(K), 0.0);
  r[0] = 1.0 / lead;
  for (int n = 1; n < K; ++n) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k)
      acc += s.raw()[static_cast<size_t>(k)] * r[static_cast<size_t>(n - k)];
    r[static_cast<size_t>(n)] = -acc / lead;
  }
  return LaurentSeries(-s.top_degree(), std::move(r));
}

LaurentSeries laurent_sqrt_z2m4(int K) {
  if (K < 1) throw std::invalid_argument("laurent_sqrt_z2m4: K must be >= 1");
  std::vector<double> c(static_cast<size_t>(K), 0.0);
  // binomial(1/2, j) (-4)^j at power 1 - 2j
  double term = 1.0;
  for (int j = 0; 1 - 2 * j > 1 - K; ++j) {
    c[static_cast<size_t>(2 * j)] = term;
    term *= -4.0 * (1.5 - (j + 1)) / (j + 1);
  }
  return LaurentSeries(1, std::move(c));
}

LaurentSeries laurent_zeta(int K) {
  if (K < 1) throw std::invalid_argument("laurent_zeta: K must be >= 1");
  std::vector<double> c(static_cast<size_t>(K), 0.0);
  double catalan = 1.0;
  for (int j = 0; 2 * j < K; ++j) {
    c[static_cast<size_t>(2 * j)] = catalan;  // power -1 - 2j
    catalan *= 2.0 * (2 * j + 1) / (j + 2);
  }
  return LaurentSeries(-1, std::move(c));
}

LaurentSeries laurent_from_poly(const PowerPoly& p, int K) {
  if (p.is_zero()) return LaurentSeries(0, std::vector<double>(static_cast<size_t>(K), 0.0));
  int d = p.degree();
  std::vector<double> c(static_cast<size_t>(K), 0.0);
  for (int k = 0; k <= d && k < K; ++k) c[static_cast<size_t>(k)] = p.coeff(d - k);
  return LaurentSeries(d, std::move(c));
}

}  // namespace sumrule
