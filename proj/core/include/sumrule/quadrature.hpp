#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sumrule {

// Nodes/weights for int_{-2}^{2} f(x) sqrt(4-x^2) dx ~ sum w_j f(x_j),
// x_j = 2 cos(j pi / (n+1)).  Exact for polynomial f of degree <= 2n-1.
struct GaussURule {
  std::vector<double> x;
  std::vector<double> w;
};
GaussURule gauss_u(int n);

// Gauss-Legendre on [-1,1]; cached per order.
struct GaussLegendreRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussLegendreRule& gauss_legendre(int n);

template <typename F>
auto integrate_gl(F&& f, double a, double b, int n) {
  const GaussLegendreRule& r = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto acc = f(mid) * 0.0;
  for (size_t j = 0; j < r.x.size(); ++j) acc += r.w[j] * f(mid + half * r.x[j]);
  return acc * half;
}

namespace detail {

template <typename F, typename V>
V adaptive_gl_rec(F& f, double a, double b, V whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  V left = integrate_gl(f, a, mid, 15);
  V right = integrate_gl(f, mid, b, 15);
  if (std::abs(left + right - whole) <= tol || depth >= 48) return left + right;
  return adaptive_gl_rec(f, a, mid, left, 0.5 * tol, depth + 1) +
         adaptive_gl_rec(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive Gauss-Legendre bisection; tol is an absolute tolerance.
template <typename F>
auto integrate_adaptive(F&& f, double a, double b, double tol) {
  auto whole = integrate_gl(f, a, b, 15);
  return detail::adaptive_gl_rec(f, a, b, whole, tol, 0);
}

}  // namespace sumrule
