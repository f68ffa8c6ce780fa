#include "sumrule/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>

namespace sumrule {

GaussURule gauss_u(int n) {
  if (n < 1) throw std::invalid_argument("gauss_u: need at least one node");
  GaussURule r;
  r.x.resize(static_cast<size_t>(n));
  r.w.resize(static_cast<size_t>(n));
  const double h = std::numbers::pi / (n + 1);
  for (int j = 1; j <= n; ++j) {
    double theta = j * h;
    double s = std::sin(theta);
    r.x[static_cast<size_t>(j - 1)] = 2.0 * std::cos(theta);
    r.w[static_cast<size_t>(j - 1)] = 4.0 * h * s * s;
  }
  return r;
}

namespace {

GaussLegendreRule make_gl(int n) {
  GaussLegendreRule r;
  r.x.resize(static_cast<size_t>(n));
  r.w.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[static_cast<size_t>(i)] = x;
    r.w[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gl(n)).first;
  return it->second;
}

}  // namespace sumrule
