#include "sumrule/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sumrule/quadrature.hpp"

namespace sumrule {

namespace {

bool on_cut(cdouble z) { return z.imag() == 0.0 && std::abs(z.real()) <= 2.0; }

}  // namespace

cdouble sqrt_z2m4(cdouble z) {
  // Principal-branch product sqrt(z-2) sqrt(z+2): cut exactly on [-2,2],
  // asymptotic to z at infinity.
  return std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
}

cdouble zeta_map(cdouble z) {
  if (on_cut(z)) throw std::domain_error("zeta_map: z on [-2,2]; use zeta_boundary");
  // Small root of zeta^2 - z zeta + 1 = 0 without cancellation.
  return 2.0 / (z + sqrt_z2m4(z));
}

double zeta_real(double x) {
  if (std::abs(x) <= 2.0) throw std::domain_error("zeta_real: |x| must exceed 2");
  double t = std::acosh(std::abs(x) / 2.0);
  double v = std::exp(-t);
  return x > 0 ? v : -v;
}

cdouble zeta_boundary(double x) {
  if (!(x > -2.0 && x < 2.0)) throw std::domain_error("zeta_boundary: x must be in (-2,2)");
  double theta = std::acos(x / 2.0);
  return {std::cos(theta), -std::sin(theta)};
}

cdouble zeta_deriv(cdouble z) { return -zeta_map(z) / sqrt_z2m4(z); }

OrthoPolys eval_PQ(const JacobiOperator& J, int n, cdouble z) {
  if (n < 0) throw std::invalid_argument("eval_PQ: n must be >= 0");
  OrthoPolys out;
  out.P.resize(static_cast<size_t>(n) + 1);
  out.Q.resize(static_cast<size_t>(n) + 1);
  out.P[0] = 1.0;
  out.Q[0] = 0.0;
  if (n == 0) return out;
  out.P[1] = (z - J.q(0)) / J.p(1);
  out.Q[1] = 1.0 / J.p(1);
  for (int k = 1; k < n; ++k) {
    cdouble zk = z - J.q(k);
    double pk = J.p(k), pk1 = J.p(k + 1);
    out.P[static_cast<size_t>(k) + 1] =
        (zk * out.P[static_cast<size_t>(k)] - pk * out.P[static_cast<size_t>(k) - 1]) / pk1;
    out.Q[static_cast<size_t>(k) + 1] =
        (zk * out.Q[static_cast<size_t>(k)] - pk * out.Q[static_cast<size_t>(k) - 1]) / pk1;
  }
  return out;
}

OrthoPolysReal eval_PQ_deriv(const JacobiOperator& J, int n, double x) {
  OrthoPolysReal out;
  out.P.assign(static_cast<size_t>(n) + 1, 0.0);
  out.dP = out.Q = out.dQ = out.P;
  out.P[0] = 1.0;
  if (n == 0) return out;
  out.P[1] = (x - J.q(0)) / J.p(1);
  out.dP[1] = 1.0 / J.p(1);
  out.Q[1] = 1.0 / J.p(1);
  for (int k = 1; k < n; ++k) {
    double zk = x - J.q(k);
    double pk = J.p(k), pk1 = J.p(k + 1);
    size_t i = static_cast<size_t>(k);
    out.P[i + 1] = (zk * out.P[i] - pk * out.P[i - 1]) / pk1;
    out.dP[i + 1] = (zk * out.dP[i] + out.P[i] - pk * out.dP[i - 1]) / pk1;
    out.Q[i + 1] = (zk * out.Q[i] - pk * out.Q[i - 1]) / pk1;
    out.dQ[i + 1] = (zk * out.dQ[i] + out.Q[i] - pk * out.dQ[i - 1]) / pk1;
  }
  return out;
}

cdouble u_function(const JacobiOperator& J, cdouble z) {
  long n = J.free_tail_index();
  OrthoPolys pq = eval_PQ(J, static_cast<int>(n), z);
  return J.p(n) * pq.P[static_cast<size_t>(n)] -
         zeta_map(z) * pq.P[static_cast<size_t>(n) - 1];
}

double u_function_real(const JacobiOperator& J, double x) {
  long n = J.free_tail_index();
  OrthoPolysReal pq = eval_PQ_deriv(J, static_cast<int>(n), x);
  return J.p(n) * pq.P[static_cast<size_t>(n)] - zeta_real(x) * pq.P[static_cast<size_t>(n) - 1];
}

double u_boundary_mod2(const JacobiOperator& J, double x) {
  long n = J.free_tail_index();
  OrthoPolysReal pq = eval_PQ_deriv(J, static_cast<int>(n), x);
  double theta = std::acos(x / 2.0);
  double a = J.p(n) * pq.P[static_cast<size_t>(n)] -
             std::cos(theta) * pq.P[static_cast<size_t>(n) - 1];
  double b = std::sin(theta) * pq.P[static_cast<size_t>(n) - 1];
  return a * a + b * b;
}

cdouble resolvent_rn(const JacobiOperator& J, cdouble z) {
  long n = J.free_tail_index();
  OrthoPolys pq = eval_PQ(J, static_cast<int>(n), z);
  cdouble zt = zeta_map(z);
  cdouble den = J.p(n) * pq.P[static_cast<size_t>(n)] - zt * pq.P[static_cast<size_t>(n) - 1];
  cdouble num = J.p(n) * pq.Q[static_cast<size_t>(n)] - zt * pq.Q[static_cast<size_t>(n) - 1];
  if (std::abs(den) < 1e-13 * (1.0 + std::abs(num)))
    throw std::domain_error("resolvent_rn: z is at (or near) a pole");
  return -num / den;
}

double ac_density(const JacobiOperator& J, double x) {
  if (!(x > -2.0 && x < 2.0)) throw std::domain_error("ac_density: x must be inside (-2,2)");
  double theta = std::acos(x / 2.0);
  return std::sin(theta) / (std::numbers::pi * u_boundary_mod2(J, x));
}

std::vector<double> OutsideEigs::all() const {
  std::vector<double> v = minus;
  v.insert(v.end(), plus.begin(), plus.end());
  return v;
}

namespace {

// Roots of f on (a, b) by sign scan + bisection; f assumed continuous with
// simple zeros.  Newton polish via df when available.
std::vector<double> scan_roots(const std::function<double(double)>& f, double a, double b,
                               double step) {
  std::vector<double> roots;
  if (!(b > a)) return roots;
  int cells = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
  double fa = f(a);
  for (int c = 0; c < cells; ++c) {
    double x1 = (c + 1 == cells) ? b : a + (b - a) * (c + 1) / cells;
    double f1 = f(x1);
    if (fa == 0.0) roots.push_back(a + (b - a) * c / cells);
    else if (fa * f1 < 0.0) {
      double lo = a + (b - a) * c / cells, hi = x1, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if (flo * fm < 0.0) hi = mid;
        else { lo = mid; flo = fm; }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    fa = f1;
  }
  return roots;
}

}  // namespace

OutsideEigs eigenvalues_outside(const JacobiOperator& J) {
  OutsideEigs out;
  if (J.is_free()) return out;
  const double R = gershgorin_radius(J) + 1e-9;
  auto f = [&J](double x) { return u_function_real(J, x); };

  auto stable_scan = [&](double a, double b) {
    std::vector<double> prev, cur;
    int stable = 0;
    double step = 0.01;
    for (int round = 0; round < 14; ++round) {
      cur = scan_roots(f, a, b, step);
      if (round > 0 && cur.size() == prev.size()) {
        if (++stable >= 2) break;
      } else {
        stable = 0;
      }
      prev = cur;
      step *= 0.5;
    }
    return cur;
  };

  // Zeros can sit arbitrarily close to the band edge; offset by the bisection
  // tolerance only.
  out.plus = stable_scan(2.0 + 1e-12, R);
  out.minus = stable_scan(-R, -2.0 - 1e-12);
  return out;
}

std::vector<double> point_mass_weights(const JacobiOperator& J, const std::vector<double>& eigs) {
  std::vector<double> w;
  w.reserve(eigs.size());
  long n = J.free_tail_index();
  for (double x : eigs) {
    OrthoPolysReal pq = eval_PQ_deriv(J, static_cast<int>(n), x);
    size_t ni = static_cast<size_t>(n);
    double zt = zeta_real(x);
    // sign(x) sqrt(x^2-4), factored form to stay accurate near the edges
    double sq = (x > 0 ? 1.0 : -1.0) * std::sqrt(std::abs(x) - 2.0) * std::sqrt(std::abs(x) + 2.0);
    double dzt = -zt / sq;
    double num = J.p(n) * pq.Q[ni] - zt * pq.Q[ni - 1];
    double du = J.p(n) * pq.dP[ni] - dzt * pq.P[ni - 1] - zt * pq.dP[ni - 1];
    if (std::abs(du) < 1e-8)
      throw std::runtime_error("point_mass_weights: |u'| too small (near-double zero?)");
    double wk = num / du;
    if (!(wk > 0.0)) throw std::runtime_error("point_mass_weights: non-positive weight");
    w.push_back(wk);
  }
  return w;
}

cdouble delta_direct(const JacobiOperator& J, cdouble z) {
  long n = J.free_tail_index();
  return u_function(J, z) * std::pow(zeta_map(z), static_cast<double>(n));
}

DeltaTraces delta_via_traces(const JacobiOperator& J, cdouble z, int K) {
  if (K < 1) throw std::invalid_argument("delta_via_traces: K must be >= 1");
  const double R = gershgorin_radius(J);
  if (!(std::abs(z) > R))
    throw std::domain_error("delta_via_traces: |z| must exceed the Gershgorin radius");
  std::vector<double> t = trace_tk_upto(J, K);
  cdouble acc = -t[0];
  cdouble zinv = 1.0 / z, zp = 1.0;
  for (int k = 1; k <= K; ++k) {
    zp *= zinv;
    acc -= t[static_cast<size_t>(k)] / static_cast<double>(k) * zp;
  }
  DeltaTraces out;
  out.log_value = acc;
  out.value = std::exp(acc);
  long wsize = 2;
  if (auto win = J.rank_window()) wsize = win->second - win->first + 1;
  double rho = R / std::abs(z);
  out.truncation_bound = 2.0 * static_cast<double>(wsize + 2 * K + 4) *
                         std::pow(rho, K + 1) / ((K + 1) * (1.0 - rho));
  return out;
}

SpectralData::SpectralData(JacobiOperator J, long n, OutsideEigs e, std::vector<double> wm,
                           std::vector<double> wp)
    : J_(std::move(J)), n_(n), eigs_(std::move(e)), w_minus_(std::move(wm)),
      w_plus_(std::move(wp)) {}

SpectralData SpectralData::build(const JacobiOperator& J) {
  if (J.side() != Side::half_line)
    throw std::invalid_argument("SpectralData: half-line operators only");
  OutsideEigs e = eigenvalues_outside(J);
  // Construction check: every reported eigenvalue solves the eigenvalue
  // equation tightly.
  for (double x : e.all())
    if (std::abs(u_function_real(J, x)) > 1e-10)
      throw std::runtime_error("SpectralData: eigenvalue fails |u| <= 1e-10");
  std::vector<double> wm = point_mass_weights(J, e.minus);
  std::vector<double> wp = point_mass_weights(J, e.plus);
  return SpectralData(J, J.free_tail_index(), std::move(e), std::move(wm), std::move(wp));
}

double SpectralData::weight_sum() const {
  double s = 0.0;
  for (double w : w_minus_) s += w;
  for (double w : w_plus_) s += w;
  return s;
}

double SpectralData::ac_mass(int nodes) const {
  // int sigma'_{a.c.} dx with the sqrt(4-x^2) weight folded into the rule:
  // sigma' = (1/2pi) sqrt(4-x^2) / |u(x+i0)|^2.
  GaussURule rule = gauss_u(nodes);
  double acc = 0.0;
  for (size_t j = 0; j < rule.x.size(); ++j)
    acc += rule.w[j] / (2.0 * std::numbers::pi * u_boundary_mod2(J_, rule.x[j]));
  return acc;
}

double SpectralData::total_mass(int nodes) const { return weight_sum() + ac_mass(nodes); }

double SpectralData::moment(int order, int nodes) const {
  GaussURule rule = gauss_u(nodes);
  double acc = 0.0;
  for (size_t j = 0; j < rule.x.size(); ++j) {
    double x = rule.x[j];
    acc += rule.w[j] * std::pow(x, order) / (2.0 * std::numbers::pi * u_boundary_mod2(J_, x));
  }
  for (size_t k = 0; k < eigs_.minus.size(); ++k)
    acc += w_minus_[k] * std::pow(eigs_.minus[k], order);
  for (size_t k = 0; k < eigs_.plus.size(); ++k)
    acc += w_plus_[k] * std::pow(eigs_.plus[k], order);
  return acc;
}

}  // namespace sumrule
