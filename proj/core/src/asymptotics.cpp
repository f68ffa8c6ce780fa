#include "sumrule/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sumrule/parallel.hpp"
#include "sumrule/quadrature.hpp"

namespace sumrule {

LaurentSeries log_Pn_series(const JacobiOperator& J, int n, int K) {
  if (J.side() != Side::half_line)
    throw std::invalid_argument("log_Pn_series: half-line only");
  if (n < 1) throw std::invalid_argument("log_Pn_series: n must be >= 1");
  if (K < 0 || K > 2 * n + 1)
    throw std::invalid_argument("log_Pn_series: identity requires K <= 2n+1");
  std::vector<double> c(static_cast<size_t>(K) + 1, 0.0);
  double logp = 0.0;
  for (long j = 1; j <= n; ++j) logp += std::log(J.p(j));
  c[0] = -logp;
  if (K >= 1) {
    // Once the cut at n sits at least k+1 past the perturbation window, the
    // truncation trace equals the windowed half-line trace exactly; the
    // windowed sum cancels term by term and its error does not grow with n.
    long hi = -1;
    if (auto win = J.rank_window()) hi = win->second;
    std::vector<double> t = trace_tk_upto(J, K);
    FiniteTruncation Jt = FiniteTruncation::of(J, n);
    FiniteTruncation J0t = FiniteTruncation::free_of(n);
    for (int k = 1; k <= K; ++k) {
      double tk = (n >= hi + k + 2) ? t[static_cast<size_t>(k)]
                                    : truncation_trace(Jt, J0t, k);
      c[static_cast<size_t>(k)] = -tk / k;
    }
  }
  return LaurentSeries(0, std::move(c));
}

namespace {

NormalizationPoly polynomial_part(const LaurentSeries& L, const ChebUExpansion& A, int n) {
  // Product A(z) * sqrt(z^2-4) * L, polynomial part of degrees 0..m+1;
  // the remainder starts at 1/z.
  const int m = A.degree();
  const int keep = m + 3;  // powers m+1 .. -1
  LaurentSeries Al = laurent_from_poly(A.to_power(), keep);
  LaurentSeries sq = laurent_sqrt_z2m4(keep);
  LaurentSeries prod = laurent_mul(laurent_mul(Al, sq), L);

  NormalizationPoly out;
  out.n = n;
  std::vector<double> pc(static_cast<size_t>(m) + 2, 0.0);
  for (int k = 0; k <= m + 1; ++k) pc[static_cast<size_t>(k)] = prod.coeff(k);
  out.poly = PowerPoly(std::move(pc));
  out.remainder_z1 = prod.coeff(-1);

  // Matching residual L - poly/(A sqrt): every power >= -(m+1) must cancel.
  LaurentSeries inv = laurent_inv(laurent_mul(Al, sq).canonical());
  LaurentSeries pl = laurent_from_poly(out.poly, keep);
  LaurentSeries resid = laurent_sub(L, laurent_mul(pl, inv));
  out.residual_top_power = resid.bottom_degree() - 1;
  out.residual_top_coeff = 0.0;
  for (int p = resid.top_degree(); p >= resid.bottom_degree(); --p) {
    if (std::abs(resid.coeff(p)) > 1e-10) {
      out.residual_top_power = p;
      out.residual_top_coeff = resid.coeff(p);
      break;
    }
  }
  return out;
}

}  // namespace

NormalizationPoly compute_B_tilde(const JacobiOperator& J, int n, const ChebUExpansion& A) {
  if (A.is_zero()) throw std::invalid_argument("compute_B_tilde: zero weight");
  const int m = A.degree();
  const int K = m + 2;
  if (K > 2 * n + 1)
    throw std::invalid_argument("compute_B_tilde: n too small for the required order");
  return polynomial_part(log_Pn_series(J, n, K), A, n);
}

NormalizationPoly compute_B(const JacobiOperator& J, const ChebUExpansion& A) {
  if (A.is_zero()) throw std::invalid_argument("compute_B: zero weight");
  if (J.side() != Side::half_line) throw std::invalid_argument("compute_B: half-line only");
  const int m = A.degree();
  const int K = m + 2;
  std::vector<double> t = trace_tk_upto(J, K);
  std::vector<double> c(static_cast<size_t>(K) + 1, 0.0);
  c[0] = -t[0];
  for (int k = 1; k <= K; ++k) c[static_cast<size_t>(k)] = -t[static_cast<size_t>(k)] / k;
  return polynomial_part(LaurentSeries(0, std::move(c)), A, 0);
}

double dist_to_band(cdouble z) {
  if (std::abs(z.real()) <= 2.0) return std::abs(z.imag());
  double dx = std::abs(z.real()) - 2.0;
  return std::hypot(dx, z.imag());
}

cdouble D_of(const SpectralData& sd, const ChebUExpansion& A, cdouble z, int nodes) {
  // Distance checks: the Cauchy integral needs z away from the support.
  double d = dist_to_band(z);
  for (double x : sd.eigs().all()) d = std::min(d, std::abs(z - cdouble(x, 0.0)));
  if (d < 1e-6) throw std::domain_error("D_of: z too close to the support of lambda");

  const JacobiOperator& J = sd.op();
  // Inside branch: (1/pi) A(x) log|u(x)| / (x - z) against the sqrt weight.
  GaussURule rule = gauss_u(nodes);
  cdouble acc = 0.0;
  for (size_t j = 0; j < rule.x.size(); ++j) {
    double x = rule.x[j];
    double g = A.eval(x) * 0.5 * std::log(u_boundary_mod2(J, x)) / std::numbers::pi;
    acc += rule.w[j] * g / (x - z);
  }
  // Outside branches: between consecutive eigenvalues the counting function
  // is constant; cosh substitution removes the sqrt singularity at the edge.
  auto segment = [&](double a, double b, double sign) {
    double sa = std::acosh(a / 2.0), sb = std::acosh(b / 2.0);
    auto f = [&](double s) -> cdouble {
      double t = 2.0 * std::cosh(s);
      double sh = std::sinh(s);
      return 4.0 * A.eval(sign * t) * sh * sh / (sign * t - z);
    };
    return integrate_adaptive(f, sa, sb, 1e-10);
  };
  const auto& plus = sd.eigs().plus;
  for (size_t k = 0; k < plus.size(); ++k) {

    double a = (k == 0) ? 2.0 : plus[k - 1];
    // #{y >= x} = plus.size() - k on (a, plus[k])
    acc += static_cast<double>(plus.size() - k) * segment(a, plus[k], 1.0);
  }
  const auto& minus = sd.eigs().minus;  // ascending, all < -2
  for (size_t k = 0; k < minus.size(); ++k) {
    // #{y <= x} = k+1 on (minus[k], next); mirrored via t -> -t
    double next = (k + 1 < minus.size()) ? minus[k + 1] : -2.0;
    acc += static_cast<double>(k + 1) * segment(-next, -minus[k], -1.0);
  }
  return std::exp(acc / (A.eval(z) * sqrt_z2m4(z)));
}

namespace {

// zeta^n P_n(z) via the rescaled recurrence; bounded for z off the band.
// R_k converges geometrically (like zeta^{2k}) past the perturbation window,
// so once the increments drop below double resolution the iteration is cut
// short: the remaining tail is smaller than an ulp and iterating further
// would only accumulate fixed-point re-rounding drift in n.
cdouble scaled_Pn(const JacobiOperator& J, int n, cdouble z, cdouble zt) {
  using cld = std::complex<long double>;
  const cld zl(z.real(), z.imag());
  cld ztl(zt.real(), zt.imag());
  // The free recurrence integrates the defect of zeta^2 - z zeta + 1 = 0
  // linearly in n; refine zeta to extended precision so it stays below an
  // ulp over any desk-scale n.
  for (int it = 0; it < 2; ++it)
    ztl -= (ztl * ztl - zl * ztl + 1.0L) / (2.0L * ztl - zl);
  const long tail = J.free_tail_index();
  cld prev = 0.0;  // zeta^{-1} P_{-1} (unused seed)
  cld cur = 1.0;   // zeta^0 P_0
  int quiet = 0;
  for (int k = 0; k < n; ++k) {
    long double pk = (k >= 1) ? static_cast<long double>(J.p(k)) : 1.0L;
    long double pk1 = static_cast<long double>(J.p(k + 1));
    cld next = (ztl * (zl - static_cast<long double>(J.q(k))) * cur - ztl * ztl * pk * prev) / pk1;
    prev = cur;
    cur = next;
    if (k > tail + 2) {
      quiet = (std::abs(cur - prev) <= 0x1.0p-60L * (std::abs(cur) + std::abs(prev)))
                  ? quiet + 1
                  : 0;
      if (quiet >= 2) break;
    }
  }
  return {static_cast<double>(cur.real()), static_cast<double>(cur.imag())};
}

}  // namespace

cdouble normalized_Pn_with(const JacobiOperator& J, int n, const NormalizationPoly& Bt,
                           const ChebUExpansion& A, cdouble z) {
  cdouble zt = zeta_map(z);
  cdouble w = sqrt_z2m4(z);
  cdouble Az = A.eval(z);
  if (std::abs(Az) < 1e-9)
    throw std::domain_error("normalized_Pn: z too close to a zero of the weight");
  cdouble base = zt * w * scaled_Pn(J, n, z, zt);
  return base * std::exp(-Bt.poly.eval(z) / (Az * w));
}

cdouble normalized_Pn(const JacobiOperator& J, int n, const ChebUExpansion& A, cdouble z) {
  return normalized_Pn_with(J, n, compute_B_tilde(J, n, A), A, z);
}

std::vector<cdouble> probe_grid(double dist_min, double rmax, double step) {
  if (!(dist_min >= 0.1))
    throw std::invalid_argument("probe_grid: grid must stay at least 0.1 away from [-2,2]");
  if (!(step > 0.0) || !(rmax > 0.0)) throw std::invalid_argument("probe_grid: bad geometry");
  std::vector<cdouble> g;
  for (double x = -rmax; x <= rmax + 1e-12; x += step) {
    for (double y = -rmax; y <= rmax + 1e-12; y += step) {
      cdouble z(x, y);
      if (std::abs(z) <= rmax && dist_to_band(z) >= dist_min) g.push_back(z);
    }
  }
  return g;
}

ConvergenceTable convergence_experiment(const JacobiOperator& J, const ChebUExpansion& A,
                                        int n_min, int n_max, int stride,
                                        const std::vector<cdouble>& grid, int nodes,
                                        int jobs) {
  if (n_min < 1 || n_max < n_min || stride < 1)
    throw std::invalid_argument("convergence_experiment: bad n range");
  ConvergenceTable table;
  table.grid = grid;
  SpectralData sd = SpectralData::build(J);
  std::vector<cdouble> target(grid.size());
  parallel_for(static_cast<int>(grid.size()), jobs, [&](int j) {
    target[static_cast<size_t>(j)] = D_of(sd, A, grid[static_cast<size_t>(j)], nodes);
  });

  std::vector<int> ns;
  for (int n = n_min; n <= n_max; n += stride) ns.push_back(n);
  table.rows.resize(ns.size());
  table.errors.assign(ns.size(), std::vector<double>(grid.size(), 0.0));
  parallel_for(static_cast<int>(ns.size()), jobs, [&](int r) {
    int n = ns[static_cast<size_t>(r)];
    NormalizationPoly Bt = compute_B_tilde(J, n, A);
    double sup = 0.0;
    for (size_t j = 0; j < grid.size(); ++j) {
      double e = std::abs(normalized_Pn_with(J, n, Bt, A, grid[j]) - target[j]);
      table.errors[static_cast<size_t>(r)][j] = e;
      sup = std::max(sup, e);
    }
    table.rows[static_cast<size_t>(r)] = {n, sup};
  });
  return table;
}

}  // namespace sumrule
