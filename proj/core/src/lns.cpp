#include "sumrule/lns.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace sumrule {

double DiagSeq::at(long i) const {
  auto it = over_.find(i);
  return it == over_.end() ? free_ : it->second;
}

void DiagSeq::set(long i, double v) { over_[i] = v; }

DiagSeq DiagSeq::shifted(long s) const {
  DiagSeq out(free_);
  for (auto& [i, v] : over_) out.over_[i + s] = v;
  return out;
}

double DiagSeq::deviation_sum() const {
  double acc = 0.0;
  for (auto& [i, v] : over_) {
    (void)i;
    acc += v - free_;
  }
  return acc;
}

double DiagSeq::deviation_sum_squares() const {
  double acc = 0.0;
  for (auto& [i, v] : over_) {
    (void)i;
    acc += v * v - free_ * free_;
  }
  return acc;
}

namespace {

template <typename Op>
DiagSeq pointwise(const DiagSeq& a, const DiagSeq& b, Op op) {
  DiagSeq out(op(a.free_value(), b.free_value()));
  std::set<long> keys;
  for (auto& [i, v] : a.overrides()) { (void)v; keys.insert(i); }
  for (auto& [i, v] : b.overrides()) { (void)v; keys.insert(i); }
  for (long i : keys) out.set(i, op(a.at(i), b.at(i)));
  return out;
}

}  // namespace

DiagSeq operator*(const DiagSeq& a, const DiagSeq& b) {
  return pointwise(a, b, [](double x, double y) { return x * y; });
}
DiagSeq operator+(const DiagSeq& a, const DiagSeq& b) {
  return pointwise(a, b, [](double x, double y) { return x + y; });
}
DiagSeq operator-(const DiagSeq& a, const DiagSeq& b) {
  return pointwise(a, b, [](double x, double y) { return x - y; });
}

DiagSeq& DiagSeq::operator*=(double s) {
  free_ *= s;
  for (auto& [i, v] : over_) {
    (void)i;
    v *= s;
  }
  return *this;
}

const DiagSeq BandDecomposition::zero_{};

const DiagSeq& BandDecomposition::band(int k) const {
  auto it = bands_.find(k);
  return it == bands_.end() ? zero_ : it->second;
}

namespace {

DiagSeq p_seq(const JacobiOperator& J) {
  DiagSeq s(1.0);
  for (auto& [i, v] : J.p_overrides()) s.set(i, v);
  return s;
}

DiagSeq q_seq(const JacobiOperator& J) {
  DiagSeq s(0.0);
  for (auto& [i, v] : J.q_overrides()) s.set(i, v);
  return s;
}

}  // namespace

BandDecomposition T_of_J(const JacobiOperator& J, int l) {
  if (J.side() != Side::whole_line) throw std::invalid_argument("T_of_J: whole-line only");
  if (l < 0) throw std::invalid_argument("T_of_J: order must be >= 0");
  const DiagSeq P = p_seq(J), Q = q_seq(J);
  const DiagSeq Pup = P.shifted(-1);  // p_{i+1}

  std::map<int, DiagSeq> prev;  // T_0 = 2I
  prev.emplace(0, DiagSeq(2.0));
  if (l == 0) return BandDecomposition(0, std::move(prev));

  std::map<int, DiagSeq> cur;  // T_1 = J
  cur.emplace(-1, Pup);
  cur.emplace(0, Q);
  cur.emplace(1, P);

  for (int order = 2; order <= l; ++order) {
    std::map<int, DiagSeq> next;
    auto get = [](const std::map<int, DiagSeq>& m, int k) -> DiagSeq {
      auto it = m.find(k);
      return it == m.end() ? DiagSeq() : it->second;
    };
    for (int k = -order; k <= order; ++k) {
      // (P^{(1)} S^{-1} + Q + P S) applied to band k of T_{order-1}.
      DiagSeq acc = Pup * get(cur, k + 1).shifted(-1);
      acc = acc + Q * get(cur, k);
      acc = acc + P * get(cur, k - 1).shifted(1);
      acc = acc - get(prev, k);
      next.emplace(k, std::move(acc));
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return BandDecomposition(l, std::move(cur));
}

ClosedBands band_closed_forms(const JacobiOperator& J, int l) {
  if (J.side() != Side::whole_line)
    throw std::invalid_argument("band_closed_forms: whole-line only");
  if (l < 2) throw std::invalid_argument("band_closed_forms: need l >= 2");
  long lo = 0, hi = 0;
  if (auto win = J.rank_window()) {
    lo = win->first;
    hi = win->second;
  }
  ClosedBands out{DiagSeq(1.0), DiagSeq(0.0), DiagSeq(0.0)};
  for (long i = lo - l - 2; i <= hi + l + 2; ++i) {
    double ptop = 1.0;
    for (int j = 0; j <= l - 1; ++j) ptop *= J.p(i - j);
    out.top.set(i, ptop);

    double pfx = 1.0;
    for (int j = 0; j <= l - 2; ++j) pfx *= J.p(i - j);
    double qsum = 0.0;
    for (int j = 0; j <= l - 1; ++j) qsum += J.q(i - j);
    out.second.set(i, pfx * qsum);

    double pfx2 = 1.0;
    for (int j = 0; j <= l - 3; ++j) pfx2 *= J.p(i - j);
    double bracket = 0.0;
    for (int j = -1; j <= l - 2; ++j) bracket += J.p(i - j) * J.p(i - j) - 1.0;
    for (int a = 0; a <= l - 2; ++a)
      for (int b = a; b <= l - 2; ++b) bracket += J.q(i - a) * J.q(i - b);
    out.third.set(i, pfx2 * bracket);
  }
  return out;
}

std::vector<double> a_k_upto(const JacobiOperator& J, int kmax) {
  if (J.side() != Side::whole_line) throw std::invalid_argument("a_k_upto: whole-line only");
  std::vector<double> a(static_cast<size_t>(kmax) + 1, 0.0);
  for (auto& [i, p] : J.p_overrides()) {
    (void)i;
    a[0] += 2.0 * std::log(p);
  }
  for (int k = 1; k <= kmax; ++k)
    a[static_cast<size_t>(k)] = T_of_J(J, k).band(0).deviation_sum() / k;
  return a;
}

double a_k_of(const JacobiOperator& J, int k) {
  if (k < 0) throw std::invalid_argument("a_k_of: k must be >= 0");
  return a_k_upto(J, k).back();
}

PsdResult hankel_toeplitz_psd(const JacobiOperator& J, int K) {
  if (K < 1 || K > 12) throw std::invalid_argument("hankel_toeplitz_psd: K in 1..12");
  std::vector<double> a = a_k_upto(J, 2 * K);
  PsdResult res;
  res.matrix.assign(static_cast<size_t>(K), std::vector<double>(static_cast<size_t>(K), 0.0));
  for (int k = 1; k <= K; ++k)
    for (int l = 1; l <= K; ++l)
      res.matrix[static_cast<size_t>(k - 1)][static_cast<size_t>(l - 1)] =
          a[static_cast<size_t>(k + l)] - a[static_cast<size_t>(std::abs(k - l))];
  std::vector<double> eigs = symmetric_eigenvalues(res.matrix);
  res.min_eigenvalue = eigs.front();
  return res;
}

double H_chebyshev(const JacobiOperator& J, int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("H_chebyshev: indices must be >= 1");
  std::vector<double> a = a_k_upto(J, m + n);
  return a[static_cast<size_t>(m + n)] - a[static_cast<size_t>(std::abs(m - n))];
}

HsIdentity hs_identity_check(const JacobiOperator& J, int l) {
  if (l < 1) throw std::invalid_argument("hs_identity_check: l must be >= 1");
  HsIdentity out;
  out.lhs = H_chebyshev(J, l, l);

  BandDecomposition T = T_of_J(J, l);
  // (t_l)_i = p_{i+1}...p_{i+l} is the lowest band of T_l.
  const DiagSeq& tl = T.band(-l);
  double acc = 0.0;
  for (auto& [i, v] : tl.overrides()) {
    (void)i;
    acc += v * v - 1.0 - std::log(v * v);
  }
  // Middle block of row i: Lambda_k(l)_i for |k| <= l-1; zero at the free
  // operator, so the deviation sums are the full sums.
  double qnorm = 0.0;
  for (int k = -(l - 1); k <= l - 1; ++k) qnorm += T.band(k).deviation_sum_squares();
  out.rhs = (qnorm / 2.0 + acc) / l;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

L2Report l2_condition_report(const JacobiOperator& J, int n) {
  if (J.side() != Side::whole_line)
    throw std::invalid_argument("l2_condition_report: whole-line only");
  if (n < 1) throw std::invalid_argument("l2_condition_report: n must be >= 1");
  L2Report rep;
  long lo = 0, hi = 0;
  if (auto win = J.rank_window()) {
    lo = win->first;
    hi = win->second;
  } else {
    return rep;
  }
  for (long j = lo - n - 1; j <= hi + 1; ++j) {
    double su = 0.0, sq = 0.0;
    for (int k = 1; k <= n; ++k) {
      double p = J.p(j + k);
      su += p * p - 1.0;
      sq += J.q(j + k);
    }
    rep.window_u += su * su;
    rep.window_q += sq * sq;
  }
  for (long j = lo - 1; j <= hi + 1; ++j) {
    double u = J.p(j) * J.p(j) - 1.0;
    double q = J.q(j);
    rep.u_sq += u * u * u * u;
    rep.q_sq += q * q * q * q;
  }
  return rep;
}

std::map<long, double> PerturbationDirection::dj_vector() const {
  std::map<long, double> dj;
  for (auto& [i, v] : dp)
    if (v != 0.0) dj[2 * i] = 2.0 * v;
  for (auto& [i, v] : dq)
    if (v != 0.0) dj[2 * i + 1] = v;
  return dj;
}

JacobiOperator PerturbationDirection::applied(double eps) const {
  std::map<long, double> p, q;
  for (auto& [i, v] : dp) p[i] = 1.0 + eps * v;
  for (auto& [i, v] : dq) q[i] = eps * v;
  return JacobiOperator::make(Side::whole_line, std::move(p), std::move(q));
}

std::map<long, double> dT_linearization(const PerturbationDirection& dJ, int l) {
  if (l < 1) throw std::invalid_argument("dT_linearization: l must be >= 1");
  auto dp_at = [&](long i) {
    auto it = dJ.dp.find(i);
    return it == dJ.dp.end() ? 0.0 : it->second;
  };
  auto dq_at = [&](long i) {
    auto it = dJ.dq.find(i);
    return it == dJ.dq.end() ? 0.0 : it->second;
  };
  std::map<long, double> v;
  // dp entries at even offsets 2j-l (coefficient 1 at the band ends, else 2),
  // dq entries at odd offsets 2j-l+1; windows of length l.
  for (int j = 0; j <= l; ++j) {
    double sum = 0.0;
    for (long i = j - l + 1; i <= j; ++i) sum += dp_at(i);
    double c = (j == 0 || j == l) ? 1.0 : 2.0;
    v[2 * j - l] = c * sum;
  }
  for (int j = 0; j <= l - 1; ++j) {
    double sum = 0.0;
    for (long i = j - l + 1; i <= j; ++i) sum += dq_at(i);
    v[2 * j - l + 1] = sum;
  }
  return v;
}

double quadratic_form(const ChebUExpansion& A, const PerturbationDirection& dJ) {
  // Coefficients of A(S + S^{-1}): U_l contributes 1 at shifts l-1, l-3, ...
  std::map<long, double> alpha;
  for (int l = 1; l <= A.max_index(); ++l) {
    double c = A.coeff(l);
    if (c == 0.0) continue;
    for (int j = 0; j < l; ++j) alpha[l - 1 - 2 * j] += c;
  }
  std::map<long, double> dj = dJ.dj_vector();
  double acc = 0.0;
  for (auto& [t, vt] : dj)
    for (auto& [s, a] : alpha) {
      auto it = dj.find(t - s);
      if (it != dj.end()) acc += a * vt * it->second;
    }
  return 0.5 * acc;
}

R2Report r2_condition_report(const PerturbationDirection& dJ, int l) {
  if (l < 1) throw std::invalid_argument("r2_condition_report: l must be >= 1");
  R2Report rep;
  long lo = 0, hi = 0;
  bool any = false;
  for (auto& m : {dJ.dp, dJ.dq})
    for (auto& [i, v] : m) {
      (void)v;
      lo = any ? std::min(lo, i) : i;
      hi = any ? std::max(hi, i) : i;
      any = true;
    }
  if (!any) return rep;
  auto dp_at = [&](long i) {
    auto it = dJ.dp.find(i);
    return it == dJ.dp.end() ? 0.0 : it->second;
  };
  auto dq_at = [&](long i) {
    auto it = dJ.dq.find(i);
    return it == dJ.dq.end() ? 0.0 : it->second;
  };
  for (long i = lo - l - 1; i <= hi + 1; ++i) {
    double sq = 0.0, sp = 0.0;
    for (int k = 1; k <= l; ++k) {
      sq += dq_at(i + k);
      sp += 2.0 * dp_at(i + k);
    }
    rep.dq_norm += sq * sq;
    rep.dp_norm += sp * sp;
  }
  return rep;
}

std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> M) {
  const size_t n = M.size();
  for (auto& row : M)
    if (row.size() != n) throw std::invalid_argument("symmetric_eigenvalues: not square");
  // Cyclic Jacobi rotations.
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) off += M[i][j] * M[i][j];
    double scale = 0.0;
    for (size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(M[i][i]));
    if (off <= 1e-30 * (1.0 + scale * scale)) break;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        if (M[p][q] == 0.0) continue;
        double theta = 0.5 * (M[q][q] - M[p][p]) / M[p][q];
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (size_t k = 0; k < n; ++k) {
          double mkp = M[k][p], mkq = M[k][q];
          M[k][p] = c * mkp - s * mkq;
          M[k][q] = s * mkp + c * mkq;
        }
        for (size_t k = 0; k < n; ++k) {
          double mpk = M[p][k], mqk = M[q][k];
          M[p][k] = c * mpk - s * mqk;
          M[q][k] = s * mpk + c * mqk;
        }
      }
    }
  }
  std::vector<double> eigs(n);
  for (size_t i = 0; i < n; ++i) eigs[i] = M[i][i];
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

}  // namespace sumrule
