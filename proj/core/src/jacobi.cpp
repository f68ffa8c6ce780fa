#include "sumrule/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sumrule {

JacobiOperator::JacobiOperator(Side side, std::map<long, double> p, std::map<long, double> q)
    : side_(side), p_over_(std::move(p)), q_over_(std::move(q)) {}

JacobiOperator JacobiOperator::free_operator(Side side) { return JacobiOperator(side, {}, {}); }

JacobiOperator JacobiOperator::make(Side side, std::map<long, double> p_over,
                                    std::map<long, double> q_over) {
  for (auto& [k, v] : p_over) {
    if (side == Side::half_line && k < 1)
      throw std::invalid_argument("JacobiOperator: half-line p-index must be >= 1");
    if (!(v > 0.0)) throw std::invalid_argument("JacobiOperator: p must be positive");
  }
  for (auto& [k, v] : q_over) {
    (void)v;
    if (side == Side::half_line && k < 0)
      throw std::invalid_argument("JacobiOperator: half-line q-index must be >= 0");
  }
  // Drop overrides equal to the free value so the window is honest.
  std::erase_if(p_over, [](const auto& kv) { return kv.second == 1.0; });
  std::erase_if(q_over, [](const auto& kv) { return kv.second == 0.0; });
  return JacobiOperator(side, std::move(p_over), std::move(q_over));
}

double JacobiOperator::p(long k) const {
  if (side_ == Side::half_line && k < 1)
    throw std::out_of_range("JacobiOperator::p: half-line index must be >= 1");
  auto it = p_over_.find(k);
  return it == p_over_.end() ? 1.0 : it->second;
}

double JacobiOperator::q(long k) const {
  if (side_ == Side::half_line && k < 0)
    throw std::out_of_range("JacobiOperator::q: half-line index must be >= 0");
  auto it = q_over_.find(k);
  return it == q_over_.end() ? 0.0 : it->second;
}

std::optional<std::pair<long, long>> JacobiOperator::rank_window() const {
  if (is_free()) return std::nullopt;
  long lo = std::numeric_limits<long>::max();
  long hi = std::numeric_limits<long>::min();
  for (auto& [k, v] : q_over_) {
    (void)v;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  for (auto& [k, v] : p_over_) {
    (void)v;
    lo = std::min(lo, k - 1);
    hi = std::max(hi, k);
  }
  return std::make_pair(lo, hi);
}

long JacobiOperator::free_tail_index() const {
  long n = 1;
  if (!p_over_.empty()) n = std::max(n, p_over_.rbegin()->first + 1);
  if (!q_over_.empty()) n = std::max(n, q_over_.rbegin()->first + 1);
  return n;
}

JacobiOperator JacobiOperator::shifted(long k) const {
  if (side_ != Side::half_line)
    throw std::invalid_argument("JacobiOperator::shifted: half-line only");
  if (k < 0) throw std::invalid_argument("JacobiOperator::shifted: k must be >= 0");
  std::map<long, double> p2, q2;
  for (auto& [i, v] : p_over_)
    if (i - k >= 1) p2[i - k] = v;
  for (auto& [i, v] : q_over_)
    if (i - k >= 0) q2[i - k] = v;
  return JacobiOperator(side_, std::move(p2), std::move(q2));
}

SparseVec JacobiOperator::apply(const SparseVec& v) const {
  SparseVec out;
  for (auto& [j, val] : v) {
    if (val == 0.0) continue;
    if (side_ == Side::whole_line || j >= 1) out[j - 1] += p(j) * val;
    double qj = q(j);
    if (qj != 0.0) out[j] += qj * val;
    out[j + 1] += p(j + 1) * val;
  }
  return out;
}

namespace {

// Diagonal entries <J^j e_i, e_i> for j = 0..k on a dense local window.
// Returns moments[j]; exact because J is banded.
std::vector<double> diag_power_run(const JacobiOperator& J, long i, int k) {
  const int W = k + 1;               // reach of J^k from site i
  const long lo_raw = i - W;
  const long lo = (J.side() == Side::half_line) ? std::max(0L, lo_raw) : lo_raw;
  const long hi = i + W;
  const int len = static_cast<int>(hi - lo + 1);
  std::vector<double> cur(static_cast<size_t>(len), 0.0), next(static_cast<size_t>(len));
  cur[static_cast<size_t>(i - lo)] = 1.0;
  std::vector<double> moments(static_cast<size_t>(k) + 1, 0.0);
  moments[0] = 1.0;
  // Cache the band on the window.
  std::vector<double> pv(static_cast<size_t>(len) + 1, 1.0), qv(static_cast<size_t>(len), 0.0);
  for (int t = 0; t < len; ++t) {
    long idx = lo + t;
    qv[static_cast<size_t>(t)] = J.q(idx);
    if (J.side() == Side::whole_line || idx >= 1) pv[static_cast<size_t>(t)] = J.p(idx);
    else pv[static_cast<size_t>(t)] = 0.0;  // no coupling below site 0
  }
  pv[static_cast<size_t>(len)] = J.p(hi + 1);
  for (int j = 1; j <= k; ++j) {
    for (int t = 0; t < len; ++t) {
      double acc = qv[static_cast<size_t>(t)] * cur[static_cast<size_t>(t)];
      if (t > 0) acc += pv[static_cast<size_t>(t)] * cur[static_cast<size_t>(t - 1)];
      if (t + 1 < len) acc += pv[static_cast<size_t>(t + 1)] * cur[static_cast<size_t>(t + 1)];
      next[static_cast<size_t>(t)] = acc;
    }
    std::swap(cur, next);
    moments[static_cast<size_t>(j)] = cur[static_cast<size_t>(i - lo)];
  }
  return moments;
}

}  // namespace

double diag_power(const JacobiOperator& J, long i, int k) {
  if (k < 0) throw std::invalid_argument("diag_power: negative power");
  return diag_power_run(J, i, k).back();
}

double diag_entry_poly_delta(const JacobiOperator& J, const PowerPoly& phi, long k) {
  if (phi.is_zero()) return 0.0;
  const int d = phi.degree();
  JacobiOperator J0 = JacobiOperator::free_operator(J.side());
  std::vector<double> mj = diag_power_run(J, k, d);
  std::vector<double> m0 = diag_power_run(J0, k, d);
  double acc = 0.0;
  for (int j = 1; j <= d; ++j)
    acc += phi.coeff(j) * (mj[static_cast<size_t>(j)] - m0[static_cast<size_t>(j)]);
  return acc;
}

std::vector<double> trace_tk_upto(const JacobiOperator& J, int K) {
  if (K < 0) throw std::invalid_argument("trace_tk_upto: negative order");
  std::vector<double> t(static_cast<size_t>(K) + 1, 0.0);
  for (auto& [k, v] : J.p_overrides()) {
    (void)k;
    t[0] += std::log(v);
  }
  if (K == 0 || J.is_free()) return t;
  auto [wlo, whi] = *J.rank_window();
  JacobiOperator J0 = JacobiOperator::free_operator(J.side());
  long lo = wlo - K - 1, hi = whi + K + 1;
  if (J.side() == Side::half_line) lo = std::max(0L, lo);
  for (long i = lo; i <= hi; ++i) {
    std::vector<double> mj = diag_power_run(J, i, K);
    std::vector<double> m0 = diag_power_run(J0, i, K);
    for (int k = 1; k <= K; ++k)
      t[static_cast<size_t>(k)] += mj[static_cast<size_t>(k)] - m0[static_cast<size_t>(k)];
  }
  return t;
}

double trace_tk(const JacobiOperator& J, int k) { return trace_tk_upto(J, k).back(); }

double gershgorin_radius(const JacobiOperator& J) {
  double r = 2.0;  // free rows
  auto window = J.rank_window();
  if (!window) return r;
  auto [lo, hi] = *window;
  for (long i = lo - 1; i <= hi + 1; ++i) {
    if (J.side() == Side::half_line && i < 0) continue;
    double row = std::abs(J.q(i)) + J.p(i + 1);
    if (J.side() == Side::whole_line || i >= 1) row += J.p(i);
    r = std::max(r, row);
  }
  return r;
}

ShiftLemmaResult shift_lemma_check(const JacobiOperator& J, long k, int l, long n) {
  if (J.side() != Side::half_line)
    throw std::invalid_argument("shift_lemma_check: half-line only");
  if (k < 1 || l < 1 || n < 0) throw std::invalid_argument("shift_lemma_check: bad arguments");
  ShiftLemmaResult res;
  res.precondition_met = (n >= l - 1);

  JacobiOperator Jk = J.shifted(k);
  SparseVec lhs{{n, 1.0}};
  for (int j = 0; j < l; ++j) lhs = Jk.apply(lhs);

  SparseVec w{{n + k, 1.0}};
  for (int j = 0; j < l; ++j) w = J.apply(w);
  SparseVec rhs;
  for (auto& [i, v] : w)
    if (i >= k) rhs[i - k] = v;

  double dev = 0.0;
  for (auto& [i, v] : lhs) dev = std::max(dev, std::abs(v - (rhs.count(i) ? rhs[i] : 0.0)));
  for (auto& [i, v] : rhs) dev = std::max(dev, std::abs(v - (lhs.count(i) ? lhs[i] : 0.0)));
  res.max_deviation = dev;
  res.holds = dev <= 1e-12;
  return res;
}

FiniteTruncation::FiniteTruncation(std::vector<double> diag, std::vector<double> off)
    : diag_(std::move(diag)), off_(std::move(off)) {
  if (diag_.empty()) throw std::invalid_argument("FiniteTruncation: empty");
  if (off_.size() + 1 != diag_.size())
    throw std::invalid_argument("FiniteTruncation: off-diagonal length mismatch");
  for (double p : off_)
    if (!(p > 0.0)) throw std::invalid_argument("FiniteTruncation: off-diagonals must be positive");
}

FiniteTruncation FiniteTruncation::of(const JacobiOperator& J, int n) {
  if (J.side() != Side::half_line)
    throw std::invalid_argument("FiniteTruncation::of: half-line only");
  if (n < 1) throw std::invalid_argument("FiniteTruncation::of: size must be >= 1");
  std::vector<double> d(static_cast<size_t>(n)), o(static_cast<size_t>(n) - 1);
  for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] = J.q(i);
  for (int i = 1; i < n; ++i) o[static_cast<size_t>(i - 1)] = J.p(i);
  return FiniteTruncation(std::move(d), std::move(o));
}

FiniteTruncation FiniteTruncation::free_of(int n) {
  return FiniteTruncation(std::vector<double>(static_cast<size_t>(n), 0.0),
                          std::vector<double>(static_cast<size_t>(n) - 1, 1.0));
}

std::vector<double> FiniteTruncation::dense() const {
  const int n = size();
  std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = diag_[static_cast<size_t>(i)];
  for (int i = 0; i + 1 < n; ++i) {
    m[static_cast<size_t>(i) * n + i + 1] = off_[static_cast<size_t>(i)];
    m[static_cast<size_t>(i + 1) * n + i] = off_[static_cast<size_t>(i)];
  }
  return m;
}

namespace {

double trace_of_power(const std::vector<double>& m, int n, int k) {
  if (k == 0) return static_cast<double>(n);
  std::vector<double> acc = m;
  std::vector<double> tmp(static_cast<size_t>(n) * n);
  for (int j = 1; j < k; ++j) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int t = 0; t < n; ++t)
          s += acc[static_cast<size_t>(r) * n + t] * m[static_cast<size_t>(t) * n + c];
        tmp[static_cast<size_t>(r) * n + c] = s;
      }
    }
    std::swap(acc, tmp);
  }
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += acc[static_cast<size_t>(i) * n + i];
  return tr;
}

}  // namespace

double truncation_trace(const FiniteTruncation& a, const FiniteTruncation& b, int k) {
  if (a.size() != b.size()) throw std::invalid_argument("truncation_trace: size mismatch");
  if (k < 0) throw std::invalid_argument("truncation_trace: negative power");
  if (k == 0) return 0.0;
  const int n = a.size();
  return trace_of_power(a.dense(), n, k) - trace_of_power(b.dense(), n, k);
}

}  // namespace sumrule
