#include "sumrule/cheb.hpp"

#include <cmath>
#include <stdexcept>

namespace sumrule {

namespace {
constexpr double kTrimTol = 0.0;  // exact zeros only; callers keep tiny coefficients
}

PowerPoly::PowerPoly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

PowerPoly PowerPoly::monomial(int k, double c) {
  std::vector<double> v(static_cast<size_t>(k) + 1, 0.0);
  v.back() = c;
  return PowerPoly(std::move(v));
}

void PowerPoly::trim() {
  while (!c_.empty() && std::abs(c_.back()) <= kTrimTol) c_.pop_back();
}

double PowerPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0.0;
  return c_[static_cast<size_t>(k)];
}

double PowerPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cdouble PowerPoly::eval(cdouble z) const {
  cdouble acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PowerPoly PowerPoly::derivative() const {
  if (c_.size() <= 1) return PowerPoly();
  std::vector<double> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return PowerPoly(std::move(d));
}

PowerPoly PowerPoly::antiderivative() const {
  if (c_.empty()) return PowerPoly();
  std::vector<double> d(c_.size() + 1, 0.0);
  for (size_t k = 0; k < c_.size(); ++k) d[k + 1] = c_[k] / static_cast<double>(k + 1);
  return PowerPoly(std::move(d));
}

PowerPoly& PowerPoly::operator+=(const PowerPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

PowerPoly& PowerPoly::operator-=(const PowerPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

PowerPoly& PowerPoly::operator*=(double s) {
  for (double& v : c_) v *= s;
  trim();
  return *this;
}

namespace {

template <typename Scalar>
Scalar eval_u_impl(int l, Scalar z) {
  if (l < 1) throw std::invalid_argument("eval_U: index must be >= 1");
  Scalar prev = Scalar(0);  // U_0
  Scalar cur = Scalar(1);   // U_1
  for (int k = 1; k < l; ++k) {
    Scalar next = z * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

template <typename Scalar>
Scalar eval_t_impl(int l, Scalar z) {
  if (l < 0) throw std::invalid_argument("eval_T: index must be >= 0");
  Scalar prev = Scalar(2);  // T_0
  if (l == 0) return prev;
  Scalar cur = z;  // T_1
  for (int k = 1; k < l; ++k) {
    Scalar next = z * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

cdouble eval_U(int l, cdouble z) { return eval_u_impl<cdouble>(l, z); }
double eval_U(int l, double x) { return eval_u_impl<double>(l, x); }
cdouble eval_T(int l, cdouble z) { return eval_t_impl<cdouble>(l, z); }
double eval_T(int l, double x) { return eval_t_impl<double>(l, x); }

PowerPoly u_power_poly(int l) {
  if (l < 1) throw std::invalid_argument("u_power_poly: index must be >= 1");
  PowerPoly prev;                              // U_0 = 0
  PowerPoly cur(std::vector<double>{1.0});     // U_1 = 1
  for (int k = 1; k < l; ++k) {
    // U_{k+1} = z U_k - U_{k-1}
    std::vector<double> shifted(cur.coeffs().size() + 1, 0.0);
    for (size_t j = 0; j < cur.coeffs().size(); ++j) shifted[j + 1] = cur.coeffs()[j];
    PowerPoly next(std::move(shifted));
    next -= prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

PowerPoly t_power_poly(int l) {
  if (l < 0) throw std::invalid_argument("t_power_poly: index must be >= 0");
  PowerPoly prev(std::vector<double>{2.0});    // T_0
  if (l == 0) return prev;
  PowerPoly cur(std::vector<double>{0.0, 1.0});  // T_1 = z
  for (int k = 1; k < l; ++k) {
    std::vector<double> shifted(cur.coeffs().size() + 1, 0.0);
    for (size_t j = 0; j < cur.coeffs().size(); ++j) shifted[j + 1] = cur.coeffs()[j];
    PowerPoly next(std::move(shifted));
    next -= prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

ChebUExpansion::ChebUExpansion(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

void ChebUExpansion::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

ChebUExpansion ChebUExpansion::basis(int l, double c) {
  if (l < 1) throw std::invalid_argument("ChebUExpansion::basis: index must be >= 1");
  std::vector<double> v(static_cast<size_t>(l), 0.0);
  v.back() = c;
  return ChebUExpansion(std::move(v));
}

ChebUExpansion ChebUExpansion::from_power(const PowerPoly& p) {
  // U_{d+1} is monic of degree d: peel leading coefficients.
  PowerPoly rem = p;
  std::vector<double> c(static_cast<size_t>(std::max(0, p.degree() + 1)), 0.0);
  while (!rem.is_zero()) {
    int d = rem.degree();
    double lead = rem.coeff(d);
    c[static_cast<size_t>(d)] = lead;  // coefficient of U_{d+1}
    rem -= lead * u_power_poly(d + 1);
    if (rem.degree() >= d && !rem.is_zero())
      throw std::logic_error("from_power: reduction failed to lower degree");
  }
  return ChebUExpansion(std::move(c));
}

double ChebUExpansion::coeff(int l) const {
  if (l < 1 || l > max_index()) return 0.0;
  return c_[static_cast<size_t>(l - 1)];
}

double ChebUExpansion::eval(double x) const {
  double acc = 0.0, prev = 0.0, cur = 1.0;  // U_0, U_1
  for (int l = 1; l <= max_index(); ++l) {
    acc += c_[static_cast<size_t>(l - 1)] * cur;
    double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return acc;
}

cdouble ChebUExpansion::eval(cdouble z) const {
  cdouble acc = 0.0, prev = 0.0, cur = 1.0;
  for (int l = 1; l <= max_index(); ++l) {
    acc += c_[static_cast<size_t>(l - 1)] * cur;
    cdouble next = z * cur - prev;
    prev = cur;
    cur = next;
  }
  return acc;
}

PowerPoly ChebUExpansion::to_power() const {
  PowerPoly acc;
  for (int l = 1; l <= max_index(); ++l) {
    double c = c_[static_cast<size_t>(l - 1)];
    if (c != 0.0) acc += c * u_power_poly(l);
  }
  return acc;
}

ChebUExpansion& ChebUExpansion::operator+=(const ChebUExpansion& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

ChebUExpansion& ChebUExpansion::operator*=(double s) {
  for (double& v : c_) v *= s;
  trim();
  return *this;
}

ChebUExpansion u_product(const ChebUExpansion& f, const ChebUExpansion& g) {
  if (f.is_zero() || g.is_zero()) return ChebUExpansion();
  std::vector<double> c(static_cast<size_t>(f.max_index() + g.max_index() - 1), 0.0);
  for (int m = 1; m <= f.max_index(); ++m) {
    double fm = f.coeff(m);
    if (fm == 0.0) continue;
    for (int n = 1; n <= g.max_index(); ++n) {
      double gn = g.coeff(n);
      if (gn == 0.0) continue;
      for (int k = std::abs(m - n) + 1; k <= m + n - 1; k += 2)
        c[static_cast<size_t>(k - 1)] += fm * gn;
    }
  }
  return ChebUExpansion(std::move(c));
}

PhiPair phi_from_A(const ChebUExpansion& A) {
  if (A.is_zero()) throw std::invalid_argument("phi_from_A: zero expansion");
  PowerPoly phi_prime;
  for (int l = 1; l <= A.max_index(); ++l) {
    double c = A.coeff(l);
    if (c != 0.0) phi_prime += c * t_power_poly(l);
  }
  PhiPair out;
  out.phi = phi_prime.antiderivative();
  out.a = 2.0 * A.coeff(1);
  return out;
}

}  // namespace sumrule
