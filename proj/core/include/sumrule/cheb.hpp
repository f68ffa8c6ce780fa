#pragma once

#include <complex>
#include <vector>

// Chebyshev polynomial algebra on [-2,2] in the zeta-convention:
// with z = zeta + 1/zeta, |zeta| < 1,
//   U_l(z) = (zeta^{-l} - zeta^l) / (zeta^{-1} - zeta),   U_0 = 0, U_1 = 1,
//   T_l(z) = zeta^{-l} + zeta^l,                          T_0 = 2, T_1 = z.
// U_l has degree l-1.  Both satisfy X_{l+1} = z X_l - X_{l-1}.

namespace sumrule {

using cdouble = std::complex<double>;

// Polynomial in the monomial basis; coeff(k) multiplies z^k.
class PowerPoly {
 public:
  PowerPoly() = default;
  explicit PowerPoly(std::vector<double> coeffs);
  static PowerPoly monomial(int k, double c = 1.0);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double coeff(int k) const;
  const std::vector<double>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  double eval(double x) const;
  cdouble eval(cdouble z) const;

  PowerPoly derivative() const;
  // Antiderivative with value 0 at z = 0.
  PowerPoly antiderivative() const;

  PowerPoly& operator+=(const PowerPoly& o);
  PowerPoly& operator-=(const PowerPoly& o);
  PowerPoly& operator*=(double s);
  friend PowerPoly operator+(PowerPoly a, const PowerPoly& b) { return a += b; }
  friend PowerPoly operator-(PowerPoly a, const PowerPoly& b) { return a -= b; }
  friend PowerPoly operator*(PowerPoly a, double s) { return a *= s; }
  friend PowerPoly operator*(double s, PowerPoly a) { return a *= s; }

 private:
  void trim();
  std::vector<double> c_;  // trimmed: back() != 0 unless empty
};

cdouble eval_U(int l, cdouble z);
cdouble eval_T(int l, cdouble z);
double eval_U(int l, double x);
double eval_T(int l, double x);

// U_l and T_l in the monomial basis (U_l is monic of degree l-1).
PowerPoly u_power_poly(int l);
PowerPoly t_power_poly(int l);

// A = sum_{l >= 1} c_l U_l, finitely many nonzero real coefficients.
class ChebUExpansion {
 public:
  ChebUExpansion() = default;
  // coeffs[i] is the coefficient of U_{i+1}.
  explicit ChebUExpansion(std::vector<double> coeffs);
  static ChebUExpansion basis(int l, double c = 1.0);
  static ChebUExpansion from_power(const PowerPoly& p);

  bool is_zero() const { return c_.empty(); }
  // Highest l with c_l != 0; 0 for the zero expansion.
  int max_index() const { return static_cast<int>(c_.size()); }
  // Polynomial degree; -1 for the zero expansion.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double coeff(int l) const;

  double eval(double x) const;
  cdouble eval(cdouble z) const;
  PowerPoly to_power() const;

  ChebUExpansion& operator+=(const ChebUExpansion& o);
  ChebUExpansion& operator*=(double s);
  friend ChebUExpansion operator+(ChebUExpansion a, const ChebUExpansion& b) { return a += b; }
  friend ChebUExpansion operator*(ChebUExpansion a, double s) { return a *= s; }
  friend ChebUExpansion operator*(double s, ChebUExpansion a) { return a *= s; }

 private:
  void trim();
  std::vector<double> c_;
};

// Pointwise product via the linearization
// U_m U_n = U_{|m-n|+1} + U_{|m-n|+3} + ... + U_{m+n-1}.
ChebUExpansion u_product(const ChebUExpansion& f, const ChebUExpansion& g);

// Phi' = sum c_l T_l (the map U_l -> T_l term by term), Phi(0) = 0,
// and a = (1/pi) int_{-2}^{2} A sqrt(4-x^2) dx = 2 c_1.
struct PhiPair {
  PowerPoly phi;
  double a = 0.0;
};
PhiPair phi_from_A(const ChebUExpansion& A);

}  // namespace sumrule
