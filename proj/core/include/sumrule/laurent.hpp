#pragma once

#include <complex>
#include <vector>

#include "sumrule/cheb.hpp"

// Truncated formal Laurent expansions at z = infinity.  A series stores the
// coefficients of z^{top}, z^{top-1}, ..., z^{top-K+1}; coefficients above
// top are exact zeros, coefficients below the retained window are unknown.
// Ring operations are exact on the retained window and never extend it.

namespace sumrule {

class LaurentSeries {
 public:
  // coeffs[j] multiplies z^{top - j}.
  LaurentSeries(int top, std::vector<double> coeffs);

  int top_degree() const { return top_; }
  int bottom_degree() const { return top_ - static_cast<int>(c_.size()) + 1; }
  int retained() const { return static_cast<int>(c_.size()); }

  // Coefficient of z^power: exact zero above top, throws below the window.
  double coeff(int power) const;

  // Drop exact leading zeros; the bottom of the window stays fixed.
  LaurentSeries canonical(double tol = 0.0) const;

  // Partial sum at z (diagnostic; truncation applies).
  cdouble eval(cdouble z) const;

  const std::vector<double>& raw() const { return c_; }

 private:
  int top_;
  std::vector<double> c_;
};

LaurentSeries laurent_add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries laurent_sub(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries laurent_scale(const LaurentSeries& a, double s);
LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b);

// log of a series with top degree 0 and positive leading coefficient.
LaurentSeries laurent_log(const LaurentSeries& s);
// exp of a series with top degree <= 0.
LaurentSeries laurent_exp(const LaurentSeries& s);
// Reciprocal of a series with nonzero leading coefficient.
LaurentSeries laurent_inv(const LaurentSeries& s);

// z (1 - 4/z^2)^{1/2} = z - 2/z - 2/z^3 - 4/z^5 - ...  (K coefficients)
LaurentSeries laurent_sqrt_z2m4(int K);
// zeta(z) = (z - sqrt(z^2-4))/2 = 1/z + 1/z^3 + 2/z^5 + 5/z^7 + ...
LaurentSeries laurent_zeta(int K);

// A polynomial viewed as a Laurent series with K retained coefficients.
LaurentSeries laurent_from_poly(const PowerPoly& p, int K);

}  // namespace sumrule
