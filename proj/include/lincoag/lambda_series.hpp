#ifndef LINCOAG_LAMBDA_SERIES_HPP_
#define LINCOAG_LAMBDA_SERIES_HPP_

#include <array>
#include <vector>

#include "lincoag/quadrature.hpp"
#include "lincoag/sigma_params.hpp"

namespace lincoag::series {

// Taylor coefficients of c_l (1-xi)^{-l/3} (c_1 = 2, c_2 = 1).
struct TaylorF {
  int l = 1;
  std::vector<double> coeffs;  // b[k]
};

TaylorF f_taylor(int l, int order);

// F_l(xi) itself; F_0 = 1.
double f_weight(int l, double xi);

// Triangular coefficient table a[m][j] of the Frobenius-type series
//
//   Lambda(xi) = sum_{j=0..2} sum_{m=0..K} a[m][j] xi^{sigma-2+j/3+m}
//
// solving the rescaled fundamental-solution equation with a[0][0] = 1.
// Coefficients are filled k ascending, s = 0,1,2 within each k; a[k][s]
// depends on a[m][j] with m < k and on a[k][j] with j < s only.
class LambdaSeries {
 public:
  static constexpr double kDefaultDelta = 0.05;
  static constexpr int kDefaultOrder = 200;

  static LambdaSeries build(const SigmaParams& params, int order = kDefaultOrder,
                            double delta = kDefaultDelta);

  double sigma() const { return sigma_; }
  int order() const { return order_; }
  double delta() const { return delta_; }
  double growth_constant() const { return growth_constant_; }
  double coeff(int m, int j) const { return a_[j][static_cast<size_t>(m)]; }

  // Series value; valid while the geometric tail bound (ratio (1+delta)*xi)
  // stays below rel_tol.  Throws NumericError reporting the required order
  // otherwise, so callers near xi = 1 know to take the contour route.
  double eval(double xi, double rel_tol = 1e-8) const;

  // Lambda(xi*(1-zeta)) - Lambda(xi), summed termwise through expm1 so the
  // result keeps full relative accuracy when zeta is tiny.
  double eval_diff(double xi, double zeta, double rel_tol = 1e-8) const;

  // H(xi) = Lambda(xi) - xi^{sigma-2}
  double h_eval(double xi, double rel_tol = 1e-8) const;

  // Relative tail bound of the truncated series at xi.
  double tail_bound(double xi) const;

  // Relative cancellation bound: largest term over the result scale, times
  // the unit roundoff of the long-double accumulator.  Near sigma = 5/3 the
  // coefficients transit through ~1e30 before the (1+delta)^k regime, so the
  // series loses all accuracy well before xi = 1.
  double cancellation_bound(double xi) const;

  // True when both guards pass at rel_tol; eval throws where this is false.
  bool usable(double xi, double rel_tol = 1e-8) const;

  // Copy with one coefficient replaced; sensitivity probe for the residual
  // oracle (a wrong table must light it up).
  LambdaSeries with_coeff(int m, int j, double value) const;

 private:
  double sigma_ = 0.0;
  int order_ = 0;
  double delta_ = kDefaultDelta;
  double growth_constant_ = 0.0;
  std::array<std::vector<double>, 3> a_;
  std::vector<double> max_abs_;  // max_j |a[m][j]|
  void check_guards(double xi, double rel_tol) const;
};

// Residual of the nonlocal equation at xi: evaluates every fractional
// difference D^alpha by singular quadrature of the series, so a correct
// coefficient table drives this to quadrature noise.  Valid for xi <= 0.9.
double residual(const LambdaSeries& series, double xi,
                const quad::Spec& spec = {1e-11, 1e-11, 0.0, 0.0, 4000});

// D^alpha_+ applied to the series at xi (exposed for the trial-function
// cancellation checks).
double fractional_difference(const LambdaSeries& series, double alpha, double xi,
                             const quad::Spec& spec = {1e-11, 1e-11, 0.0, 0.0, 4000});

}  // namespace lincoag::series

#endif  // LINCOAG_LAMBDA_SERIES_HPP_
