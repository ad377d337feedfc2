#ifndef LINCOAG_SPECFUN_HPP_
#define LINCOAG_SPECFUN_HPP_

#include <complex>

#include "lincoag/sigma_params.hpp"

namespace lincoag::specfun {

// Gamma function, Lanczos approximation with reflection for Re z < 1/2.
// The complex variant keeps >= 12 significant digits over the strips used by
// the contour integrals.
double gamma(double x);
std::complex<double> gamma(std::complex<double> z);

// Any L with exp(L(z)) = Gamma(z); safe to exponentiate differences of.
std::complex<double> log_gamma(std::complex<double> z);

// log |Gamma(x)| and sign of Gamma(x) for real non-pole x.
double log_abs_gamma(double x);
double gamma_sign(double x);

// 1/Gamma, exactly zero at the poles of Gamma.
double reciprocal_gamma(double x);

// B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y), extended by B = 0 whenever x + y is
// a non-positive integer while x and y are not.  Throws on x or y at a pole.
double beta(double x, double y);

// Same, with the sum x + y supplied separately so callers can form it without
// cancellation (the omega recursion needs B(2-sigma+l/3, sigma-2+j/3+m) to
// vanish exactly when l = j = m = 0).
double beta_with_sum(double x, double y, double sum);

// Phi_alpha(beta) = (1/alpha)[1 - Gamma(beta+1)Gamma(1-alpha)/Gamma(1-alpha+beta)]
// for 0 < alpha < 1, beta > -1; the Gamma-pole of the denominator is taken as
// a zero of the whole correction term.
double phi(double alpha, double beta);

// omega(l, j, m; sigma) =
//   (sigma-2+j/3+m)/(sigma-1-l/3) * B(2-sigma+l/3, sigma-2+j/3+m)
double omega(int l, int j, int m, const SigmaParams& params);

}  // namespace lincoag::specfun

#endif  // LINCOAG_SPECFUN_HPP_
