#ifndef LINCOAG_MELLIN_HPP_
#define LINCOAG_MELLIN_HPP_

#include <complex>
#include <vector>

#include "lincoag/sigma_params.hpp"

namespace lincoag::mellin {

// One real zero of M, with its containing bracket and the residue-based
// asymptotic prediction.
struct ZeroInfo {
  int family = 0;  // 0, 1 or 2
  int n = 0;
  double lo = 0.0;
  double hi = 0.0;
  double root = 0.0;
  double asymptotic = 0.0;
};

// Wedge contour with vertex on the negative real axis; rays at +-half_angle
// for V < 1 and at +-(pi - half_angle) for V > 1 so the integrand always
// decays along them.  r_max <= 0 selects the automatic truncation
// max(50, 14 ln10 / (cos(angle) |ln V|)).
struct ContourSpec {
  double vertex = -1.0;
  double half_angle = 0.78539816339744830962;  // pi/4
  double r_max = 0.0;
  int nodes = 24;  // Gauss-Legendre points per panel
};

// The Mellin symbol M(z) of the generator, its derivative at zero, the
// matching constant K-bar, the zero families, and the contour evaluation of
// the fundamental solution G(V).
class MellinStructure {
 public:
  static MellinStructure build(const SigmaParams& params);

  double sigma() const { return sigma_; }
  double m_prime_zero() const { return m_prime_zero_; }
  double k_bar() const { return k_bar_; }
  double lambda_at_one() const { return 1.0 / (k_bar_ * m_prime_zero_); }

  // Meromorphic extension; throws NumericError naming z_{j,n} at a pole.
  std::complex<double> m_eval(std::complex<double> z) const;

  // Pole z_{j,n} = sigma - 1 - j/3 + n.
  double pole(int j, int n) const { return sigma_ - 1.0 - j / 3.0 + n; }

  // Analytic factor Q(z) on the real axis (M = z/Gamma(1-z) * Gamma(sigma-1-z) * Q).
  double q_factor(double z) const;
  // Its limit as |z| -> inf, Gamma(2-sigma)/(sigma-1).
  double q_factor_limit() const;
  // Residue of Q at z_{j,n}, j in {1,2}; negative, vanishing as n -> inf.
  double q_residue(int j, int n) const;

  // Families 0..2 for n = 0..n_max, each certified to have exactly one sign
  // change in its bracket.
  std::vector<ZeroInfo> find_zeros(int n_max) const;

  // G(V) = -(1/2 pi i) int_C V^z / M(z) dz; returns 1/M'(0) at V -> 0+ and a
  // numerical zero for V > 1.  Throws if the imaginary residual exceeds 1e-10.
  double g_eval(double v, const ContourSpec& spec = {}) const;

 private:
  double sigma_ = 0.0;
  double m_prime_zero_ = 0.0;
  double k_bar_ = 0.0;
};

// K-bar = (sigma-1) sin(pi (sigma-1)) / pi, as a free function as well.
double k_bar(const SigmaParams& params);

}  // namespace lincoag::mellin

#endif  // LINCOAG_MELLIN_HPP_
