#ifndef LINCOAG_DETAIL_SHIFTED_MOMENTS_HPP_
#define LINCOAG_DETAIL_SHIFTED_MOMENTS_HPP_

#include <cmath>

#include "lincoag/specfun.hpp"

namespace lincoag::detail {

// int_lo^hi v^e dv (e != -1)
inline double power_int(double lo, double hi, double e) {
  return (std::pow(hi, e + 1.0) - std::pow(lo, e + 1.0)) / (e + 1.0);
}

// int_A^inf (1+v)^{-sigma} v^q dv for A >= 1: binomial expansion of
// (t-1)^q about t = 1+A, geometric with ratio 1/(1+A).
inline double shifted_tail_series(double a, double q, double sigma) {
  const double t0 = 1.0 + a;
  double binom = 1.0;  // binom(q,k) (-1)^k
  double sum = 0.0;
  for (int k = 0; k < 220; ++k) {
    const double e = q - k - sigma + 1.0;
    const double term = binom * std::pow(t0, e) / (-e);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 3) break;
    binom *= -(q - k) / (k + 1.0);
  }
  return sum;
}

// int_0^B (1+v)^{-sigma} v^q dv for B <= 1/2
inline double shifted_head_series(double b, double q, double sigma) {
  double binom = 1.0;  // binom(-sigma, k)
  double sum = 0.0;
  for (int k = 0; k < 300; ++k) {
    const double e = q + k + 1.0;
    const double term = binom * std::pow(b, e) / e;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 3) break;
    binom *= -(sigma + k) / (k + 1.0);
  }
  return sum;
}

// Gauss-Legendre 24 of (1+v)^{-sigma} v^q on [a,b] (used on [1/2, 1] where
// both series converge slowly)
inline double shifted_segment(double a, double b, double q, double sigma) {
  static const double x[12] = {
      0.064056892862605626085043082624745, 0.191118867473616309158639820757270,
      0.315042679696163374386793291319865, 0.433793507626045138487084231913252,
      0.545421471388839535658375617218404, 0.648093651936975569252495786910355,
      0.740124191578554364243828103099981, 0.820001985973902921953949872669369,
      0.886415527004401034213154341982575, 0.938274552002732758523649001708693,
      0.974728555971309498198391993008091, 0.995187219997021360179997409700873};
  static const double w[12] = {
      0.127938195346752156974056165224695, 0.125837456346828296121375382511841,
      0.121670472927803391204463153476262, 0.115505668053725601353344483906050,
      0.107444270115965634782577342446606, 0.097618652104113888269880664464247,
      0.086190161531953275917185202983743, 0.073346481411080305734033615253117,
      0.059298584915436780746367758500109, 0.044277438817419806168602748211338,
      0.028531388628933663181307815951878, 0.012341229799987199546805667070037};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 12; ++i) {
    const double v1 = mid - half * x[i], v2 = mid + half * x[i];
    sum += w[i] * (std::pow(1.0 + v1, -sigma) * std::pow(v1, q) +
                   std::pow(1.0 + v2, -sigma) * std::pow(v2, q));
  }
  return half * sum;
}

inline double shifted_partial(double b, double q, double sigma) {
  if (b <= 0.0) return 0.0;
  if (b <= 0.5) return shifted_head_series(b, q, sigma);
  if (b <= 1.0) {
    return shifted_head_series(0.5, q, sigma) + shifted_segment(0.5, b, q, sigma);
  }
  return shifted_head_series(0.5, q, sigma) + shifted_segment(0.5, 1.0, q, sigma) +
         (shifted_tail_series(1.0, q, sigma) - shifted_tail_series(b, q, sigma));
}

// int_A^inf (1+v)^{-sigma} v^q dv for any A >= 0 (q > -1, sigma - q > 1)
inline double shifted_tail(double a, double q, double sigma) {
  if (a >= 1.0) return shifted_tail_series(a, q, sigma);
  const double full = specfun::gamma(1.0 + q) * specfun::gamma(sigma - 1.0 - q) /
                      specfun::gamma(sigma);
  return full - shifted_partial(a, q, sigma);
}

}  // namespace lincoag::detail

#endif  // LINCOAG_DETAIL_SHIFTED_MOMENTS_HPP_
