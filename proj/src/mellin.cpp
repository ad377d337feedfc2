#include "lincoag/mellin.hpp"

#include <array>
#include <cmath>
#include <string>

#include "lincoag/errors.hpp"
#include "lincoag/specfun.hpp"

namespace lincoag::mellin {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kCj[3] = {1.0, 2.0, 1.0};

// Gauss-Legendre nodes/weights on [-1,1], computed once per order by Newton
// iteration on the Legendre polynomial.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) {
    x.resize(static_cast<size_t>(n));
    w.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int k = 0; k < n; ++k) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
        }
        pp = n * (t * p0 - p1) / (t * t - 1.0);
        const double dt = p0 / pp;
        t -= dt;
        if (std::abs(dt) < 1e-15) break;
      }
      x[static_cast<size_t>(i)] = t;
      w[static_cast<size_t>(i)] = 2.0 / ((1.0 - t * t) * pp * pp);
    }
  }
};

const GaussLegendre& gl_rule(int n) {
  static GaussLegendre g16(16), g24(24), g32(32), g48(48);
  if (n <= 16) return g16;
  if (n <= 24) return g24;
  if (n <= 32) return g32;
  return g48;
}

}  // namespace

double k_bar(const SigmaParams& params) {
  params.require_core("k_bar");
  return (params.sigma - 1.0) * std::sin(kPi * (params.sigma - 1.0)) / kPi;
}

MellinStructure MellinStructure::build(const SigmaParams& params) {
  params.require_core("MellinStructure::build");
  MellinStructure m;
  m.sigma_ = params.sigma;
  m.k_bar_ = ::lincoag::mellin::k_bar(params);
  double mp = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double a = m.sigma_ - j / 3.0 - 1.0;
    mp += kCj[j] * specfun::gamma(2.0 + j / 3.0 - m.sigma_) * specfun::gamma(a) / a;
  }
  m.m_prime_zero_ = mp;
  return m;
}

std::complex<double> MellinStructure::m_eval(std::complex<double> z) const {
  if (z.imag() == 0.0 && z.real() > 0.0) {
    // pole proximity check on the real axis
    for (int j = 0; j < 3; ++j) {
      const double frac = z.real() - (sigma_ - 1.0 - j / 3.0);
      const double n = std::round(frac);
      if (n >= 0.0 && std::abs(frac - n) < 1e-12) {
        throw NumericError("M(z) pole at z_{" + std::to_string(j) + "," +
                           std::to_string(static_cast<int>(n)) + "}");
      }
    }
  }
  const std::complex<double> lg1z = specfun::log_gamma(1.0 - z);
  std::complex<double> tot{0.0, 0.0};
  for (int j = 0; j < 3; ++j) {
    const double a = sigma_ - j / 3.0 - 1.0;
    tot += kCj[j] * specfun::gamma(2.0 + j / 3.0 - sigma_) / a *
           std::exp(specfun::log_gamma(a - z) - lg1z);
  }
  return z * tot;
}

double MellinStructure::q_factor_limit() const {
  return specfun::gamma(2.0 - sigma_) / (sigma_ - 1.0);
}

double MellinStructure::q_factor(double z) const {
  const double y = sigma_ - 1.0 - z;
  // j = 0 ratio is Gamma(y)/Gamma(y) = 1 identically, also across its poles
  double tot = q_factor_limit();
  if (y <= 0.0 && y == std::floor(y)) return tot;  // 1/Gamma(y) = 0 kills j = 1,2
  for (int j = 1; j < 3; ++j) {
    const double x = sigma_ - 1.0 - j / 3.0 - z;
    const double ratio = specfun::gamma_sign(x) * specfun::gamma_sign(y) *
                         std::exp(specfun::log_abs_gamma(x) - specfun::log_abs_gamma(y));
    tot += kCj[j] * specfun::gamma(2.0 + j / 3.0 - sigma_) / (sigma_ - j / 3.0 - 1.0) * ratio;
  }
  return tot;
}

double MellinStructure::q_residue(int j, int n) const {
  if (j < 1 || j > 2 || n < 0) throw DomainError("q_residue: j in {1,2}, n >= 0");
  const double lg = specfun::log_abs_gamma(1.0 - j / 3.0 + n) -
                    specfun::log_abs_gamma(1.0 + n);
  return -kCj[j] * specfun::gamma(2.0 + j / 3.0 - sigma_) /
         (kPi * (sigma_ - j / 3.0 - 1.0)) * std::exp(lg) * std::sin(kPi * j / 3.0);
}

std::vector<ZeroInfo> MellinStructure::find_zeros(int n_max) const {
  if (n_max < 0) throw DomainError("find_zeros: n_max >= 0");
  std::vector<ZeroInfo> zeros;
  for (int n = 0; n <= n_max; ++n) {
    // family 0: the zeros of z/Gamma(1-z) are exactly the non-negative integers
    zeros.push_back({0, n, static_cast<double>(n), static_cast<double>(n),
                     static_cast<double>(n), static_cast<double>(n)});
    for (int fam = 1; fam <= 2; ++fam) {
      // family 1 sits in (z_{2,n}, z_{1,n}); family 2 in (z_{1,n}, z_{2,n+1})
      const double lo = (fam == 1) ? pole(2, n) : pole(1, n);
      const double hi = (fam == 1) ? pole(1, n) : pole(2, n + 1);
      const int res_j = (fam == 1) ? 2 : 1;
      const double margin = 1e-7 * (hi - lo);
      const int scan = 64;
      double xa = lo + margin, xb = hi - margin;
      double fa = q_factor(xa);
      int sign_changes = 0;
      double ra = xa, rb = xb;
      double prev_x = xa, prev_f = fa;
      for (int i = 1; i <= scan; ++i) {
        const double xi = xa + (xb - xa) * i / scan;
        const double fi = q_factor(xi);
        if (prev_f == 0.0 || prev_f * fi < 0.0) {
          ++sign_changes;
          ra = prev_x;
          rb = xi;
        }
        prev_x = xi;
        prev_f = fi;
      }
      if (sign_changes != 1) {
        throw NumericError("find_zeros: bracket (" + std::to_string(lo) + ", " +
                           std::to_string(hi) + ") holds " +
                           std::to_string(sign_changes) +
                           " sign changes; exactly one expected");
      }
      // bisection on Q then Newton polish on M
      double flo = q_factor(ra);
      for (int it = 0; it < 200 && (rb - ra) > 1e-15 * std::max(1.0, rb); ++it) {
        const double mid = 0.5 * (ra + rb);
        const double fm = q_factor(mid);
        if (fm == 0.0) {
          ra = rb = mid;
          break;
        }
        if (flo * fm < 0.0) {
          rb = mid;
        } else {
          ra = mid;
          flo = fm;
        }
      }
      double root = 0.5 * (ra + rb);
      for (int it = 0; it < 6; ++it) {
        const double h = 1e-7 * std::max(1.0, std::abs(root));
        const double f0 = m_eval({root, 0.0}).real();
        const double d = (m_eval({root + h, 0.0}).real() -
                          m_eval({root - h, 0.0}).real()) / (2.0 * h);
        const double step = f0 / d;
        const double next = root - step;
        if (next > lo && next < hi) root = next;
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(root))) break;
      }
      const double pole_left = lo;
      const double pred = pole_left - q_residue(res_j, n) / q_factor_limit();
      zeros.push_back({fam, n, lo, hi, root, pred});
    }
  }
  return zeros;
}

double MellinStructure::g_eval(double v, const ContourSpec& spec) const {
  if (!(v > 0.0) || v == 1.0) throw DomainError("g_eval: V > 0 and V != 1");
  if (!(spec.half_angle > 0.0 && spec.half_angle < 0.5 * kPi)) {
    throw DomainError("g_eval: half_angle in (0, pi/2)");
  }
  if (!(spec.vertex < 0.0)) throw DomainError("g_eval: vertex must be negative");
  const double lnv = std::log(v);
  const double ang = (v < 1.0) ? spec.half_angle : kPi - spec.half_angle;
  const double decay = std::abs(std::cos(ang) * lnv);
  double r_max = spec.r_max;
  if (r_max <= 0.0) {
    r_max = std::max(50.0, 14.0 * std::log(10.0) / std::max(decay, 1e-300));
  }
  const std::complex<double> e_up{std::cos(ang), std::sin(ang)};
  const std::complex<double> e_dn = std::conj(e_up);
  const auto& rule = gl_rule(spec.nodes);

  auto f = [&](std::complex<double> z) {
    return std::exp(z * lnv) / m_eval(z);
  };

  std::complex<double> total{0.0, 0.0};
  double a = 0.0;
  double h = std::min(1.0, r_max / 16.0);
  while (a < r_max) {
    const double b = std::min(a + h, r_max);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::complex<double> acc{0.0, 0.0};
    for (size_t i = 0; i < rule.x.size(); ++i) {
      const double r = mid + half * rule.x[i];
      // incoming along the -angle ray, outgoing along +angle
      acc += rule.w[i] * (f(spec.vertex + r * e_up) * e_up -
                          f(spec.vertex + r * e_dn) * e_dn);
    }
    total += half * acc;
    a = b;
    h *= 1.5;
  }
  const std::complex<double> g = total / std::complex<double>(0.0, -2.0 * kPi);
  const double scale = std::max(1.0, std::abs(g.real()));
  if (std::abs(g.imag()) > 1e-10 * scale) {
    throw NumericError("g_eval: non-real contour result, imag = " +
                       std::to_string(g.imag()));
  }
  return g.real();
}

}  // namespace lincoag::mellin
