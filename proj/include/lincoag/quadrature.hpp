#ifndef LINCOAG_QUADRATURE_HPP_
#define LINCOAG_QUADRATURE_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "lincoag/errors.hpp"

namespace lincoag::quad {

// Adaptive Gauss-Kronrod with power-law handling at declared singular
// endpoints.  An endpoint exponent p means the integrand behaves like
// |x - endpoint|^{-p} there (p < 1 after any subtraction done by the caller);
// the interval is mapped by x = a + u^{1/(1-p)} so the transformed integrand
// is bounded and smooth quadrature converges at the usual rate.
struct Spec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double left_exponent = 0.0;
  double right_exponent = 0.0;
  int max_subdivisions = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;  // achieved error estimate
  int evaluations = 0;
};

struct ComplexResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  int evaluations = 0;
};

namespace detail {

// 7-15 Gauss-Kronrod pair (QUADPACK dqk15 constants).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
double vnorm(const T& x) {
  return std::abs(x);
}

template <typename F, typename T>
void gk15(F&& f, double a, double b, T& value, double& error) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  T resk = kWgk[7] * fv[7];
  T resg = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    resk += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  value = resk * h;
  error = vnorm<T>((resk - resg) * h);
}

template <typename T, typename F>
Result run_adaptive(F&& f, double a, double b, const Spec& spec, T& out) {
  T total;
  double err0;
  gk15(f, a, b, total, err0);
  int evals = 15;
  double total_err = err0;
  T sum = total;
  int splits = 0;
  auto tol = [&](double v) { return std::max(spec.abs_tol, spec.rel_tol * v); };
  struct Piece {
    double a, b, error;
    T value;
  };
  std::vector<Piece> pieces;
  pieces.push_back({a, b, err0, total});
  auto resum = [&]() {
    T s{};
    double e = 0.0;
    for (auto& p : pieces) {
      s += p.value;
      e += p.error;
    }
    sum = s;
    total_err = e;
  };
  while (total_err > tol(vnorm<T>(sum))) {
    if (splits >= spec.max_subdivisions) {
      throw QuadratureError("quadrature failed to converge", vnorm<T>(sum), total_err);
    }
    // split the worst piece
    size_t worst = 0;
    for (size_t i = 1; i < pieces.size(); ++i) {
      if (pieces[i].error > pieces[worst].error) worst = i;
    }
    Piece p = pieces[worst];
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      throw QuadratureError("interval collapsed below machine precision",
                            vnorm<T>(sum), total_err);
    }
    Piece left{p.a, m, 0.0, T{}};
    Piece right{m, p.b, 0.0, T{}};
    gk15(f, left.a, left.b, left.value, left.error);
    gk15(f, right.a, right.b, right.value, right.error);
    evals += 30;
    pieces[worst] = left;
    pieces.push_back(right);
    ++splits;
    resum();
  }
  out = sum;
  Result r;
  r.value = 0.0;
  r.error = total_err;
  r.evaluations = evals;
  return r;
}

// Wraps f with the substitution removing a declared power-law endpoint.
template <typename T, typename F>
Result integrate_one_side(F&& f, double a, double b, double p_left, double p_right,
                          const Spec& spec, T& out) {
  if (p_left > 0.0 && p_right > 0.0) {
    const double m = 0.5 * (a + b);
    T v1, v2;
    Spec half = spec;
    Result r1 = integrate_one_side<T>(f, a, m, p_left, 0.0, half, v1);
    Result r2 = integrate_one_side<T>(f, m, b, 0.0, p_right, half, v2);
    out = v1 + v2;
    Result r;
    r.error = r1.error + r2.error;
    r.evaluations = r1.evaluations + r2.evaluations;
    return r;
  }
  if (p_left > 0.0) {
    if (p_left >= 1.0) throw DomainError("endpoint exponent must be < 1");
    const double s = 1.0 / (1.0 - p_left);
    const double umax = std::pow(b - a, 1.0 / s);
    auto g = [&](double u) -> T {
      double x = a + std::pow(u, s);
      if (x <= a) x = std::nextafter(a, b);  // u^s underflowed against a
      return f(x) * static_cast<double>(s * std::pow(u, s - 1.0));
    };
    return run_adaptive<T>(g, 0.0, umax, spec, out);
  }
  if (p_right > 0.0) {
    if (p_right >= 1.0) throw DomainError("endpoint exponent must be < 1");
    const double s = 1.0 / (1.0 - p_right);
    const double umax = std::pow(b - a, 1.0 / s);
    auto g = [&](double u) -> T {
      double x = b - std::pow(u, s);
      if (x >= b) x = std::nextafter(b, a);
      return f(x) * static_cast<double>(s * std::pow(u, s - 1.0));
    };
    return run_adaptive<T>(g, 0.0, umax, spec, out);
  }
  return run_adaptive<T>(f, a, b, spec, out);
}

}  // namespace detail

template <typename F>
Result integrate(F&& f, double a, double b, const Spec& spec = {}) {
  if (!(b > a)) {
    if (b == a) return {0.0, 0.0, 0};
    throw DomainError("integration interval is reversed");
  }
  double out = 0.0;
  Result r = detail::integrate_one_side<double>(f, a, b, spec.left_exponent,
                                                spec.right_exponent, spec, out);
  r.value = out;
  return r;
}

template <typename F>
ComplexResult integrate_complex(F&& f, double a, double b, const Spec& spec = {}) {
  std::complex<double> out{0.0, 0.0};
  Result r = detail::integrate_one_side<std::complex<double>>(
      f, a, b, spec.left_exponent, spec.right_exponent, spec, out);
  ComplexResult cr;
  cr.value = out;
  cr.error = r.error;
  cr.evaluations = r.evaluations;
  return cr;
}

// \int_0^len g(t) dt with g ~ t^{-p} near t = 0, where the caller receives
// the OFFSET from the singular endpoint directly.  For p close to 1 a share
// ~eps^{1-p} of the integral lives within machine epsilon of the endpoint,
// unreachable through an absolute coordinate; this form keeps full accuracy.
template <typename G>
Result integrate_from_singularity(G&& g, double len, double p, const Spec& spec = {}) {
  if (!(len > 0.0)) {
    if (len == 0.0) return {0.0, 0.0, 0};
    throw DomainError("integration length must be positive");
  }
  if (p >= 1.0) throw DomainError("endpoint exponent must be < 1");
  if (p <= 0.0) {
    double out = 0.0;
    Result r = detail::run_adaptive<double>(g, 0.0, len, spec, out);
    r.value = out;
    return r;
  }
  const double s = 1.0 / (1.0 - p);
  const double umax = std::pow(len, 1.0 / s);
  auto h = [&](double u) { return g(std::pow(u, s)) * (s * std::pow(u, s - 1.0)); };
  double out = 0.0;
  Result r = detail::run_adaptive<double>(h, 0.0, umax, spec, out);
  r.value = out;
  return r;
}

// \int_a^\infty f, with f ~ x^{-decay} (decay > 1) at infinity.  Maps the tail
// through x = c/t so no truncation point is ever chosen.
template <typename F>
Result integrate_to_inf(F&& f, double a, double decay, const Spec& spec = {}) {
  if (!(decay > 1.0)) throw DomainError("tail decay exponent must exceed 1");
  const double c = (a > 0.0) ? a : 1.0;
  Result head{0.0, 0.0, 0};
  if (a <= 0.0) {
    Spec hs = spec;
    hs.right_exponent = 0.0;
    head = integrate(f, a, c, hs);
  }
  Spec ts;
  ts.abs_tol = spec.abs_tol;
  ts.rel_tol = spec.rel_tol;
  ts.max_subdivisions = spec.max_subdivisions;
  ts.left_exponent = std::max(0.0, 2.0 - decay);
  auto g = [&](double t) { return f(c / t) * (c / (t * t)); };
  Result tail = integrate(g, 0.0, 1.0, ts);
  Result r;
  r.value = head.value + tail.value;
  r.error = head.error + tail.error;
  r.evaluations = head.evaluations + tail.evaluations;
  return r;
}

}  // namespace lincoag::quad

#endif  // LINCOAG_QUADRATURE_HPP_
