#include <cmath>
#include <complex>

#include "doctest.h"
#include "lincoag/lambda_series.hpp"
#include "lincoag/mellin.hpp"
#include "lincoag/quadrature.hpp"
#include "lincoag/rng.hpp"

using namespace lincoag;
using mellin::ContourSpec;
using mellin::MellinStructure;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// exp(w) - 1 without cancellation for small |w|
std::complex<double> cexpm1(std::complex<double> w) {
  if (std::abs(w) > 0.5) return std::exp(w) - 1.0;
  std::complex<double> term = w, sum = w;
  for (int k = 2; k < 24; ++k) {
    term *= w / static_cast<double>(k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// direct defining integral of M(z), valid for Re z < 0
std::complex<double> m_integral(std::complex<double> z, double sigma) {
  const double cj[3] = {1.0, 2.0, 1.0};
  std::complex<double> total{0.0, 0.0};
  for (int j = 0; j < 3; ++j) {
    const double p = sigma - j / 3.0;
    quad::Spec qs;
    qs.abs_tol = 1e-12;
    qs.rel_tol = 1e-11;
    qs.left_exponent = p - 1.0;  // (1+eta)^z - 1 ~ z eta at 0
    auto f = [&](double eta) {
      return cexpm1(z * std::log1p(eta)) * std::pow(eta, -p);
    };
    // head on [0,1], tail decays like eta^{-p} (the -1 dominates)
    const std::complex<double> head = quad::integrate_complex(f, 0.0, 1.0, qs).value;
    quad::Spec ts;
    ts.abs_tol = 1e-12;
    ts.rel_tol = 1e-11;
    ts.left_exponent = 2.0 - p;
    auto g = [&](double t) { return f(1.0 / t) / (t * t); };
    const std::complex<double> tail = quad::integrate_complex(g, 0.0, 1.0, ts).value;
    total += cj[j] * (head + tail);
  }
  return total;
}

}  // namespace

TEST_CASE("M(z): prefactor zero at the origin and pole guard") {
  const MellinStructure m = MellinStructure::build(SigmaParams::core(1.8));
  CHECK(std::abs(m.m_eval({0.0, 0.0})) == 0.0);
  CHECK_THROWS_AS(m.m_eval({1.8 - 1.0, 0.0}), NumericError);  // z_{0,0}
}

TEST_CASE("M(z) matches the defining integral on the left half-plane") {
  const double sigma = 1.8;
  const MellinStructure m = MellinStructure::build(SigmaParams::core(sigma));
  CHECK(std::abs(m.m_eval({-1.0, 0.0}) - m_integral({-1.0, 0.0}, sigma)) <
        1e-8 * std::abs(m.m_eval({-1.0, 0.0})));

  CounterRng rng(5, 5);
  for (int k = 0; k < 20; ++k) {
    const std::complex<double> z(-3.0 + 2.8 * rng.uniform(),
                                 -5.0 + 10.0 * rng.uniform());
    const std::complex<double> closed = m.m_eval(z);
    const std::complex<double> direct = m_integral(z, sigma);
    CHECK(std::abs(closed - direct) < 1e-7 * std::abs(direct));
  }
}

TEST_CASE("|M(z)| growth window away from poles and zeros") {
  const MellinStructure m = MellinStructure::build(SigmaParams::core(1.8));
  const double sigma = 1.8;
  double lo = 1e300, hi = 0.0;
  for (double r : {5.0, 20.0, 80.0, 300.0}) {
    for (double ang : {0.4, 0.9, 1.6, 2.4, 2.9}) {
      const std::complex<double> z = r * std::complex<double>(std::cos(ang), std::sin(ang));
      const double mv = std::abs(m.m_eval(z));
      lo = std::min(lo, mv / std::pow(r, sigma - 5.0 / 3.0));
      hi = std::max(hi, mv / std::pow(r, sigma - 4.0 / 3.0));
    }
  }
  CHECK(lo > 1e-2);
  CHECK(hi < 1e2);
}

TEST_CASE("M'(0): positivity grid and finite-difference oracle") {
  for (double s : {1.70, 1.75, 1.80, 1.85, 1.90, 1.95}) {
    CHECK(MellinStructure::build(SigmaParams::core(s)).m_prime_zero() > 0.0);
  }
  const MellinStructure m = MellinStructure::build(SigmaParams::core(1.8));
  const double h = 1e-5;
  const double fd =
      (m.m_eval({h, 0.0}).real() - m.m_eval({-h, 0.0}).real()) / (2.0 * h);
  CHECK(m.m_prime_zero() == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("zero families, brackets, interlacing, asymptotic prediction") {
  const double sigma = 1.8;
  const MellinStructure m = MellinStructure::build(SigmaParams::core(sigma));
  const auto zeros = m.find_zeros(10);
  CHECK(zeros.size() == 33);

  double root1[11], root2[11];
  for (const auto& z : zeros) {
    if (z.family == 0) {
      CHECK(z.root == static_cast<double>(z.n));
      continue;
    }
    CHECK(z.root > z.lo);
    CHECK(z.root < z.hi);
    CHECK(std::abs(m.m_eval({z.root, 0.0}).real()) < 1e-10);
    // prediction within 10% of the bracket width at n = 10
    if (z.n == 10) CHECK(std::abs(z.root - z.asymptotic) < 0.1 * (z.hi - z.lo));
    (z.family == 1 ? root1 : root2)[z.n] = z.root;
  }
  // n = 0 family-1 bracket from the paper: (sigma-5/3, sigma-4/3)
  CHECK(root1[0] > sigma - 5.0 / 3.0);
  CHECK(root1[0] < sigma - 4.0 / 3.0);
  // interlacing z_{2,n} < zhat_{1,n} < z_{1,n} < zhat_{2,n} < z_{2,n+1}
  for (int n = 0; n <= 10; ++n) {
    CHECK(m.pole(2, n) < root1[n]);
    CHECK(root1[n] < m.pole(1, n));
    CHECK(m.pole(1, n) < root2[n]);
    CHECK(root2[n] < m.pole(2, n + 1));
  }
}

TEST_CASE("residues of the analytic factor are negative and decay") {
  const MellinStructure m = MellinStructure::build(SigmaParams::core(1.8));
  for (int j = 1; j <= 2; ++j) {
    double prev = std::abs(m.q_residue(j, 0));
    for (int n = 1; n <= 30; ++n) {
      const double r = m.q_residue(j, n);
      CHECK(r < 0.0);
      CHECK(std::abs(r) < prev);
      prev = std::abs(r);
    }
    CHECK(std::abs(m.q_residue(j, 30)) < 0.5 * std::abs(m.q_residue(j, 0)));
  }
}

TEST_CASE("k_bar closed form and positivity") {
  for (double s : {1.70, 1.80, 1.95}) {
    const double kb = mellin::k_bar(SigmaParams::core(s));
    CHECK(kb > 0.0);
    CHECK(kb == doctest::Approx((s - 1.0) * std::sin(kPi * (s - 1.0)) / kPi).epsilon(1e-15));
  }
  // K-bar -> 0 as sigma -> 2^-
  CHECK(mellin::k_bar(SigmaParams::core(1.999999)) < 1e-5);
}

TEST_CASE("contour evaluation of G") {
  const MellinStructure m = MellinStructure::build(SigmaParams::core(1.8));
  // limit at the origin
  CHECK(std::abs(m.g_eval(1e-4) - 1.0 / m.m_prime_zero()) < 1e-3);
  // numerical zero past V = 1
  CHECK(std::abs(m.g_eval(1.5)) < 1e-8);
  // half-angle independence (contour deformation)
  const double ref = m.g_eval(0.5);
  for (double ang : {kPi / 6.0, kPi / 3.0}) {
    ContourSpec spec;
    spec.half_angle = ang;
    CHECK(m.g_eval(0.5, spec) == doctest::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("two-route agreement: series Lambda vs contour G") {
  const SigmaParams p = SigmaParams::core(1.8);
  const MellinStructure m = MellinStructure::build(p);
  const series::LambdaSeries lam = series::LambdaSeries::build(p, 480);
  for (double xi : {0.05, 0.3, 0.5, 0.9}) {
    const double via_series = lam.eval(xi);
    const double via_contour = m.g_eval(1.0 - xi) / m.k_bar();
    CHECK(via_contour == doctest::Approx(via_series).epsilon(1e-6));
  }
}

TEST_CASE("boundary value Lambda(1-)") {
  const MellinStructure m = MellinStructure::build(SigmaParams::core(1.8));
  CHECK(m.lambda_at_one() > 0.0);
  CHECK(m.lambda_at_one() ==
        doctest::Approx(1.0 / (m.k_bar() * m.m_prime_zero())).epsilon(1e-15));
  // consistency against the contour near the endpoints
  CHECK(m.g_eval(1e-6) / m.k_bar() ==
        doctest::Approx(m.lambda_at_one()).epsilon(2e-2));
  // G(V)/ (1-V)^{sigma-2} -> K-bar as V -> 1^- (asymptotics cross-check)
  const double v = 0.999;
  CHECK(m.g_eval(v) / std::pow(1.0 - v, 1.8 - 2.0) ==
        doctest::Approx(m.k_bar()).epsilon(0.05));
}
