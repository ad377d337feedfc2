#include <cmath>

#include "doctest.h"
#include "lincoag/lambda_series.hpp"
#include "lincoag/profile.hpp"
#include "lincoag/specfun.hpp"

using namespace lincoag;
using series::LambdaSeries;

TEST_CASE("f_taylor binomial coefficients") {
  const auto f1 = series::f_taylor(1, 1);
  CHECK(f1.coeffs[0] == 2.0);
  CHECK(f1.coeffs[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const auto f2 = series::f_taylor(2, 1);
  CHECK(f2.coeffs[0] == 1.0);
  CHECK(f2.coeffs[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  // |b_k| <= C (1+delta/3)^k for any delta in (0,1)
  const auto f = series::f_taylor(1, 400);
  for (double delta : {0.05, 0.5}) {
    double c = 0.0;
    for (size_t k = 0; k < f.coeffs.size(); ++k) {
      c = std::max(c, std::abs(f.coeffs[k]) / std::pow(1.0 + delta / 3.0, double(k)));
    }
    CHECK(c < 1e3);
  }
}

TEST_CASE("recursion start: a00 and the hand-unrolled a01") {
  for (double s : {1.72, 1.8, 1.9}) {
    const SigmaParams p = SigmaParams::core(s);
    const LambdaSeries lam = LambdaSeries::build(p, 8);
    CHECK(lam.coeff(0, 0) == 1.0);
    // k = 0, s = 1: only (l = 1, j = 0) has rho = 1, tau = 0
    const double expected =
        -2.0 * specfun::omega(1, 0, 0, p) / specfun::omega(0, 1, 0, p);
    CHECK(lam.coeff(0, 1) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("growth certificate at sigma = 1.8, K = 200, delta = 0.05") {
  const SigmaParams p = SigmaParams::core(1.8);
  const LambdaSeries lam = LambdaSeries::build(p, 200, 0.05);
  CHECK(lam.growth_constant() < 50.0);
  for (int k = 0; k <= 200; ++k) {
    double row = 0.0;
    for (int j = 0; j < 3; ++j) row = std::max(row, std::abs(lam.coeff(k, j)));
    CHECK(row <= lam.growth_constant() * std::pow(1.05, k) * (1.0 + 1e-12));
  }
}

TEST_CASE("series bounds 0 < Lambda <= xi^{sigma-2} on a grid, six sigmas") {
  // near sigma = 5/3 the raw series cancels catastrophically above
  // xi ~ 0.7, so the full-range check goes through the profile (series
  // plus contour fallback)
  for (double s : {1.70, 1.75, 1.80, 1.85, 1.90, 1.95}) {
    const series::LambdaProfile lam(SigmaParams::core(s), 480);
    for (int i = 1; i <= 200; ++i) {
      const double xi = static_cast<double>(i) / 201.0;
      const double v = lam(xi);
      CHECK(v > 0.0);
      CHECK(v <= std::pow(xi, s - 2.0) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("small-xi asymptotics is governed by the a01 correction") {
  const double s = 1.8;
  const LambdaSeries lam = LambdaSeries::build(SigmaParams::core(s), 200);
  const double xi = 1e-6;
  const double ratio = lam.eval(xi) * std::pow(xi, 2.0 - s);
  // leading deviation a01 xi^{1/3}
  const double predicted = 1.0 + lam.coeff(0, 1) * std::cbrt(xi);
  CHECK(ratio == doctest::Approx(predicted).epsilon(1e-4));
  CHECK(std::abs(ratio - 1.0) < 2e-2);
}

TEST_CASE("h_eval: remainder and its envelope") {
  const double s = 1.8;
  const LambdaSeries lam = LambdaSeries::build(SigmaParams::core(s), 440);
  CHECK(lam.h_eval(0.5) ==
        doctest::Approx(lam.eval(0.5) - std::pow(0.5, s - 2.0)).epsilon(1e-13));
  // |H| <= C xi^{sigma-2+1/3}: the rescaled remainder stays bounded as xi -> 0
  double c_fit = 0.0;
  for (double xi : {1e-6, 1e-4, 1e-2, 0.1, 0.3, 0.6, 0.9}) {
    c_fit = std::max(c_fit, std::abs(lam.h_eval(xi)) / std::pow(xi, s - 2.0 + 1.0 / 3.0));
  }
  CHECK(c_fit < 10.0);
  for (double xi : {1e-7, 1e-5, 1e-3}) {
    CHECK(std::abs(lam.h_eval(xi)) <= 1.05 * c_fit * std::pow(xi, s - 2.0 + 1.0 / 3.0));
  }
}

TEST_CASE("difference bound: |Lambda(xi(1-zeta)) - Lambda(xi)| envelope") {
  const double s = 1.8, r_cap = 0.9;
  const LambdaSeries lam = LambdaSeries::build(SigmaParams::core(s), 480);
  double c_fit = 0.0;
  for (double xi : {0.05, 0.2, 0.4, 0.6, 0.8, r_cap}) {
    for (double zeta : {1e-4, 1e-2, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
      const double d = std::abs(lam.eval_diff(xi, zeta));
      const double env = std::pow(xi, s - 2.0) * zeta * std::pow(1.0 - zeta, s - 2.0);
      c_fit = std::max(c_fit, d / env);
    }
  }
  CHECK(c_fit < 20.0);
  // frozen regression guard for the fitted constant at (sigma, R) = (1.8, 0.9)
  CHECK(c_fit < 3.0);
}

TEST_CASE("eval_diff agrees with the direct difference away from cancellation") {
  const LambdaSeries lam = LambdaSeries::build(SigmaParams::core(1.8), 300);
  for (double xi : {0.2, 0.5, 0.8}) {
    for (double zeta : {0.1, 0.45, 0.9}) {
      const double direct = lam.eval(xi * (1.0 - zeta)) - lam.eval(xi);
      CHECK(lam.eval_diff(xi, zeta) == doctest::Approx(direct).epsilon(1e-11));
    }
  }
}

TEST_CASE("tail guard reports the required order") {
  const LambdaSeries lam = LambdaSeries::build(SigmaParams::core(1.8), 30);
  CHECK_THROWS_AS(lam.eval(0.89), NumericError);
  CHECK_NOTHROW(lam.eval(0.1));
}

TEST_CASE("trial function xi^{sigma-2}: the sigma-1 pair cancels exactly") {
  // -D^{sigma-1}(xi^{sigma-2}) + xi^{-(sigma-1)}/(sigma-1) xi^{sigma-2} = 0
  const double sigma = 1.8;
  const double xi = 0.37;
  quad::Spec qs;
  qs.abs_tol = 1e-12;
  qs.rel_tol = 1e-12;
  qs.left_exponent = sigma - 1.0;
  auto f = [&](double eta) {
    // difference through expm1: raw subtraction noise blows up under eta^{-sigma}
    return std::pow(eta, -sigma) * std::pow(xi, sigma - 2.0) *
           std::expm1((sigma - 2.0) * std::log1p(-eta / xi));
  };
  const double head = quad::integrate(f, 0.0, 0.5 * xi, qs).value;
  // offset coordinate t = xi - eta resolves the edge power exactly
  auto g = [&](double t) {
    return std::pow(xi - t, -sigma) *
           (std::pow(t, sigma - 2.0) - std::pow(xi, sigma - 2.0));
  };
  const double edge = quad::integrate_from_singularity(g, 0.5 * xi, 2.0 - sigma, qs).value;
  const double d = head + edge;
  const double local = std::pow(xi, -(sigma - 1.0)) / (sigma - 1.0) * std::pow(xi, sigma - 2.0);
  CHECK(std::abs(-d + local) < 1e-9 * local);
}

TEST_CASE("residual of the nonlocal equation") {
  const SigmaParams p = SigmaParams::core(1.8);
  const LambdaSeries lam = LambdaSeries::build(p, 440);
  for (double xi : {0.05, 0.3, 0.6, 0.9}) {
    const double r = series::residual(lam, xi);
    CHECK(std::abs(r) < 1e-4 * std::pow(xi, p.sigma - 2.0));
  }
}

TEST_CASE("perturbed leading coefficient is loudly detected") {
  const SigmaParams p = SigmaParams::core(1.8);
  const LambdaSeries lam = LambdaSeries::build(p, 120);
  const LambdaSeries bad = lam.with_coeff(0, 0, 1.1);
  const double xi = 0.3;
  const double r_good = series::residual(lam, xi);
  const double r_bad = series::residual(bad, xi);
  CHECK(std::abs(r_good) < 1e-6);
  CHECK(std::abs(r_bad) > 1e-2 * std::pow(xi, p.sigma - 2.0));
}
