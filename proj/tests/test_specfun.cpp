#include <cmath>
#include <complex>

#include "doctest.h"
#include "lincoag/quadrature.hpp"
#include "lincoag/rng.hpp"
#include "lincoag/specfun.hpp"

using namespace lincoag;
namespace sf = lincoag::specfun;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("gamma at integers and half-integers") {
  CHECK(sf::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sf::gamma(6.0) == doctest::Approx(120.0).epsilon(1e-14));
  CHECK(sf::gamma(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  // against the C library across signs and magnitudes
  for (double x : {0.1, 0.37, 1.9, 4.5, 11.25, -0.3, -2.7, -6.1}) {
    const double ref = std::tgamma(x);
    CHECK(sf::gamma(x) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sf::gamma(0.0), DomainError);
  CHECK_THROWS_AS(sf::gamma(-3.0), DomainError);
}

TEST_CASE("complex gamma: reflection identity on a grid") {
  // |Gamma(z)Gamma(1-z) sin(pi z)/pi - 1| < 1e-10 over 100 non-pole points
  CounterRng rng(2024, 7);
  int checked = 0;
  while (checked < 100) {
    const double re = -40.0 + 80.0 * rng.uniform();
    const double im = -150.0 + 300.0 * rng.uniform();
    if (std::abs(im) < 0.05 && std::abs(re - std::round(re)) < 0.05) continue;
    const std::complex<double> z(re, im);
    // work in logs: the product overflows raw doubles for large |Im z|
    const std::complex<double> lhs =
        sf::log_gamma(z) + sf::log_gamma(1.0 - z) +
        std::log(std::sin(kPi * z) / kPi);
    const std::complex<double> resid = std::exp(lhs) - 1.0;
    CHECK(std::abs(resid) < 1e-10);
    ++checked;
  }
}

TEST_CASE("complex gamma: 12+ digits at a reference point") {
  const std::complex<double> z(0.3, 0.4);
  const std::complex<double> resid =
      sf::gamma(z) * sf::gamma(1.0 - z) * std::sin(kPi * z) / kPi - 1.0;
  CHECK(std::abs(resid) < 1e-12);
  // recurrence Gamma(z+1) = z Gamma(z) far up the imaginary axis
  for (double im : {5.0, 50.0, 180.0}) {
    const std::complex<double> w(12.3, im);
    const std::complex<double> r = sf::gamma(w + 1.0) / (w * sf::gamma(w)) - 1.0;
    CHECK(std::abs(r) < 1e-12);
  }
}

TEST_CASE("beta function and the pole convention") {
  CHECK(sf::beta(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sf::beta(0.2, -0.2) == 0.0);  // x + y = 0: 1/Gamma(0) = 0
  CHECK_THROWS_AS(sf::beta(-1.0, 0.5), DomainError);

  // B(2-sigma, sigma-2+m) against the defining singular integral
  const double sigma = 1.8;
  const double x = 2.0 - sigma, y = sigma - 2.0 + 1.0;
  quad::Spec qs;
  qs.abs_tol = 1e-12;
  qs.rel_tol = 1e-12;
  qs.left_exponent = 1.0 - (2.0 - sigma);  // t^{x-1} = t^{1-sigma}
  qs.right_exponent = 1.0 - y;
  auto f = [&](double t) { return std::pow(t, x - 1.0) * std::pow(1.0 - t, y - 1.0); };
  const double oracle = quad::integrate(f, 0.0, 1.0, qs).value;
  CHECK(sf::beta(x, y) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("phi closed form") {
  const double sigma = 1.8;
  CHECK(sf::phi(0.4, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
  // Phi_{sigma-1}(sigma-2) = 1/(sigma-1), exactly through the 1/Gamma(0) zero
  CHECK(sf::phi(sigma - 1.0, sigma - 2.0) == 1.0 / (sigma - 1.0));
  CHECK(sf::phi(0.8, -0.2) == 1.25);
  CHECK(sf::phi(0.5, 1.0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK_THROWS_AS(sf::phi(1.2, 0.5), DomainError);
  CHECK_THROWS_AS(sf::phi(0.5, -1.5), DomainError);
}

TEST_CASE("phi agrees with the defining singular integral") {
  CounterRng rng(99, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = 0.05 + 0.9 * rng.uniform();
    const double beta = -0.95 + 2.5 * rng.uniform();
    quad::Spec qs;
    qs.abs_tol = 1e-13;
    qs.rel_tol = 1e-11;
    qs.left_exponent = alpha;  // after the -1 subtraction
    auto f = [&](double eta) {
      return std::pow(eta, -(alpha + 1.0)) * std::expm1(beta * std::log1p(-eta));
    };
    const double head = quad::integrate(f, 0.0, 0.5, qs).value;
    // near eta = 1 the (1-eta)^beta factor needs the offset coordinate
    auto g = [&](double t) {
      return std::pow(1.0 - t, -(alpha + 1.0)) * (std::pow(t, beta) - 1.0);
    };
    const double edge =
        quad::integrate_from_singularity(g, 0.5, std::max(0.0, -beta), qs).value;
    const double oracle = head + edge;
    CHECK(sf::phi(alpha, beta) == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("omega values and the sandwich bound") {
  const SigmaParams p = SigmaParams::core(1.8);
  CHECK(sf::omega(0, 0, 0, p) == 0.0);
  for (double s : {1.70, 1.75, 1.80, 1.85, 1.90, 1.95}) {
    CHECK(sf::omega(0, 0, 0, SigmaParams::core(s)) == 0.0);
  }

  // omega(1,0,0) against a Beta integral oracle.  The y = sigma-2 < 0 slot
  // is first lifted through B(x,y) = B(x,y+1)(x+y)/y, whose integral
  // converges; that one is evaluated by singular quadrature.
  {
    const double sigma = 1.8;
    const double x = 2.0 - sigma + 1.0 / 3.0, y = sigma - 2.0;
    quad::Spec qs;
    qs.abs_tol = 1e-13;
    qs.rel_tol = 1e-12;
    qs.left_exponent = 1.0 - x;
    qs.right_exponent = -y;  // (1-t)^{(y+1)-1}
    auto f = [&](double t) { return std::pow(t, x - 1.0) * std::pow(1.0 - t, y); };
    const double b_lifted = quad::integrate(f, 0.0, 1.0, qs).value;
    const double oracle = (y / (sigma - 1.0 - 1.0 / 3.0)) * b_lifted * (x + y) / y;
    CHECK(sf::omega(1, 0, 0, p) == doctest::Approx(oracle).epsilon(1e-10));
  }

  // |omega| ~ (1+m)^{sigma-1-l/3} with a single constant pair per sigma
  for (double s : {1.72, 1.8, 1.93}) {
    const SigmaParams sp = SigmaParams::core(s);
    for (int l = 0; l < 3; ++l) {
      for (int j = 0; j < 3; ++j) {
        double lo = 1e300, hi = 0.0;
        for (int m = 0; m <= 500; ++m) {
          if (l + j + m == 0) continue;
          const double w = std::abs(sf::omega(l, j, m, sp)) /
                           std::pow(1.0 + m, s - 1.0 - l / 3.0);
          lo = std::min(lo, w);
          hi = std::max(hi, w);
        }
        CHECK(lo > 0.0);
        CHECK(hi < 1e300);
        CHECK(hi / lo < 50.0);  // ratio stays bounded across m <= 500
      }
    }
  }
}

TEST_CASE("singular quadrature oracle") {
  quad::Spec qs;
  qs.abs_tol = 1e-12;
  qs.rel_tol = 1e-12;
  qs.left_exponent = 0.8;
  auto f = [](double x) { return std::pow(x, -0.8); };
  CHECK(quad::integrate(f, 0.0, 1.0, qs).value == doctest::Approx(5.0).epsilon(1e-12));

  // int_0^1 eta^{-sigma) [(1-eta)^{sigma-2} - 1] = 1/(sigma-1) at sigma = 1.8
  const double sigma = 1.8;
  quad::Spec qp;
  qp.abs_tol = 1e-12;
  qp.rel_tol = 1e-12;
  qp.left_exponent = sigma - 1.0;
  qp.right_exponent = 2.0 - sigma;
  auto g = [&](double eta) {
    return std::pow(eta, -sigma) * std::expm1((sigma - 2.0) * std::log1p(-eta));
  };
  CHECK(quad::integrate(g, 0.0, 1.0, qp).value ==
        doctest::Approx(1.0 / (sigma - 1.0)).epsilon(1e-10));

  // int_0^inf (1+v)^{-1.8} dv = 1.25
  auto h = [](double v) { return std::pow(1.0 + v, -1.8); };
  CHECK(quad::integrate_to_inf(h, 0.0, 1.8).value == doctest::Approx(1.25).epsilon(1e-10));

  // non-convergence carries the best estimate
  quad::Spec tiny;
  tiny.abs_tol = 1e-30;
  tiny.rel_tol = 1e-30;
  tiny.max_subdivisions = 3;
  auto rough = [](double x) { return std::sqrt(std::abs(x - 0.337)); };
  CHECK_THROWS_AS(quad::integrate(rough, 0.0, 1.0, tiny), QuadratureError);
}

TEST_CASE("sigma params regime gate") {
  CHECK_THROWS_AS(SigmaParams::from_sigma(1.5), DomainError);
  CHECK_THROWS_AS(SigmaParams::from_sigma(5.0 / 3.0), DomainError);
  CHECK_THROWS_AS(SigmaParams::from_sigma(2.0), DomainError);
  const SigmaParams core = SigmaParams::from_sigma(1.9);
  CHECK(core.regime == Regime::core);
  CHECK(core.mu == doctest::Approx(30.0 / 7.0).epsilon(1e-14));
  CHECK(core.mu > 3.0);
  const SigmaParams h = SigmaParams::from_sigma(2.5);
  CHECK(h.regime == Regime::heuristic);
}
