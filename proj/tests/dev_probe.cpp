#include <cstdio>

#include "lincoag/lambda_series.hpp"

using namespace lincoag;

int main() {
  for (double s : {1.70, 1.80, 1.95}) {
    const auto lam = series::LambdaSeries::build(SigmaParams::core(s), 480);
    std::printf("sigma=%.2f growth_C=%.3g\n", s, lam.growth_constant());
    for (int k : {10, 50, 100, 200, 300, 400, 480}) {
      std::printf("  k=%3d  a=[% .3e % .3e % .3e]\n", k, lam.coeff(k, 0),
                  lam.coeff(k, 1), lam.coeff(k, 2));
    }
    for (double xi : {0.5, 0.8, 0.9}) {
      std::printf("  Lam(%.2f) = %.12g  bound=%.12g\n", xi, lam.eval(xi, 1e-6),
                  std::pow(xi, s - 2.0));
    }
  }
  return 0;
}
