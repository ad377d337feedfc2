#ifndef LINCOAG_SIGMA_PARAMS_HPP_
#define LINCOAG_SIGMA_PARAMS_HPP_

#include <cmath>
#include <limits>
#include <string>

#include "lincoag/errors.hpp"

namespace lincoag {

enum class Regime { core, heuristic };

// The exponent sigma of the scatterer tail v^{-sigma} and the derived scaling
// exponent mu = 1/(sigma - 5/3).  Every module gates its domain on this.
//
// core:      5/3 < sigma < 2, mu = 1/(sigma - 5/3) > 3
// heuristic: sigma > 2, growth exponent is 3 and mu is unset
//
// sigma <= 5/3 is rejected outright: the collision integral diverges and the
// tagged particle blows up in finite time.
struct SigmaParams {
  double sigma = 0.0;
  double mu = std::numeric_limits<double>::quiet_NaN();
  Regime regime = Regime::core;

  static SigmaParams core(double sigma) {
    if (!(sigma > 5.0 / 3.0 && sigma < 2.0)) {
      throw DomainError("sigma=" + std::to_string(sigma) +
                        " outside the core regime (5/3, 2)");
    }
    SigmaParams p;
    p.sigma = sigma;
    p.mu = 1.0 / (sigma - 5.0 / 3.0);
    p.regime = Regime::core;
    return p;
  }

  static SigmaParams heuristic(double sigma) {
    if (!(sigma > 2.0)) {
      throw DomainError("sigma=" + std::to_string(sigma) +
                        " outside the heuristic regime (2, inf)");
    }
    SigmaParams p;
    p.sigma = sigma;
    p.regime = Regime::heuristic;
    return p;
  }

  // Picks the regime from sigma; rejects sigma <= 5/3 and the boundary sigma = 2.
  static SigmaParams from_sigma(double sigma) {
    if (sigma > 5.0 / 3.0 && sigma < 2.0) return core(sigma);
    if (sigma > 2.0) return heuristic(sigma);
    throw DomainError("sigma=" + std::to_string(sigma) +
                      " not in (5/3, 2) or (2, inf)");
  }

  bool is_core() const { return regime == Regime::core; }

  void require_core(const char* who) const {
    if (regime != Regime::core) {
      throw DomainError(std::string(who) + " requires the core regime 5/3 < sigma < 2");
    }
  }
};

}  // namespace lincoag

#endif  // LINCOAG_SIGMA_PARAMS_HPP_
