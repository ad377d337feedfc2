#ifndef LINCOAG_SCATTERER_LAW_HPP_
#define LINCOAG_SCATTERER_LAW_HPP_

#include <vector>

#include "lincoag/rng.hpp"
#include "lincoag/sigma_params.hpp"

namespace lincoag::sim {

// Scatterer-volume law G(v) with tail v^{-sigma}.  G is an L1 intensity, not
// a normalized density: jump rates use it directly.
//
//   shifted_power:   G(v) = (1+v)^{-sigma}
//   truncated_power: G(v) = v^{-sigma} for v >= v_min
//   tabulated:       piecewise-constant table, exact v^{-sigma} tail beyond it
//
// Construction checks the integrability requirement (needs sigma > 5/3, which
// SigmaParams already enforces) and that v^sigma G(v) is within 1% of 1 at
// v = 1e6.
class ScattererLaw {
 public:
  enum class Kind { shifted_power, truncated_power, tabulated };

  static ScattererLaw shifted(const SigmaParams& params);
  static ScattererLaw truncated(const SigmaParams& params, double v_min);
  static ScattererLaw tabulated(const SigmaParams& params, std::vector<double> edges,
                                std::vector<double> density);

  Kind kind() const { return kind_; }
  const SigmaParams& params() const { return params_; }
  double sigma() const { return params_.sigma; }
  double lower_support() const;

  double density(double v) const;

  // I_j = int G(v) v^{j/3} dv
  double moment(int j) const;
  // int_A^inf G(v) v^{j/3} dv
  double tail_moment(double a, int j) const;
  // int_0^B G(v) v^{p + j/3} dv for p in {1, 2} (drift / variance of the
  // small-jump aggregate)
  double partial_moment(double b, int j, int p) const;

  // draw from density proportional to G(v) v^{j/3}, optionally conditioned
  double sample_component(CounterRng& rng, int j) const;
  double sample_component_above(CounterRng& rng, int j, double b) const;
  double sample_component_below(CounterRng& rng, int j, double b) const;

 private:
  ScattererLaw(Kind kind, const SigmaParams& params) : kind_(kind), params_(params) {}
  void validate_tail() const;

  Kind kind_;
  SigmaParams params_;
  double v_min_ = 0.0;                // truncated_power
  std::vector<double> edges_;         // tabulated
  std::vector<double> dens_;          // tabulated, dens_[i] on [edges_[i], edges_[i+1])
};

}  // namespace lincoag::sim

#endif  // LINCOAG_SCATTERER_LAW_HPP_
