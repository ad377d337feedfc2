#ifndef LINCOAG_PROFILE_HPP_
#define LINCOAG_PROFILE_HPP_

#include <memory>

#include "lincoag/lambda_series.hpp"
#include "lincoag/mellin.hpp"

namespace lincoag::series {

// Lambda on the whole of (0,1): the Frobenius series up to series_switch,
// the Mellin contour G(1-xi)/K-bar beyond it, where the series tail is no
// longer controllable (radius of convergence is exactly 1).
class LambdaProfile {
 public:
  static constexpr double kDefaultSwitch = 0.9;

  LambdaProfile(const SigmaParams& params, int order = LambdaSeries::kDefaultOrder,
                double series_switch = kDefaultSwitch)
      : params_(params),
        series_(LambdaSeries::build(params, order)),
        mellin_(mellin::MellinStructure::build(params)),
        switch_(series_switch) {}

  double operator()(double xi) const {
    // the cancellation guard pulls the switch below 0.9 near sigma = 5/3,
    // where the coefficient table transits through huge values
    if (xi <= switch_ && series_.usable(xi)) return series_.eval(xi);
    return mellin_.g_eval(1.0 - xi) / mellin_.k_bar();
  }

  double lambda_at_one() const { return mellin_.lambda_at_one(); }
  double series_switch() const { return switch_; }
  const SigmaParams& params() const { return params_; }
  const LambdaSeries& series() const { return series_; }
  const mellin::MellinStructure& mellin_structure() const { return mellin_; }

 private:
  SigmaParams params_;
  LambdaSeries series_;
  mellin::MellinStructure mellin_;
  double switch_;
};

}  // namespace lincoag::series

#endif  // LINCOAG_PROFILE_HPP_
