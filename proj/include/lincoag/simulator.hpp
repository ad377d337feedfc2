#ifndef LINCOAG_SIMULATOR_HPP_
#define LINCOAG_SIMULATOR_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "lincoag/rng.hpp"
#include "lincoag/scatterer_law.hpp"

namespace lincoag::sim {

// Total collision rate R(V) = V^{2/3} I_0 + 2 V^{1/3} I_1 + I_2.
double total_rate(double v, const ScattererLaw& law);

// Jump size with density proportional to G(v) (V^{1/3}+v^{1/3})^2:
// component k picked with weight {V^{2/3} I_0, 2 V^{1/3} I_1, I_2}, then a
// draw from G(v) v^{k/3}.
double sample_jump(double v, const ScattererLaw& law, CounterRng& rng);

struct Trajectory {
  std::uint64_t seed = 0;
  std::vector<std::pair<double, double>> events;  // (t_n, V_n) including start
  double t_end = 0.0;
  double v_end = 0.0;
};

struct SimOptions {
  std::uint64_t event_cap = 200'000'000;
  bool record_events = true;
};

// Exact event-driven path: exponential clocks at the exact state-dependent
// rate, no time discretization.  Throws ResourceError past the event cap.
Trajectory simulate(double v0, double t_end, const ScattererLaw& law,
                    std::uint64_t seed, const SimOptions& opts = {});

// Hybrid macro-stepping used for large-time runs where the event count is
// astronomically beyond direct simulation: within each step (expected
// relative growth <= step_fraction) the largest ~exact_tail_count jumps are
// simulated exactly from the Poisson tail measure and the sub-threshold
// remainder enters as a moment-matched gamma increment.  Small-V and
// near-checkpoint phases fall back to the exact loop.
struct AccelOptions {
  bool enabled = false;
  int exact_tail_count = 160;
  double step_fraction = 0.04;
  std::uint64_t exact_event_budget = 20'000;  // exact-loop events per checkpoint span
};

struct EnsembleOptions {
  SimOptions sim{200'000'000, false};
  AccelOptions accel;
  int threads = 0;  // 0: hardware concurrency
};

struct TrajectoryEnsemble {
  double v0 = 0.0;
  std::uint64_t master_seed = 0;
  double sigma = 0.0;
  std::vector<double> checkpoints;
  // values[c][i]: volume of trajectory i at checkpoint c
  std::vector<std::vector<double>> values;
};

TrajectoryEnsemble ensemble(int n, double v0, const std::vector<double>& checkpoints,
                            const ScattererLaw& law, std::uint64_t master_seed,
                            const EnsembleOptions& opts = {});

// Advances one trajectory state (t, V) to t_target; exact or accelerated.
void advance_to(double& t, double& v, double t_target, const ScattererLaw& law,
                CounterRng& rng, const AccelOptions& accel, std::uint64_t event_cap);

struct SlopeFit {
  double slope = 0.0;
  double stderr_ = 0.0;
};

// Least-squares slope of log(median V) against log t with a trajectory
// bootstrap for the standard error.  Medians, not means: jump sizes have
// infinite mean below sigma = 2.
SlopeFit scaling_exponent(const TrajectoryEnsemble& ens, int bootstrap = 200,
                          std::uint64_t seed = 1234);

struct EmpiricalProfile {
  double time = 0.0;
  double rescale_exponent = 0.0;
  std::vector<double> edges;        // bin edges in xi = V / t^mu
  std::vector<std::int64_t> counts;
  std::int64_t n = 0;
  std::vector<double> xi_sorted;    // all rescaled samples, ascending
  double mass() const;              // exactly 1 by construction
};

EmpiricalProfile profile(const TrajectoryEnsemble& ens, double t, double mu, int bins);

// Two-sample Kolmogorov distance from the sorted samples.
double ks_distance(const EmpiricalProfile& a, const EmpiricalProfile& b);

struct MomentReport {
  double beta = 0.0;
  double gamma = 0.0;
  std::vector<double> tau;        // log-time of each checkpoint
  std::vector<double> m_beta;     // mean (1+xi)^beta
  std::vector<double> m_beta_se;  // bootstrap standard errors
  std::vector<double> m_gamma;    // mean xi^{-gamma}
  std::vector<double> m_gamma_se;
  double bound = 0.0;             // fitted invariant-region radius
  bool bounded = false;           // no upward drift beyond 3 bootstrap sigma
};

MomentReport moments(const TrajectoryEnsemble& ens, double beta, double gamma,
                     double mu, int bootstrap = 200, std::uint64_t seed = 99);

}  // namespace lincoag::sim

#endif  // LINCOAG_SIMULATOR_HPP_
