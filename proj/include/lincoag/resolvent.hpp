#ifndef LINCOAG_RESOLVENT_HPP_
#define LINCOAG_RESOLVENT_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "lincoag/scatterer_law.hpp"
#include "lincoag/sigma_params.hpp"

namespace lincoag::resolvent {

// Piecewise-linear function on strictly increasing positive nodes, constant
// (= tail_value) for V >= nodes.back(); the representable slice of the test
// class "continuous on [0,inf], constant beyond the cap".
struct GridFunction {
  std::vector<double> nodes;
  std::vector<double> values;
  double tail_value = 0.0;

  double cap() const { return nodes.back(); }
  double operator()(double v) const;
  static GridFunction from_callable(const std::vector<double>& nodes,
                                    const std::function<double(double)>& f);
};

std::vector<double> geometric_grid(double lo, double hi, int n);

// Which jump kernel drives the generator:
//   g_infinity:  v^{-sigma} (handled through the difference form; no
//                regularization error)
//   regularized: (v+epsilon)^{-sigma}
//   law:         a ScattererLaw
//   rescaled:    G_T(v) = T^{sigma mu} G(T^mu v) over a base law
struct GeneratorSpec {
  enum class Kind { g_infinity, regularized, law, rescaled };
  Kind kind = Kind::g_infinity;
  SigmaParams params;
  double epsilon = 0.0;
  std::optional<sim::ScattererLaw> base_law;
  double t_scale = 1.0;

  static GeneratorSpec g_infinity(const SigmaParams& p);
  static GeneratorSpec regularized(const SigmaParams& p, double epsilon);
  static GeneratorSpec law(const sim::ScattererLaw& l);
  static GeneratorSpec rescaled(const sim::ScattererLaw& base, double t);

  double kernel_density(double v) const;
  // int_A^inf kernel(v) v^{j/3} dv; A = 0 gives the full moment I_j
  // (infinite for g_infinity, guarded).
  double kernel_tail_moment(double a, int j) const;
  bool singular_at_zero() const;
  bool integrable() const;  // finite total mass (V = 0 allowed)
};

// Total collision rate R(V) = V^{2/3} I_0 + 2 V^{1/3} I_1 + I_2.
double total_rate(double v, const GeneratorSpec& spec);

// K phi (V) = int kernel(v) (V^{1/3}+v^{1/3})^2 [phi(V+v) - phi(V)] dv for a
// generic callable phi that is constant (= tail_value) beyond cap.
// breakpoints inside (V, cap) split the quadrature at known kinks.
double apply_generator(const std::function<double(double)>& phi, double cap,
                       double tail_value, double v, const GeneratorSpec& spec,
                       double quad_tol = 1e-10,
                       const std::vector<double>& breakpoints = {});
double apply_generator(const GridFunction& phi, double v, const GeneratorSpec& spec,
                       double quad_tol = 1e-10);

// Dense per-grid matrix A with (K phi)(x_i) = sum_j A[i][j] phi_j + b_i tail;
// one assembly amortizes the panel quadratures over many applications.
class GeneratorMatrix {
 public:
  GeneratorMatrix(const std::vector<double>& nodes, const GeneratorSpec& spec,
                  double quad_tol = 1e-10);
  std::vector<double> apply(const std::vector<double>& values, double tail_value) const;
  double max_exit_rate() const { return max_exit_rate_; }
  const std::vector<double>& nodes() const { return nodes_; }
  double coeff(std::size_t i, std::size_t j) const { return coeff_[i * nodes_.size() + j]; }
  double tail(std::size_t i) const { return tail_coeff_[i]; }

 private:
  std::vector<double> nodes_;
  std::vector<double> coeff_;  // row-major (n x n)
  std::vector<double> tail_coeff_;
  double max_exit_rate_ = 0.0;
};

// Solves (I - lambda K) phi = g by the downward Volterra march; phi = g(cap)
// beyond the cap.  Panel updates are solved exactly and then polished by the
// contraction iteration to `fp_tol`.
GridFunction resolvent_solve(const GridFunction& g, double lambda,
                             const GeneratorSpec& spec, double quad_tol = 1e-10,
                             double fp_tol = 1e-10);

// Richardson extrapolation of the regularized resolvent over
// epsilon, 2 epsilon, 4 epsilon with the observed convergence order.
GridFunction resolvent_solve_extrapolated(const GridFunction& g, double lambda,
                                          const SigmaParams& params, double epsilon,
                                          double quad_tol = 1e-10);

struct PregeneratorReport {
  int checked = 0;
  int violations = 0;
  double worst_constant_defect = 0.0;  // max |K 1| over nodes
  double worst_minimum_defect = 0.0;   // max(min g - min phi, ||phi|| - ||g||, 0)
  std::vector<double> violating_v;
};

PregeneratorReport pregenerator_check(const GeneratorSpec& spec, int samples,
                                      double lambda, std::uint64_t seed,
                                      double tol = 1e-8);

// Method-of-lines solution of d phi / dt = K phi through SSP-RK2 with the
// step capped by half the inverse exit rate, so every stage is a convex
// update: constants and ranges are preserved exactly.
struct AdjointSolution {
  std::vector<double> times;
  std::vector<GridFunction> states;
};

AdjointSolution adjoint_evolve(const GridFunction& phi0,
                               const std::vector<double>& t_grid,
                               const GeneratorSpec& spec, double quad_tol = 1e-10);

}  // namespace lincoag::resolvent

#endif  // LINCOAG_RESOLVENT_HPP_
