#ifndef LINCOAG_KERNEL_HPP_
#define LINCOAG_KERNEL_HPP_

#include <functional>
#include <vector>

#include "lincoag/profile.hpp"
#include "lincoag/quadrature.hpp"
#include "lincoag/sigma_params.hpp"

namespace lincoag::kern {

// Everything the fundamental-solution machinery needs: the rescaled profile
// Lambda, the normalization C* = (int_0^inf Q)^{-1}, and the boundary value
// Lambda(1-).
struct GreensContext {
  SigmaParams params;
  const series::LambdaProfile* lambda = nullptr;
  double c_star = 0.0;
  double q_integral = 0.0;
};

GreensContext build_greens_context(const series::LambdaProfile& profile,
                                   double quad_tol = 1e-10);

// Q(w) = w^{sigma-2}/(sigma-1) - int_0^w (z+1)^{-sigma} (w-z)^{sigma-2} dz.
// Strictly positive; computed from the definition for small w and from an
// algebraically equivalent form without large-w cancellation otherwise.
double q_weight(double w, const SigmaParams& params, double quad_tol = 1e-11);

// int_0^inf Q, split at w = 1 with the tail mapped through w -> 1/w so no
// truncation point is needed.  Returns (c_star, q_integral).
std::pair<double, double> c_star(const SigmaParams& params, double quad_tol = 1e-10);

// G(V, V0) = C* V0^{sigma-8/3} Lambda((V0-V)/V0) for V < V0, else 0.
double green_g(double v, double v0, const GreensContext& ctx);

// P_alpha(theta, zeta) = theta^alpha int_0^{1-theta} Lambda(z)
//                        (zeta(1-z)-theta)^{-alpha} dz,  alpha > 1 < zeta.
double p_alpha(double theta, double zeta, double alpha, const GreensContext& ctx,
               double quad_tol = 1e-9);

// Dirichlet kernel K(V, eta; V-bar) = (C*/V-bar) (1/theta) sum_j c_j
// P_{sigma-j/3}(theta, zeta); zero for V >= V-bar.
double dirichlet_k(double v, double eta, double v_bar, const GreensContext& ctx,
                   double quad_tol = 1e-9);

// Continuous extension of K to V = 0.
double dirichlet_k_at_origin(double eta, double v_bar, const GreensContext& ctx);

// Boundary value problem -K_inf u = g on (0, V-bar), u = psi beyond.
struct BVProblem {
  double v_bar = 1.0;
  std::function<double(double)> g;    // interior source on (0, v_bar)
  std::function<double(double)> psi;  // boundary data on [v_bar, inf)
};

// u = u1 + u2 at a point; u1 integrates G against g, u2 integrates K against
// psi with the eta-tail mapped through eta -> 1/eta.
double bvp_eval(const BVProblem& problem, const GreensContext& ctx, double v,
                double quad_tol = 1e-9);
double bvp_source_part(const BVProblem& problem, const GreensContext& ctx, double v,
                       double quad_tol = 1e-9);
double bvp_boundary_part(const BVProblem& problem, const GreensContext& ctx, double v,
                         double quad_tol = 1e-9);

std::vector<double> bvp_solve(const BVProblem& problem, const GreensContext& ctx,
                              const std::vector<double>& grid, double quad_tol = 1e-9);

}  // namespace lincoag::kern

#endif  // LINCOAG_KERNEL_HPP_
