#include "lincoag/kernel.hpp"

#include <cmath>

#include "lincoag/errors.hpp"

namespace lincoag::kern {

namespace {

constexpr double kCj[3] = {1.0, 2.0, 1.0};

// inner factor of the cancellation-free form of Q at y = 1/w:
//   int_0^1 [ (zeta+y)^{-sigma} - zeta^{-sigma} ] [ 1 - (1-zeta)^{sigma-2} ] dzeta
double q_inner(double y, double sigma, double tol) {
  quad::Spec qs;
  qs.abs_tol = tol;
  qs.rel_tol = tol;
  qs.left_exponent = sigma - 1.0;
  qs.right_exponent = 2.0 - sigma;
  auto f = [&](double zeta) {
    const double a = std::pow(zeta, -sigma) * std::expm1(-sigma * std::log1p(y / zeta));
    const double b = -std::expm1((sigma - 2.0) * std::log1p(-zeta));
    return a * b;
  };
  return quad::integrate(f, 0.0, 1.0, qs).value;
}

double q_weight_large(double w, double sigma, double tol) {
  const double y = 1.0 / w;
  const double j3 = std::expm1((1.0 - sigma) * std::log1p(y)) / (sigma - 1.0);
  return y * (q_inner(y, sigma, tol) + j3);
}

double q_weight_direct(double w, double sigma, double tol) {
  quad::Spec qs;
  qs.abs_tol = tol * std::pow(w, sigma - 1.0);
  qs.rel_tol = tol;
  qs.right_exponent = 2.0 - sigma;
  auto f = [&](double z) {
    return std::pow(z + 1.0, -sigma) * std::pow(w - z, sigma - 2.0);
  };
  const double integral = quad::integrate(f, 0.0, w, qs).value;
  return std::pow(w, sigma - 2.0) / (sigma - 1.0) - integral;
}

}  // namespace

double q_weight(double w, const SigmaParams& params, double quad_tol) {
  params.require_core("q_weight");
  if (!(w > 0.0)) throw DomainError("q_weight: w > 0 required");
  // the defining form loses digits to cancellation for large w
  return (w <= 2.0) ? q_weight_direct(w, params.sigma, quad_tol)
                    : q_weight_large(w, params.sigma, quad_tol);
}

std::pair<double, double> c_star(const SigmaParams& params, double quad_tol) {
  params.require_core("c_star");
  const double sigma = params.sigma;
  const double inner_tol = quad_tol * 1e-2;

  quad::Spec head;
  head.abs_tol = quad_tol;
  head.rel_tol = quad_tol;
  head.left_exponent = 2.0 - sigma;  // Q ~ w^{sigma-2}/(sigma-1)
  head.max_subdivisions = 600;
  auto qh = [&](double w) { return q_weight_direct(w, sigma, inner_tol); };
  const double part0 = quad::integrate(qh, 0.0, 1.0, head).value;

  // int_1^inf Q(w) dw = int_0^1 Q(1/y) / y^2 dy, integrand ~ y^{-(sigma-1)}
  quad::Spec tail;
  tail.abs_tol = quad_tol;
  tail.rel_tol = quad_tol;
  tail.left_exponent = sigma - 1.0;
  tail.max_subdivisions = 600;
  auto qt = [&](double y) {
    const double j3 = std::expm1((1.0 - sigma) * std::log1p(y)) / (sigma - 1.0);
    return (q_inner(y, sigma, inner_tol) + j3) / y;
  };
  const double part1 = quad::integrate(qt, 0.0, 1.0, tail).value;

  const double q_integral = part0 + part1;
  if (!(q_integral > 0.0) || !std::isfinite(q_integral)) {
    throw NumericError("c_star: tail integral did not converge");
  }
  return {1.0 / q_integral, q_integral};
}

GreensContext build_greens_context(const series::LambdaProfile& profile,
                                   double quad_tol) {
  GreensContext ctx;
  ctx.params = profile.params();
  ctx.lambda = &profile;
  auto cs = c_star(ctx.params, quad_tol);
  ctx.c_star = cs.first;
  ctx.q_integral = cs.second;
  return ctx;
}

double green_g(double v, double v0, const GreensContext& ctx) {
  if (!(v > 0.0 && v0 > 0.0)) throw DomainError("green_g: V, V0 > 0");
  if (v >= v0) return 0.0;
  const double xi = (v0 - v) / v0;
  return ctx.c_star * std::pow(v0, ctx.params.sigma - 8.0 / 3.0) * (*ctx.lambda)(xi);
}

double p_alpha(double theta, double zeta, double alpha, const GreensContext& ctx,
               double quad_tol) {
  if (!(theta > 0.0 && theta < 1.0 && zeta > 1.0 && alpha > 1.0)) {
    throw DomainError("p_alpha: 0 < theta < 1 < zeta and alpha > 1 required");
  }
  // u = zeta(1-z) - theta walked on a log scale resolves the width-theta
  // boundary layer at z = 1-theta; Lambda's z^{sigma-2} edge sits at the
  // upper end of the s-interval.
  const double sigma = ctx.params.sigma;
  const double s_lo = std::log(theta * (zeta - 1.0));
  const double s_hi = std::log(zeta - theta);
  quad::Spec qs;
  qs.abs_tol = quad_tol;
  qs.rel_tol = quad_tol;
  qs.right_exponent = 2.0 - sigma;
  auto f = [&](double s) {
    const double u = std::exp(s);
    const double z = (zeta - theta - u) / zeta;
    if (z <= 0.0) return 0.0;
    return (*ctx.lambda)(z)*std::exp((1.0 - alpha) * s);
  };
  const double val = quad::integrate(f, s_lo, s_hi, qs).value;
  return std::pow(theta, alpha) * val / zeta;
}

double dirichlet_k(double v, double eta, double v_bar, const GreensContext& ctx,
                   double quad_tol) {
  if (!(v_bar > 0.0 && eta > v_bar && v >= 0.0)) {
    throw DomainError("dirichlet_k: 0 <= V, V-bar > 0, eta > V-bar required");
  }
  if (v >= v_bar) return 0.0;
  if (v == 0.0) return dirichlet_k_at_origin(eta, v_bar, ctx);
  const double theta = v / v_bar;
  const double zeta = eta / v_bar;
  double sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    sum += kCj[j] * p_alpha(theta, zeta, ctx.params.sigma - j / 3.0, ctx, quad_tol);
  }
  return ctx.c_star / v_bar / theta * sum;
}

double dirichlet_k_at_origin(double eta, double v_bar, const GreensContext& ctx) {
  if (!(v_bar > 0.0 && eta > v_bar)) {
    throw DomainError("dirichlet_k_at_origin: eta > V-bar > 0 required");
  }
  const double zeta = eta / v_bar;
  const double lam1 = ctx.lambda->lambda_at_one();
  double sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double alpha = ctx.params.sigma - j / 3.0;
    sum += kCj[j] * std::pow(zeta - 1.0, 1.0 - alpha) / (zeta * (alpha - 1.0));
  }
  return ctx.c_star / v_bar * lam1 * sum;
}

double bvp_source_part(const BVProblem& problem, const GreensContext& ctx, double v,
                       double quad_tol) {
  if (!problem.g) return 0.0;
  if (v >= problem.v_bar) return 0.0;
  const double sigma = ctx.params.sigma;
  // u1(V) = C* V^{sigma-5/3} int_0^{1 - V/V-bar} Lambda(xi) (1-xi)^{2/3-sigma}
  //         g(V/(1-xi)) dxi
  quad::Spec qs;
  qs.abs_tol = quad_tol;
  qs.rel_tol = quad_tol;
  qs.left_exponent = 2.0 - sigma;
  auto f = [&](double xi) {
    return (*ctx.lambda)(xi)*std::pow(1.0 - xi, 2.0 / 3.0 - sigma) *
           problem.g(v / (1.0 - xi));
  };
  const double val = quad::integrate(f, 0.0, 1.0 - v / problem.v_bar, qs).value;
  return ctx.c_star * std::pow(v, sigma - 5.0 / 3.0) * val;
}

double bvp_boundary_part(const BVProblem& problem, const GreensContext& ctx, double v,
                         double quad_tol) {
  if (!problem.psi) return 0.0;
  if (v >= problem.v_bar) return problem.psi(v);
  const double sigma = ctx.params.sigma;
  const double v_bar = problem.v_bar;
  const double theta = v / v_bar;
  // Fubini over the P_alpha definition keeps Lambda on the outer grid only:
  //   u2 = (C*/theta) sum_j c_j theta^{alpha_j} int_0^{1-theta} Lambda(z) W_j dz,
  //   W_j(d) = int_1^inf psi(v_bar zeta) (theta(zeta-1) + zeta d)^{-alpha_j} dzeta
  // written in d = (1-theta) - z, so the boundary layer of width d/theta at
  // zeta = 1 is formed without cancellation.
  double total = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double alpha = sigma - j / 3.0;
    auto w_inner = [&](double d) {
      quad::Spec is;
      is.abs_tol = 1e-300;  // relative-driven; W blows up like d^{1-alpha}
      is.rel_tol = quad_tol * 3e-2;
      is.max_subdivisions = 600;
      // in x = zeta - 1 the integrand is a boundary layer of width d/theta:
      // geometric panels out of the layer, then the power tail
      auto hx = [&](double x) {
        return problem.psi(v_bar * (1.0 + x)) *
               std::pow(theta * x + (1.0 + x) * d, -alpha);
      };
      const double x_out = 1.0;
      double layer = 0.0;
      double a = 0.0;
      double b = std::max(d / theta, x_out * 1e-16);
      while (a < x_out) {
        b = std::min(b, x_out);
        layer += quad::integrate(hx, a, b, is).value;
        a = b;
        b *= 2.0;
      }
      auto h = [&](double zeta) { return hx(zeta - 1.0); };
      return layer + quad::integrate_to_inf(h, 1.0 + x_out, alpha, is).value;
    };
    const double half = 0.5 * (1.0 - theta);
    // z in (0, half]: Lambda edge carries the singularity
    quad::Spec os;
    os.abs_tol = quad_tol;
    os.rel_tol = quad_tol;
    os.left_exponent = 2.0 - sigma;
    auto f_lo = [&](double z) {
      return (*ctx.lambda)(z)*w_inner((1.0 - theta) - z);
    };
    double outer = quad::integrate(f_lo, 0.0, half, os).value;
    // z in (half, 1-theta): W_j ~ d^{1-alpha} is the singular factor
    quad::Spec od;
    od.abs_tol = quad_tol;
    od.rel_tol = quad_tol;
    auto f_hi = [&](double d) {
      return (*ctx.lambda)((1.0 - theta) - d) * w_inner(d);
    };
    outer += quad::integrate_from_singularity(f_hi, half, alpha - 1.0, od).value;
    total += kCj[j] * std::pow(theta, alpha) * outer;
  }
  return ctx.c_star / theta * total;
}

double bvp_eval(const BVProblem& problem, const GreensContext& ctx, double v,
                double quad_tol) {
  if (!(v > 0.0)) throw DomainError("bvp_eval: V > 0 required");
  if (v >= problem.v_bar) return problem.psi ? problem.psi(v) : 0.0;
  return bvp_source_part(problem, ctx, v, quad_tol) +
         bvp_boundary_part(problem, ctx, v, quad_tol);
}

std::vector<double> bvp_solve(const BVProblem& problem, const GreensContext& ctx,
                              const std::vector<double>& grid, double quad_tol) {
  std::vector<double> u;
  u.reserve(grid.size());
  for (double v : grid) u.push_back(bvp_eval(problem, ctx, v, quad_tol));
  return u;
}

}  // namespace lincoag::kern
