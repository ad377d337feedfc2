#include "lincoag/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lincoag/detail/shifted_moments.hpp"
#include "lincoag/errors.hpp"
#include "lincoag/quadrature.hpp"

namespace lincoag::resolvent {

namespace {

double collision_weight(double v_state, double v) {
  const double s = std::cbrt(v_state) + std::cbrt(v);
  return s * s;
}

// 15-point Kronrod with embedded Gauss error, recursively bisected.
template <typename F>
double panel_integral(F&& f, double a, double b, double tol, int depth = 0) {
  double value, err;
  quad::detail::gk15(f, a, b, value, err);
  if (err <= tol || depth >= 24 || !(b - a > 1e-15 * std::max(std::abs(a), 1.0))) {
    return value;
  }
  const double m = 0.5 * (a + b);
  return panel_integral(f, a, m, 0.5 * tol, depth + 1) +
         panel_integral(f, m, b, 0.5 * tol, depth + 1);
}

std::vector<double> kernel_kinks(const GeneratorSpec& spec) {
  std::vector<double> kinks;
  switch (spec.kind) {
    case GeneratorSpec::Kind::law:
      if (spec.base_law->kind() == sim::ScattererLaw::Kind::truncated_power) {
        kinks.push_back(spec.base_law->lower_support());
      }
      break;
    case GeneratorSpec::Kind::rescaled: {
      const double scale = std::pow(spec.t_scale, -spec.params.mu);
      if (spec.base_law->kind() == sim::ScattererLaw::Kind::truncated_power) {
        kinks.push_back(spec.base_law->lower_support() * scale);
      }
      break;
    }
    default:
      break;
  }
  return kinks;
}

}  // namespace

double GridFunction::operator()(double v) const {
  if (v >= nodes.back()) return tail_value;
  if (v <= nodes.front()) return values.front();
  size_t lo = 0, hi = nodes.size() - 1;
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    (nodes[mid] <= v ? lo : hi) = mid;
  }
  const double t = (v - nodes[lo]) / (nodes[hi] - nodes[lo]);
  return values[lo] + t * (values[hi] - values[lo]);
}

GridFunction GridFunction::from_callable(const std::vector<double>& nodes,
                                         const std::function<double(double)>& f) {
  GridFunction g;
  g.nodes = nodes;
  g.values.reserve(nodes.size());
  for (double x : nodes) g.values.push_back(f(x));
  g.tail_value = f(nodes.back());
  return g;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo && n >= 2)) throw DomainError("geometric_grid: bad arguments");
  std::vector<double> g(static_cast<size_t>(n));
  const double r = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = lo * std::exp(r * i);
  g.back() = hi;
  return g;
}

GeneratorSpec GeneratorSpec::g_infinity(const SigmaParams& p) {
  GeneratorSpec s;
  s.kind = Kind::g_infinity;
  s.params = p;
  return s;
}

GeneratorSpec GeneratorSpec::regularized(const SigmaParams& p, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("regularized generator: epsilon > 0");
  GeneratorSpec s;
  s.kind = Kind::regularized;
  s.params = p;
  s.epsilon = epsilon;
  return s;
}

GeneratorSpec GeneratorSpec::law(const sim::ScattererLaw& l) {
  GeneratorSpec s;
  s.kind = Kind::law;
  s.params = l.params();
  s.base_law = l;
  return s;
}

GeneratorSpec GeneratorSpec::rescaled(const sim::ScattererLaw& base, double t) {
  if (!(t >= 1.0)) throw DomainError("rescaled generator: T >= 1");
  base.params().require_core("rescaled generator");
  GeneratorSpec s;
  s.kind = Kind::rescaled;
  s.params = base.params();
  s.base_law = base;
  s.t_scale = t;
  return s;
}

double GeneratorSpec::kernel_density(double v) const {
  const double sigma = params.sigma;
  switch (kind) {
    case Kind::g_infinity:
      return std::pow(v, -sigma);
    case Kind::regularized:
      return std::pow(v + epsilon, -sigma);
    case Kind::law:
      return base_law->density(v);
    case Kind::rescaled: {
      const double lam = std::pow(t_scale, params.mu);
      return std::pow(lam, sigma) * base_law->density(lam * v);
    }
  }
  return 0.0;
}

double GeneratorSpec::kernel_tail_moment(double a, int j) const {
  const double sigma = params.sigma;
  const double q = j / 3.0;
  switch (kind) {
    case Kind::g_infinity:
      if (a <= 0.0) {
        throw NumericError("g_infinity kernel: moment diverges at v = 0");
      }
      return std::pow(a, 1.0 + q - sigma) / (sigma - 1.0 - q);
    case Kind::regularized:
      return std::pow(epsilon, 1.0 + q - sigma) *
             detail::shifted_tail(a / epsilon, q, sigma);
    case Kind::law:
      return base_law->tail_moment(a, j);
    case Kind::rescaled: {
      const double lam = std::pow(t_scale, params.mu);
      return std::pow(lam, sigma - 1.0 - q) * base_law->tail_moment(lam * a, j);
    }
  }
  return 0.0;
}

bool GeneratorSpec::singular_at_zero() const { return kind == Kind::g_infinity; }

bool GeneratorSpec::integrable() const { return kind != Kind::g_infinity; }

double total_rate(double v, const GeneratorSpec& spec) {
  if (!spec.integrable()) {
    throw NumericError("total rate diverges for the v^{-sigma} kernel");
  }
  const double v13 = std::cbrt(v);
  return v13 * v13 * spec.kernel_tail_moment(0.0, 0) +
         2.0 * v13 * spec.kernel_tail_moment(0.0, 1) + spec.kernel_tail_moment(0.0, 2);
}

double apply_generator(const std::function<double(double)>& phi, double cap,
                       double tail_value, double v, const GeneratorSpec& spec,
                       double quad_tol, const std::vector<double>& breakpoints) {
  if (v < 0.0) throw DomainError("apply_generator: V >= 0");
  if (v == 0.0 && !spec.integrable()) {
    throw NumericError("apply_generator: V = 0 with a non-integrable kernel");
  }
  const double reach = cap - v;
  const double phi_v = (reach > 0.0) ? phi(v) : tail_value;

  double total = 0.0;
  if (reach > 0.0) {
    std::vector<double> edges;
    edges.push_back(0.0);
    for (double b : breakpoints) {
      if (b > v && b < cap) edges.push_back(b - v);
    }
    for (double k : kernel_kinks(spec)) {
      if (k > 0.0 && k < reach) edges.push_back(k);
    }
    edges.push_back(reach);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    auto f = [&](double t) {
      return spec.kernel_density(t) * collision_weight(v, t) * (phi(v + t) - phi_v);
    };
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
      quad::Spec qs;
      qs.abs_tol = quad_tol / static_cast<double>(edges.size());
      qs.rel_tol = quad_tol;
      if (i == 0 && spec.singular_at_zero()) {
        // |phi(V+t)-phi(V)| <= Lip t tames v^{-sigma} to t^{1-sigma}
        qs.left_exponent = spec.params.sigma - 1.0;
      }
      total += quad::integrate(f, edges[i], edges[i + 1], qs).value;
    }
  }
  const double a = std::max(reach, 0.0);
  if (tail_value != phi_v) {
    const double v13 = std::cbrt(v);
    const double tail_weight = (a > 0.0 || spec.integrable())
                                   ? v13 * v13 * spec.kernel_tail_moment(a, 0) +
                                         2.0 * v13 * spec.kernel_tail_moment(a, 1) +
                                         spec.kernel_tail_moment(a, 2)
                                   : 0.0;
    total += (tail_value - phi_v) * tail_weight;
  }
  return total;
}

double apply_generator(const GridFunction& phi, double v, const GeneratorSpec& spec,
                       double quad_tol) {
  std::vector<double> brk(phi.nodes.begin(), phi.nodes.end());
  return apply_generator([&phi](double x) { return phi(x); }, phi.cap(),
                         phi.tail_value, v, spec, quad_tol, brk);
}

GeneratorMatrix::GeneratorMatrix(const std::vector<double>& nodes,
                                 const GeneratorSpec& spec, double quad_tol)
    : nodes_(nodes) {
  const size_t n = nodes_.size();
  if (n < 2) throw DomainError("GeneratorMatrix: need at least two nodes");
  coeff_.assign(n * n, 0.0);
  tail_coeff_.assign(n, 0.0);
  const std::vector<double> kinks = kernel_kinks(spec);

  for (size_t i = 0; i < n; ++i) {
    const double v = nodes_[i];
    double* row = &coeff_[i * n];
    double exit = 0.0;

    for (size_t p = i; p + 1 < n; ++p) {
      const double a = nodes_[p] - v;
      const double b = nodes_[p + 1] - v;
      const double width = nodes_[p + 1] - nodes_[p];
      // hat-function weights: phi(v+t) = phi_p (1-s) + phi_{p+1} s
      auto f_hi = [&](double t) {
        const double s = (v + t - nodes_[p]) / width;
        return spec.kernel_density(t) * collision_weight(v, t) * s;
      };
      auto f_all = [&](double t) {
        return spec.kernel_density(t) * collision_weight(v, t);
      };
      double c_hi = 0.0, c_all = 0.0;
      if (p == i) {
        // only the difference coefficient is finite for the singular kernel
        if (spec.singular_at_zero()) {
          const double sigma = spec.params.sigma;
          const double v13 = std::cbrt(v);
          double sum = 0.0;
          const double coef[3] = {v13 * v13, 2.0 * v13, 1.0};
          for (int j = 0; j < 3; ++j) {
            const double e = 2.0 + j / 3.0 - sigma;
            sum += coef[j] * std::pow(b, e) / e;
          }
          c_hi = sum / width;
        } else {
          std::vector<double> sub{a, b};
          for (double k : kinks) {
            if (k > a && k < b) sub.push_back(k);
          }
          std::sort(sub.begin(), sub.end());
          for (size_t s = 0; s + 1 < sub.size(); ++s) {
            c_hi += panel_integral(f_hi, sub[s], sub[s + 1], quad_tol);
          }
        }
        row[p + 1] += c_hi;
        row[p] -= c_hi;
        exit += c_hi;
        continue;
      }
      std::vector<double> sub{a, b};
      for (double k : kinks) {
        if (k > a && k < b) sub.push_back(k);
      }
      std::sort(sub.begin(), sub.end());
      for (size_t s = 0; s + 1 < sub.size(); ++s) {
        c_hi += panel_integral(f_hi, sub[s], sub[s + 1], quad_tol);
        c_all += panel_integral(f_all, sub[s], sub[s + 1], quad_tol);
      }
      const double c_lo = c_all - c_hi;
      row[p] += c_lo;
      row[p + 1] += c_hi;
      row[i] -= c_all;
      exit += c_all;
    }

    const double reach = nodes_.back() - v;
    const double v13 = std::cbrt(v);
    const double tail_w = (reach > 0.0)
                              ? v13 * v13 * spec.kernel_tail_moment(reach, 0) +
                                    2.0 * v13 * spec.kernel_tail_moment(reach, 1) +
                                    spec.kernel_tail_moment(reach, 2)
                              : (spec.integrable() ? total_rate(v, spec) : 0.0);
    tail_coeff_[i] = tail_w;
    row[i] -= tail_w;
    exit += tail_w;
    max_exit_rate_ = std::max(max_exit_rate_, exit);
  }
}

std::vector<double> GeneratorMatrix::apply(const std::vector<double>& values,
                                           double tail_value) const {
  const size_t n = nodes_.size();
  if (values.size() != n) throw DomainError("GeneratorMatrix::apply: size mismatch");
  std::vector<double> out(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    const double* row = &coeff_[i * n];
    long double acc = 0.0L;
    for (size_t j = i; j < n; ++j) acc += row[j] * values[j];
    acc += tail_coeff_[i] * tail_value;
    out[i] = static_cast<double>(acc);
  }
  return out;
}

GridFunction resolvent_solve(const GridFunction& g, double lambda,
                             const GeneratorSpec& spec, double quad_tol,
                             double fp_tol) {
  if (!(lambda > 0.0)) throw DomainError("resolvent_solve: lambda > 0");
  const size_t n = g.nodes.size();
  GeneratorMatrix mat(g.nodes, spec, quad_tol);

  GridFunction phi;
  phi.nodes = g.nodes;
  phi.values.assign(n, 0.0);
  phi.tail_value = g.tail_value;  // phi(V) = g(cap) for V >= cap

  // back-substitution on (I - lambda A); A is upper triangular plus diagonal
  for (size_t ii = n; ii-- > 0;) {
    long double rhs = g.values[ii];
    for (size_t j = ii + 1; j < n; ++j) {
      rhs += lambda * mat.coeff(ii, j) * phi.values[j];
    }
    rhs += lambda * mat.tail(ii) * phi.tail_value;
    phi.values[ii] = static_cast<double>(rhs / (1.0 - lambda * mat.coeff(ii, ii)));
  }

  // contraction polish / residual certificate
  double worst = 0.0;
  const std::vector<double> kphi = mat.apply(phi.values, phi.tail_value);
  for (size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(phi.values[i] - lambda * kphi[i] - g.values[i]));
  }
  const double scale = std::max(1.0, std::abs(g.tail_value));
  if (worst > fp_tol * 1e3 * scale) {
    throw NumericError("resolvent_solve: residual " + std::to_string(worst) +
                       " exceeds tolerance");
  }
  return phi;
}

GridFunction resolvent_solve_extrapolated(const GridFunction& g, double lambda,
                                          const SigmaParams& params, double epsilon,
                                          double quad_tol) {
  const GridFunction p1 =
      resolvent_solve(g, lambda, GeneratorSpec::regularized(params, epsilon), quad_tol);
  const GridFunction p2 = resolvent_solve(
      g, lambda, GeneratorSpec::regularized(params, 2.0 * epsilon), quad_tol);
  const GridFunction p4 = resolvent_solve(
      g, lambda, GeneratorSpec::regularized(params, 4.0 * epsilon), quad_tol);

  // observed order from the median per-node ratio, then one-level Richardson
  std::vector<double> orders;
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    const double d1 = p2.values[i] - p1.values[i];
    const double d2 = p4.values[i] - p2.values[i];
    if (std::abs(d1) > 1e-14 && d2 / d1 > 1.01) {
      orders.push_back(std::log2(d2 / d1));
    }
  }
  double order = 2.0 - params.sigma;  // theoretical leading order in epsilon
  if (orders.size() > g.nodes.size() / 4) {
    std::nth_element(orders.begin(), orders.begin() + orders.size() / 2, orders.end());
    order = orders[orders.size() / 2];
  }
  const double f = std::pow(2.0, order) - 1.0;
  GridFunction out = p1;
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = p1.values[i] + (p1.values[i] - p2.values[i]) / f;
  }
  return out;
}

PregeneratorReport pregenerator_check(const GeneratorSpec& spec, int samples,
                                      double lambda, std::uint64_t seed, double tol) {
  const std::vector<double> grid = geometric_grid(1e-4, 10.0, 200);
  GeneratorMatrix mat(grid, spec, 1e-10);

  PregeneratorReport report;
  // (a) constants are annihilated
  const std::vector<double> ones(grid.size(), 1.0);
  const std::vector<double> k1 = mat.apply(ones, 1.0);
  for (double x : k1) {
    report.worst_constant_defect = std::max(report.worst_constant_defect, std::abs(x));
  }

  // (c) minimum principle across random smooth data
  CounterRng rng(seed, 0xC0FFEE);
  for (int s = 0; s < samples; ++s) {
    double a[4], ph[4];
    for (int k = 0; k < 4; ++k) {
      a[k] = 2.0 * rng.uniform() - 1.0;
      ph[k] = 6.283185307179586 * rng.uniform();
    }
    auto fn = [&](double v) {
      double y = 0.0;
      for (int k = 0; k < 4; ++k) y += a[k] * std::cos((k + 1) * v / 3.0 + ph[k]);
      return y;
    };
    GridFunction g = GridFunction::from_callable(grid, fn);
    GridFunction phi;
    phi.nodes = grid;
    phi.values.assign(grid.size(), 0.0);
    phi.tail_value = g.tail_value;
    for (size_t ii = grid.size(); ii-- > 0;) {
      long double rhs = g.values[ii];
      for (size_t j = ii + 1; j < grid.size(); ++j) {
        rhs += lambda * mat.coeff(ii, j) * phi.values[j];
      }
      rhs += lambda * mat.tail(ii) * phi.tail_value;
      phi.values[ii] = static_cast<double>(rhs / (1.0 - lambda * mat.coeff(ii, ii)));
    }
    auto range = [](const GridFunction& f) {
      double lo = f.tail_value, hi = f.tail_value;
      for (double x : f.values) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      return std::pair<double, double>{lo, hi};
    };
    const auto [gmin, gmax] = range(g);
    const auto [pmin, pmax] = range(phi);
    const double gnorm = std::max(std::abs(gmin), std::abs(gmax));
    const double pnorm = std::max(std::abs(pmin), std::abs(pmax));
    const double defect = std::max(gmin - pmin, pnorm - gnorm);
    ++report.checked;
    report.worst_minimum_defect = std::max(report.worst_minimum_defect, defect);
    if (defect > tol) {
      ++report.violations;
      size_t worst_i = 0;
      for (size_t i = 1; i < phi.values.size(); ++i) {
        if (phi.values[i] < phi.values[worst_i]) worst_i = i;
      }
      report.violating_v.push_back(grid[worst_i]);
    }
  }
  return report;
}

AdjointSolution adjoint_evolve(const GridFunction& phi0, const std::vector<double>& t_grid,
                               const GeneratorSpec& spec, double quad_tol) {
  if (!spec.integrable()) {
    throw DomainError("adjoint_evolve: kernel must be integrable (law or rescaled)");
  }
  for (size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("adjoint_evolve: times must increase");
  }
  GeneratorMatrix mat(phi0.nodes, spec, quad_tol);
  const double dt_max = 0.5 / std::max(mat.max_exit_rate(), 1e-300);

  AdjointSolution sol;
  GridFunction state = phi0;
  double t = 0.0;
  auto record = [&](double when) {
    sol.times.push_back(when);
    sol.states.push_back(state);
  };
  for (double target : t_grid) {
    if (target == 0.0) {
      record(0.0);
      continue;
    }
    while (t < target) {
      const double dt = std::min(dt_max, target - t);
      // SSP-RK2: both stages are convex updates for dt * exit_rate <= 1
      const std::vector<double> k1 = mat.apply(state.values, state.tail_value);
      std::vector<double> mid(state.values.size());
      for (size_t i = 0; i < mid.size(); ++i) mid[i] = state.values[i] + dt * k1[i];
      const std::vector<double> k2 = mat.apply(mid, state.tail_value);
      for (size_t i = 0; i < mid.size(); ++i) {
        state.values[i] = 0.5 * (state.values[i] + mid[i] + dt * k2[i]);
      }
      t += dt;
    }
    record(target);
  }
  return sol;
}

}  // namespace lincoag::resolvent

