#include "lincoag/lambda_series.hpp"

#include <cmath>
#include <string>

#include "lincoag/errors.hpp"
#include "lincoag/specfun.hpp"

namespace lincoag::series {

TaylorF f_taylor(int l, int order) {
  if (l < 1 || l > 2 || order < 0) {
    throw DomainError("f_taylor: l in {1,2}, order >= 0");
  }
  TaylorF f;
  f.l = l;
  f.coeffs.resize(static_cast<size_t>(order) + 1);
  f.coeffs[0] = (l == 1) ? 2.0 : 1.0;
  for (int k = 1; k <= order; ++k) {
    f.coeffs[static_cast<size_t>(k)] =
        f.coeffs[static_cast<size_t>(k) - 1] * ((l / 3.0 + k - 1.0) / k);
  }
  return f;
}

double f_weight(int l, double xi) {
  switch (l) {
    case 0: return 1.0;
    case 1: return 2.0 / std::cbrt(1.0 - xi);
    case 2: return 1.0 / std::cbrt((1.0 - xi) * (1.0 - xi));
    default: throw DomainError("f_weight: l in {0,1,2}");
  }
}

LambdaSeries LambdaSeries::build(const SigmaParams& params, int order, double delta) {
  params.require_core("LambdaSeries::build");
  if (order < 0) throw DomainError("LambdaSeries: order must be >= 0");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("LambdaSeries: delta in (0,1)");

  LambdaSeries s;
  s.sigma_ = params.sigma;
  s.order_ = order;
  s.delta_ = delta;
  for (auto& col : s.a_) col.assign(static_cast<size_t>(order) + 1, 0.0);
  s.a_[0][0] = 1.0;

  const TaylorF f1 = f_taylor(1, order);
  const TaylorF f2 = f_taylor(2, order);
  const std::vector<double>* b[3] = {nullptr, &f1.coeffs, &f2.coeffs};

  // omega(l, j, m) cached for every l, j and m <= order
  std::array<std::array<std::vector<double>, 3>, 3> om;
  for (int l = 0; l < 3; ++l) {
    for (int j = 0; j < 3; ++j) {
      om[static_cast<size_t>(l)][static_cast<size_t>(j)].resize(
          static_cast<size_t>(order) + 1);
      for (int m = 0; m <= order; ++m) {
        om[static_cast<size_t>(l)][static_cast<size_t>(j)][static_cast<size_t>(m)] =
            specfun::omega(l, j, m, params);
      }
    }
  }

  double cert = 1.0;  // running max of |a[m][j]| / (1+delta)^m
  double pow_growth = 1.0;
  for (int k = 0; k <= order; ++k) {
    for (int sdx = 0; sdx < 3; ++sdx) {
      if (k == 0 && sdx == 0) continue;
      long double rhs = 0.0L;
      for (int l = 1; l <= 2; ++l) {
        for (int j = 0; j < 3; ++j) {
          const int rho = (l + j) % 3;
          const int tau = (l + j) / 3;
          if (rho != sdx) continue;
          const auto& omega_lj = om[static_cast<size_t>(l)][static_cast<size_t>(j)];
          const auto& bl = *b[l];
          const int m_top = (tau == 0) ? k : k - 1;
          const int shift = (tau == 0) ? k : k - 1;
          for (int m = 0; m <= m_top; ++m) {
            rhs += static_cast<long double>(bl[static_cast<size_t>(shift - m)]) *
                   omega_lj[static_cast<size_t>(m)] * s.a_[static_cast<size_t>(j)][static_cast<size_t>(m)];
          }
        }
      }
      const double div = om[0][static_cast<size_t>(sdx)][static_cast<size_t>(k)];
      const double val = static_cast<double>(-rhs / div);
      s.a_[static_cast<size_t>(sdx)][static_cast<size_t>(k)] = val;
      if (std::abs(val) > 10.0 * cert * pow_growth && k > 2) {
        throw NumericError("LambdaSeries: coefficient a[" + std::to_string(k) + "][" +
                           std::to_string(sdx) +
                           "] breaches the growth certificate tenfold");
      }
    }
    for (int j = 0; j < 3; ++j) {
      cert = std::max(cert, std::abs(s.a_[static_cast<size_t>(j)][static_cast<size_t>(k)]) / pow_growth);
    }
    pow_growth *= (1.0 + delta);
  }
  s.growth_constant_ = cert;
  s.max_abs_.resize(static_cast<size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    double row = 0.0;
    for (int j = 0; j < 3; ++j) {
      row = std::max(row, std::abs(s.a_[static_cast<size_t>(j)][static_cast<size_t>(k)]));
    }
    s.max_abs_[static_cast<size_t>(k)] = row;
  }
  return s;
}

LambdaSeries LambdaSeries::with_coeff(int m, int j, double value) const {
  if (m < 0 || m > order_ || j < 0 || j > 2) throw DomainError("with_coeff: bad index");
  LambdaSeries out = *this;
  out.a_[static_cast<size_t>(j)][static_cast<size_t>(m)] = value;
  return out;
}

double LambdaSeries::tail_bound(double xi) const {
  const double q = (1.0 + delta_) * xi;
  if (q >= 1.0) return std::numeric_limits<double>::infinity();
  // |sum_{m>K}| <= 3 C q^{K+1} / (1-q) * xi^{sigma-2}; relative to xi^{sigma-2}
  return 3.0 * growth_constant_ * std::pow(q, order_ + 1) / (1.0 - q);
}

double LambdaSeries::cancellation_bound(double xi) const {
  double max_term = 0.0;
  double xpow = 1.0;
  for (int k = 0; k <= order_; ++k) {
    max_term = std::max(max_term, max_abs_[static_cast<size_t>(k)] * xpow);
    xpow *= xi;
  }
  // the accumulator is long double; value scale is ~xi^{sigma-2} (bounded
  // below by Lambda(1-) > 0.05 over the core range)
  return max_term * 2e-19 / 0.05;
}

bool LambdaSeries::usable(double xi, double rel_tol) const {
  return tail_bound(xi) <= rel_tol && cancellation_bound(xi) <= rel_tol;
}

void LambdaSeries::check_guards(double xi, double rel_tol) const {
  const double tb = tail_bound(xi);
  if (tb > rel_tol) {
    const double q = (1.0 + delta_) * xi;
    int needed = order_;
    if (q < 1.0) {
      needed = static_cast<int>(
          std::ceil(std::log(rel_tol * (1.0 - q) / (3.0 * growth_constant_)) / std::log(q)));
    }
    throw NumericError("LambdaSeries: truncation tail " + std::to_string(tb) +
                       " above tolerance at xi=" + std::to_string(xi) +
                       "; order >= " + std::to_string(needed) + " required");
  }
  const double cb = cancellation_bound(xi);
  if (cb > rel_tol) {
    throw NumericError("LambdaSeries: cancellation bound " + std::to_string(cb) +
                       " above tolerance at xi=" + std::to_string(xi) +
                       "; take the contour route");
  }
}

double LambdaSeries::eval(double xi, double rel_tol) const {
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("LambdaSeries::eval: xi in (0,1)");
  check_guards(xi, rel_tol);
  long double total = 0.0L;
  for (int j = 0; j < 3; ++j) {
    long double horner = 0.0L;
    const auto& col = a_[static_cast<size_t>(j)];
    for (int m = order_; m >= 0; --m) horner = horner * xi + col[static_cast<size_t>(m)];
    total += horner * std::pow(static_cast<long double>(xi),
                               static_cast<long double>(sigma_ - 2.0 + j / 3.0));
  }
  return static_cast<double>(total);
}

double LambdaSeries::eval_diff(double xi, double zeta, double rel_tol) const {
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("eval_diff: xi in (0,1)");
  if (!(zeta >= 0.0 && zeta < 1.0)) throw DomainError("eval_diff: zeta in [0,1)");
  if (zeta == 0.0) return 0.0;
  check_guards(xi, rel_tol);
  const double lr = std::log1p(-zeta);
  long double total = 0.0L;
  for (int j = 0; j < 3; ++j) {
    const auto& col = a_[static_cast<size_t>(j)];
    const double e0 = sigma_ - 2.0 + j / 3.0;
    long double xipow = std::pow(static_cast<long double>(xi), static_cast<long double>(e0));
    for (int m = 0; m <= order_; ++m) {
      const double e = e0 + m;
      total += col[static_cast<size_t>(m)] * xipow * std::expm1(e * lr);
      xipow *= xi;
    }
  }
  return static_cast<double>(total);
}

double LambdaSeries::h_eval(double xi, double rel_tol) const {
  return eval(xi, rel_tol) - std::pow(xi, sigma_ - 2.0);
}

double fractional_difference(const LambdaSeries& series, double alpha, double xi,
                             const quad::Spec& spec) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("fractional_difference: alpha in (0,1)");
  // integrand eta^{-(alpha+1)} [Lambda(xi-eta) - Lambda(xi)]; the difference
  // tames eta -> 0 to eta^{-alpha}, the series edge gives (xi-eta)^{sigma-2}
  quad::Spec qs = spec;
  qs.left_exponent = alpha;
  qs.right_exponent = 2.0 - series.sigma();
  auto f = [&](double eta) {
    return std::pow(eta, -(alpha + 1.0)) * series.eval_diff(xi, eta / xi);
  };
  return quad::integrate(f, 0.0, xi, qs).value;
}

double residual(const LambdaSeries& series, double xi, const quad::Spec& spec) {
  if (!(xi > 0.0 && xi <= 0.9)) throw DomainError("residual: xi in (0, 0.9]");
  const double sigma = series.sigma();
  const double lam = series.eval(xi);
  double total = 0.0;
  for (int l = 0; l < 3; ++l) {
    const double alpha = sigma - 1.0 - l / 3.0;
    const double d = fractional_difference(series, alpha, xi, spec);
    total += f_weight(l, xi) * (-d + std::pow(xi, -alpha) / alpha * lam);
  }
  return total;
}

}  // namespace lincoag::series
