#include "lincoag/scatterer_law.hpp"

#include <cmath>
#include <string>

#include "lincoag/detail/shifted_moments.hpp"
#include "lincoag/errors.hpp"
#include "lincoag/specfun.hpp"

namespace lincoag::sim {

using detail::power_int;
using detail::shifted_partial;
using detail::shifted_tail;

ScattererLaw ScattererLaw::shifted(const SigmaParams& params) {
  ScattererLaw law(Kind::shifted_power, params);
  law.validate_tail();
  return law;
}

ScattererLaw ScattererLaw::truncated(const SigmaParams& params, double v_min) {
  if (!(v_min > 0.0)) {
    throw DomainError("truncated law: v_min > 0 required (pure power is not integrable at 0)");
  }
  ScattererLaw law(Kind::truncated_power, params);
  law.v_min_ = v_min;
  law.validate_tail();
  return law;
}

ScattererLaw ScattererLaw::tabulated(const SigmaParams& params, std::vector<double> edges,
                                     std::vector<double> density) {
  if (edges.size() < 2 || density.size() + 1 != edges.size()) {
    throw DomainError("tabulated law: need n+1 edges for n cells");
  }
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) throw DomainError("tabulated law: edges must increase");
    if (density[i] < 0.0) throw DomainError("tabulated law: negative density");
  }
  if (!(edges.front() >= 0.0)) throw DomainError("tabulated law: negative support");
  ScattererLaw law(Kind::tabulated, params);
  law.edges_ = std::move(edges);
  law.dens_ = std::move(density);
  law.validate_tail();
  return law;
}

void ScattererLaw::validate_tail() const {
  const double probe = 1e6;
  const double ratio = std::pow(probe, sigma()) * density(probe);
  if (std::abs(ratio - 1.0) > 0.01) {
    throw DomainError("scatterer law: v^sigma G(v) = " + std::to_string(ratio) +
                      " at v = 1e6; expected 1 within 1%");
  }
}

double ScattererLaw::lower_support() const {
  switch (kind_) {
    case Kind::shifted_power: return 0.0;
    case Kind::truncated_power: return v_min_;
    case Kind::tabulated: return edges_.front();
  }
  return 0.0;
}

double ScattererLaw::density(double v) const {
  if (v < 0.0) return 0.0;
  switch (kind_) {
    case Kind::shifted_power:
      return std::pow(1.0 + v, -sigma());
    case Kind::truncated_power:
      return v >= v_min_ ? std::pow(v, -sigma()) : 0.0;
    case Kind::tabulated: {
      if (v >= edges_.back()) return std::pow(v, -sigma());
      if (v < edges_.front()) return 0.0;
      size_t lo = 0, hi = edges_.size() - 1;
      while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        (edges_[mid] <= v ? lo : hi) = mid;
      }
      return dens_[lo];
    }
  }
  return 0.0;
}

double ScattererLaw::moment(int j) const {
  if (j < 0 || j > 2) throw DomainError("moment: j in {0,1,2}");
  const double s = sigma();
  const double q = j / 3.0;
  switch (kind_) {
    case Kind::shifted_power:
      return specfun::gamma(1.0 + q) * specfun::gamma(s - 1.0 - q) / specfun::gamma(s);
    case Kind::truncated_power:
      return std::pow(v_min_, 1.0 + q - s) / (s - 1.0 - q);
    case Kind::tabulated: {
      double sum = std::pow(edges_.back(), 1.0 + q - s) / (s - 1.0 - q);
      for (size_t i = 0; i + 1 < edges_.size(); ++i) {
        sum += dens_[i] * power_int(edges_[i], edges_[i + 1], q);
      }
      return sum;
    }
  }
  return 0.0;
}

double ScattererLaw::tail_moment(double a, int j) const {
  if (j < 0 || j > 2) throw DomainError("tail_moment: j in {0,1,2}");
  const double s = sigma();
  const double q = j / 3.0;
  if (a <= lower_support()) return moment(j);
  switch (kind_) {
    case Kind::shifted_power:
      return shifted_tail(a, q, s);
    case Kind::truncated_power:
      return std::pow(a, 1.0 + q - s) / (s - 1.0 - q);
    case Kind::tabulated: {
      if (a >= edges_.back()) return std::pow(a, 1.0 + q - s) / (s - 1.0 - q);
      double sum = std::pow(edges_.back(), 1.0 + q - s) / (s - 1.0 - q);
      for (size_t i = 0; i + 1 < edges_.size(); ++i) {
        const double lo = std::max(edges_[i], a);
        if (lo < edges_[i + 1]) sum += dens_[i] * power_int(lo, edges_[i + 1], q);
      }
      return sum;
    }
  }
  return 0.0;
}

double ScattererLaw::partial_moment(double b, int j, int p) const {
  if (j < 0 || j > 2 || p < 1 || p > 2) throw DomainError("partial_moment: j in {0,1,2}, p in {1,2}");
  const double s = sigma();
  const double q = p + j / 3.0;
  if (b <= lower_support()) return 0.0;
  switch (kind_) {
    case Kind::shifted_power:
      return shifted_partial(b, q, s);
    case Kind::truncated_power:
      return power_int(v_min_, b, q - s);
    case Kind::tabulated: {
      double sum = 0.0;
      for (size_t i = 0; i + 1 < edges_.size(); ++i) {
        const double hi = std::min(edges_[i + 1], b);
        if (edges_[i] < hi) sum += dens_[i] * power_int(edges_[i], hi, q);
      }
      if (b > edges_.back()) sum += power_int(edges_.back(), b, q - s);
      return sum;
    }
  }
  return 0.0;
}

double ScattererLaw::sample_component(CounterRng& rng, int j) const {
  return sample_component_above(rng, j, lower_support());
}

double ScattererLaw::sample_component_above(CounterRng& rng, int j, double b) const {
  if (j < 0 || j > 2) throw DomainError("sample_component: j in {0,1,2}");
  const double s = sigma();
  const double q = j / 3.0;
  b = std::max(b, lower_support());
  switch (kind_) {
    case Kind::shifted_power: {
      if (j == 0) {
        // exact inverse CDF of (1+v)^{-sigma} conditioned on v > b
        return (1.0 + b) * std::pow(rng.uniform(), -1.0 / (s - 1.0)) - 1.0;
      }
      // envelope (1+v)^{q-sigma}; accept with (v/(1+v))^{q}
      for (;;) {
        const double v = (1.0 + b) * std::pow(rng.uniform(), -1.0 / (s - 1.0 - q)) - 1.0;
        if (std::pow(v / (1.0 + v), q) >= rng.uniform()) return v;
      }
    }
    case Kind::truncated_power:
      return b * std::pow(rng.uniform(), -1.0 / (s - 1.0 - q));
    case Kind::tabulated: {
      // cell weights for density G v^{q} above b, plus the power tail
      const size_t ncell = dens_.size();
      double weights_total = 0.0;
      std::vector<double> w(ncell + 1, 0.0);
      for (size_t i = 0; i < ncell; ++i) {
        const double lo = std::max(edges_[i], b);
        if (lo < edges_[i + 1]) w[i] = dens_[i] * power_int(lo, edges_[i + 1], q);
        weights_total += w[i];
      }
      const double tail_lo = std::max(b, edges_.back());
      w[ncell] = std::pow(tail_lo, 1.0 + q - s) / (s - 1.0 - q);
      weights_total += w[ncell];
      double pick = rng.uniform() * weights_total;
      size_t cell = ncell;
      for (size_t i = 0; i <= ncell; ++i) {
        if (pick < w[i] || i == ncell) {
          cell = i;
          break;
        }
        pick -= w[i];
      }
      if (cell == ncell) {
        return tail_lo * std::pow(rng.uniform(), -1.0 / (s - 1.0 - q));
      }
      const double lo = std::max(edges_[cell], b), hi = edges_[cell + 1];
      const double u = rng.uniform();
      return std::pow(std::pow(lo, q + 1.0) + u * (std::pow(hi, q + 1.0) - std::pow(lo, q + 1.0)),
                      1.0 / (q + 1.0));
    }
  }
  return 0.0;
}

double ScattererLaw::sample_component_below(CounterRng& rng, int j, double b) const {
  if (j < 0 || j > 2) throw DomainError("sample_component: j in {0,1,2}");
  const double s = sigma();
  const double q = j / 3.0;
  if (!(b > lower_support())) throw DomainError("sample_component_below: empty range");
  switch (kind_) {
    case Kind::shifted_power: {
      if (j == 0) {
        // inverse CDF restricted to (0, b)
        const double mass = 1.0 - std::pow(1.0 + b, 1.0 - s);
        const double u = rng.uniform() * mass;
        return std::pow(1.0 - u, -1.0 / (s - 1.0)) - 1.0;
      }
      for (;;) {
        // envelope v^q on (0,b): inverse CDF, accept with (1+v)^{-sigma}
        const double v = b * std::pow(rng.uniform(), 1.0 / (q + 1.0));
        if (std::pow(1.0 + v, -s) >= rng.uniform()) return v;
      }
    }
    case Kind::truncated_power: {
      const double e = q - s + 1.0;
      const double lo_p = std::pow(v_min_, e), hi_p = std::pow(b, e);
      const double u = rng.uniform();
      return std::pow(lo_p + u * (hi_p - lo_p), 1.0 / e);
    }
    case Kind::tabulated: {
      const size_t ncell = dens_.size();
      std::vector<double> w(ncell + 1, 0.0);
      double weights_total = 0.0;
      for (size_t i = 0; i < ncell; ++i) {
        const double hi = std::min(edges_[i + 1], b);
        if (edges_[i] < hi) w[i] = dens_[i] * power_int(edges_[i], hi, q);
        weights_total += w[i];
      }
      if (b > edges_.back()) {
        w[ncell] = power_int(edges_.back(), b, q - s);
        weights_total += w[ncell];
      }
      double pick = rng.uniform() * weights_total;
      size_t cell = ncell;
      for (size_t i = 0; i <= ncell; ++i) {
        if (pick < w[i] || i == ncell) {
          cell = i;
          break;
        }
        pick -= w[i];
      }
      if (cell == ncell) {
        const double e = q - s + 1.0;
        const double lo_p = std::pow(edges_.back(), e), hi_p = std::pow(b, e);
        return std::pow(lo_p + rng.uniform() * (hi_p - lo_p), 1.0 / e);
      }
      const double lo = edges_[cell], hi = std::min(edges_[cell + 1], b);
      const double u = rng.uniform();
      return std::pow(std::pow(lo, q + 1.0) + u * (std::pow(hi, q + 1.0) - std::pow(lo, q + 1.0)),
                      1.0 / (q + 1.0));
    }
  }
  return 0.0;
}

}  // namespace lincoag::sim
