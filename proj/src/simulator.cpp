#include "lincoag/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lincoag/errors.hpp"

namespace lincoag::sim {

namespace {

struct ComponentWeights {
  double w[3];
  double total;
};

ComponentWeights component_weights(double v, const ScattererLaw& law) {
  const double v13 = std::cbrt(v);
  ComponentWeights cw{};
  cw.w[0] = v13 * v13 * law.moment(0);
  cw.w[1] = 2.0 * v13 * law.moment(1);
  cw.w[2] = law.moment(2);
  cw.total = cw.w[0] + cw.w[1] + cw.w[2];
  return cw;
}

int pick_component(const double* w, double total, CounterRng& rng) {
  double pick = rng.uniform() * total;
  if (pick < w[0]) return 0;
  pick -= w[0];
  return pick < w[1] ? 1 : 2;
}

}  // namespace

double total_rate(double v, const ScattererLaw& law) {
  return component_weights(v, law).total;
}

double sample_jump(double v, const ScattererLaw& law, CounterRng& rng) {
  const ComponentWeights cw = component_weights(v, law);
  const int j = pick_component(cw.w, cw.total, rng);
  return law.sample_component(rng, j);
}

Trajectory simulate(double v0, double t_end, const ScattererLaw& law,
                    std::uint64_t seed, const SimOptions& opts) {
  if (v0 < 0.0) throw DomainError("simulate: V0 >= 0");
  if (t_end < 0.0) throw DomainError("simulate: t_end >= 0");
  CounterRng rng(seed, 1);
  Trajectory traj;
  traj.seed = seed;
  double t = 0.0, v = v0;
  if (opts.record_events) traj.events.emplace_back(t, v);
  std::uint64_t n = 0;
  for (;;) {
    const double rate = total_rate(v, law);
    const double tau = rng.exponential(rate);
    if (t + tau > t_end) break;
    t += tau;
    v += sample_jump(v, law, rng);
    if (opts.record_events) traj.events.emplace_back(t, v);
    if (++n >= opts.event_cap) {
      traj.t_end = t;
      traj.v_end = v;
      throw ResourceError("simulate: event cap " + std::to_string(opts.event_cap) +
                          " reached at t = " + std::to_string(t));
    }
  }
  traj.t_end = t_end;
  traj.v_end = v;
  return traj;
}

namespace {

// One exact event; returns false when the next clock would pass t_target.
bool exact_event(double& t, double& v, double t_target, const ScattererLaw& law,
                 CounterRng& rng) {
  const double rate = total_rate(v, law);
  const double tau = rng.exponential(rate);
  if (t + tau > t_target) {
    t = t_target;
    return false;
  }
  t += tau;
  v += sample_jump(v, law, rng);
  return true;
}

// Expected volume-influx rate with jumps capped at V (a robust growth scale
// even though the raw mean jump is infinite below sigma = 2).
double capped_drift(double v, const ScattererLaw& law) {
  const double v13 = std::cbrt(v);
  const double coef[3] = {v13 * v13, 2.0 * v13, 1.0};
  double d = 0.0;
  for (int j = 0; j < 3; ++j) {
    d += coef[j] * (law.partial_moment(v, j, 1) + v * law.tail_moment(v, j));
  }
  return d;
}

void accel_advance(double& t, double& v, double t_target, const ScattererLaw& law,
                   CounterRng& rng, const AccelOptions& accel,
                   std::uint64_t event_cap) {
  const double n_exact = static_cast<double>(accel.exact_tail_count);
  std::uint64_t exact_spent = 0;
  while (t < t_target) {
    const double rate = total_rate(v, law);
    // stay exact while cheap: expected remaining events within budget
    if (rate * (t_target - t) <= 4.0 * n_exact ||
        exact_spent < accel.exact_event_budget / 8) {
      if (rate * (t_target - t) <= 4.0 * n_exact) {
        while (t < t_target && exact_event(t, v, t_target, law, rng)) {
        }
        return;
      }
      if (!exact_event(t, v, t_target, law, rng)) return;
      ++exact_spent;
      if (exact_spent > event_cap) {
        throw ResourceError("accelerated advance: exact-phase event cap hit");
      }
      continue;
    }

    // macro-step sized by the capped drift
    const double drift = capped_drift(v, law);
    double h = accel.step_fraction * v / drift;
    h = std::min(h, t_target - t);

    // predictor at the midpoint growth for all frozen-rate quantities
    const double v_mid = v * (1.0 + 0.5 * accel.step_fraction);
    const double v13 = std::cbrt(v_mid);
    const double coef[3] = {v13 * v13, 2.0 * v13, 1.0};

    // threshold u: expected count of jumps above u during h equals n_exact
    auto count_above = [&](double u) {
      double c = 0.0;
      for (int j = 0; j < 3; ++j) c += coef[j] * law.tail_moment(u, j);
      return h * c;
    };
    const double floor_v = std::max(law.lower_support(), 1e-300);
    double u;
    if (count_above(floor_v) <= n_exact) {
      u = floor_v;  // every jump lands in the exact tail
    } else {
      double lo = floor_v, hi = std::max(2.0 * floor_v, 1e-12);
      while (count_above(hi) > n_exact) hi *= 4.0;
      for (int it = 0; it < 80; ++it) {
        const double mid = std::sqrt(lo * hi);
        (count_above(mid) > n_exact ? lo : hi) = mid;
      }
      u = std::sqrt(lo * hi);
    }

    // exact tail: Poisson count, sizes from the conditioned mixture
    double tail_w[3];
    double tail_total = 0.0;
    for (int j = 0; j < 3; ++j) {
      tail_w[j] = coef[j] * law.tail_moment(u, j);
      tail_total += tail_w[j];
    }
    double jump_sum = 0.0;
    if (tail_total > 0.0) {
      const std::uint64_t k = rng.poisson(h * tail_total);
      for (std::uint64_t e = 0; e < k; ++e) {
        const int j = pick_component(tail_w, tail_total, rng);
        jump_sum += law.sample_component_above(rng, j, u);
      }
    }

    // sub-threshold bulk: gamma increment matching mean and variance
    if (u > floor_v) {
      double m1 = 0.0, m2 = 0.0;
      for (int j = 0; j < 3; ++j) {
        m1 += coef[j] * law.partial_moment(u, j, 1);
        m2 += coef[j] * law.partial_moment(u, j, 2);
      }
      const double mean = h * m1;
      const double var = h * m2;
      if (mean > 0.0 && var > 0.0) {
        const double shape = mean * mean / var;
        jump_sum += rng.gamma_dist(shape, var / mean);
      } else {
        jump_sum += mean;
      }
    }
    v += jump_sum;
    t += h;
  }
}

}  // namespace

void advance_to(double& t, double& v, double t_target, const ScattererLaw& law,
                CounterRng& rng, const AccelOptions& accel, std::uint64_t event_cap) {
  if (!accel.enabled) {
    std::uint64_t n = 0;
    while (t < t_target && exact_event(t, v, t_target, law, rng)) {
      if (++n >= event_cap) {
        throw ResourceError("advance_to: event cap " + std::to_string(event_cap) +
                            " reached at t = " + std::to_string(t));
      }
    }
    return;
  }
  accel_advance(t, v, t_target, law, rng, accel, event_cap);
}

TrajectoryEnsemble ensemble(int n, double v0, const std::vector<double>& checkpoints,
                            const ScattererLaw& law, std::uint64_t master_seed,
                            const EnsembleOptions& opts) {
  if (n < 1) throw DomainError("ensemble: N >= 1");
  if (checkpoints.empty()) throw DomainError("ensemble: need at least one checkpoint");
  for (size_t i = 1; i < checkpoints.size(); ++i) {
    if (!(checkpoints[i] > checkpoints[i - 1])) {
      throw DomainError("ensemble: checkpoints must increase");
    }
  }
  TrajectoryEnsemble ens;
  ens.v0 = v0;
  ens.master_seed = master_seed;
  ens.sigma = law.sigma();
  ens.checkpoints = checkpoints;
  ens.values.assign(checkpoints.size(), std::vector<double>(static_cast<size_t>(n)));

  int threads = opts.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min(threads, n);

  auto worker = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      CounterRng rng(master_seed, static_cast<std::uint64_t>(i) + 1);
      double t = 0.0, v = v0;
      for (size_t c = 0; c < checkpoints.size(); ++c) {
        advance_to(t, v, checkpoints[c], law, rng, opts.accel, opts.sim.event_cap);
        ens.values[c][static_cast<size_t>(i)] = v;
      }
    }
  };
  if (threads == 1) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + threads - 1) / threads;
    for (int k = 0; k < threads; ++k) {
      const int lo = k * chunk, hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return ens;
}

namespace {

double median_of(std::vector<double> x) {
  const size_t n = x.size();
  std::nth_element(x.begin(), x.begin() + n / 2, x.end());
  double hi = x[n / 2];
  if (n % 2 == 0) {
    std::nth_element(x.begin(), x.begin() + n / 2 - 1, x.begin() + n / 2);
    return 0.5 * (x[n / 2 - 1] + hi);
  }
  return hi;
}

SlopeFit fit_slope(const std::vector<double>& log_t, const std::vector<double>& log_v) {
  const size_t n = log_t.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += log_t[i];
    sy += log_v[i];
    sxx += log_t[i] * log_t[i];
    sxy += log_t[i] * log_v[i];
  }
  SlopeFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return f;
}

}  // namespace

SlopeFit scaling_exponent(const TrajectoryEnsemble& ens, int bootstrap,
                          std::uint64_t seed) {
  const size_t nc = ens.checkpoints.size();
  if (nc < 3) throw DomainError("scaling_exponent: need >= 3 checkpoints");
  if (!(ens.checkpoints.back() >= 100.0 * ens.checkpoints.front())) {
    throw DomainError("scaling_exponent: checkpoints must span >= 2 decades");
  }
  std::vector<double> log_t(nc), log_med(nc);
  for (size_t c = 0; c < nc; ++c) {
    const double med = median_of(ens.values[c]);
    if (!(med > 0.0)) throw DomainError("scaling_exponent: degenerate ensemble (median <= 0)");
    log_t[c] = std::log(ens.checkpoints[c]);
    log_med[c] = std::log(med);
  }
  // degenerate-input guard: no growth between first and last checkpoint
  if (!(log_med.back() > log_med.front() + 1e-12)) {
    throw DomainError("scaling_exponent: degenerate ensemble (no median growth)");
  }
  SlopeFit fit = fit_slope(log_t, log_med);

  const size_t n = ens.values[0].size();
  CounterRng rng(seed, 0xB007);
  double mean = 0.0, m2 = 0.0;
  for (int b = 0; b < bootstrap; ++b) {
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) {
      idx[i] = static_cast<size_t>(rng.uniform() * static_cast<double>(n));
    }
    std::vector<double> lm(nc);
    std::vector<double> sample(n);
    for (size_t c = 0; c < nc; ++c) {
      for (size_t i = 0; i < n; ++i) sample[i] = ens.values[c][idx[i]];
      lm[c] = std::log(median_of(sample));
    }
    const double s = fit_slope(log_t, lm).slope;
    const double d = s - mean;
    mean += d / (b + 1);
    m2 += d * (s - mean);
  }
  fit.stderr_ = std::sqrt(m2 / std::max(1, bootstrap - 1));
  return fit;
}

double EmpiricalProfile::mass() const {
  std::int64_t total = 0;
  for (std::int64_t c : counts) total += c;
  return static_cast<double>(total) / static_cast<double>(n);
}

EmpiricalProfile profile(const TrajectoryEnsemble& ens, double t, double mu, int bins) {
  size_t c = ens.checkpoints.size();
  for (size_t i = 0; i < ens.checkpoints.size(); ++i) {
    if (ens.checkpoints[i] == t) c = i;
  }
  if (c == ens.checkpoints.size()) {
    throw DomainError("profile: t is not one of the ensemble checkpoints");
  }
  if (bins < 1) throw DomainError("profile: bins >= 1");
  EmpiricalProfile p;
  p.time = t;
  p.rescale_exponent = mu;
  const double scale = std::pow(t, mu);
  p.xi_sorted.reserve(ens.values[c].size());
  for (double v : ens.values[c]) p.xi_sorted.push_back(v / scale);
  std::sort(p.xi_sorted.begin(), p.xi_sorted.end());
  p.n = static_cast<std::int64_t>(p.xi_sorted.size());

  // log-spaced edges spanning the samples, with open-ended first/last bins
  const double lo = std::max(p.xi_sorted.front(), 1e-12);
  const double hi = std::max(p.xi_sorted.back() * (1.0 + 1e-12), lo * 1.0001);
  p.edges.resize(static_cast<size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) {
    p.edges[static_cast<size_t>(i)] =
        lo * std::pow(hi / lo, static_cast<double>(i) / bins);
  }
  p.counts.assign(static_cast<size_t>(bins), 0);
  for (double xi : p.xi_sorted) {
    const double f = std::log(std::max(xi, lo) / lo) / std::log(hi / lo);
    int b = static_cast<int>(f * bins);
    b = std::clamp(b, 0, bins - 1);
    ++p.counts[static_cast<size_t>(b)];
  }
  return p;
}

double ks_distance(const EmpiricalProfile& a, const EmpiricalProfile& b) {
  const auto& xa = a.xi_sorted;
  const auto& xb = b.xi_sorted;
  if (xa.empty() || xb.empty()) throw DomainError("ks_distance: empty profile");
  double d = 0.0;
  size_t ia = 0, ib = 0;
  while (ia < xa.size() && ib < xb.size()) {
    const double x = std::min(xa[ia], xb[ib]);
    while (ia < xa.size() && xa[ia] <= x) ++ia;
    while (ib < xb.size() && xb[ib] <= x) ++ib;
    const double fa = static_cast<double>(ia) / static_cast<double>(xa.size());
    const double fb = static_cast<double>(ib) / static_cast<double>(xb.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

MomentReport moments(const TrajectoryEnsemble& ens, double beta, double gamma,
                     double mu, int bootstrap, std::uint64_t seed) {
  const SigmaParams sp = SigmaParams::core(ens.sigma);
  if (!(beta > 0.0 && beta < sp.sigma - 5.0 / 3.0)) {
    throw DomainError("moments: beta must lie in (0, sigma - 5/3)");
  }
  if (!(gamma > 0.0)) throw DomainError("moments: gamma > 0");
  MomentReport rep;
  rep.beta = beta;
  rep.gamma = gamma;
  const size_t nc = ens.checkpoints.size();
  const size_t n = ens.values[0].size();
  CounterRng rng(seed, 0x40E5);
  for (size_t c = 0; c < nc; ++c) {
    const double scale = std::pow(ens.checkpoints[c], mu);
    std::vector<double> mb(n), mg(n);
    for (size_t i = 0; i < n; ++i) {
      const double xi = ens.values[c][i] / scale;
      mb[i] = std::pow(1.0 + xi, beta);
      mg[i] = std::pow(xi, -gamma);
    }
    auto mean_of = [](const std::vector<double>& x) {
      long double s = 0.0L;
      for (double v : x) s += v;
      return static_cast<double>(s / x.size());
    };
    rep.tau.push_back(std::log(ens.checkpoints[c]));
    rep.m_beta.push_back(mean_of(mb));
    rep.m_gamma.push_back(mean_of(mg));
    // trajectory bootstrap of both means
    double mbm = 0, mbs = 0, mgm = 0, mgs = 0;
    for (int b = 0; b < bootstrap; ++b) {
      long double sb = 0.0L, sg = 0.0L;
      for (size_t i = 0; i < n; ++i) {
        const size_t k = static_cast<size_t>(rng.uniform() * static_cast<double>(n));
        sb += mb[k];
        sg += mg[k];
      }
      const double vb = static_cast<double>(sb / n), vg = static_cast<double>(sg / n);
      double d = vb - mbm;
      mbm += d / (b + 1);
      mbs += d * (vb - mbm);
      d = vg - mgm;
      mgm += d / (b + 1);
      mgs += d * (vg - mgm);
    }
    rep.m_beta_se.push_back(std::sqrt(mbs / std::max(1, bootstrap - 1)));
    rep.m_gamma_se.push_back(std::sqrt(mgs / std::max(1, bootstrap - 1)));
  }
  // bounded after burn-in: later checkpoints may not drift above the first
  // by more than 3 bootstrap sigma
  rep.bounded = true;
  for (size_t c = 1; c < nc; ++c) {
    const double se_b = std::hypot(rep.m_beta_se[c], rep.m_beta_se[0]);
    const double se_g = std::hypot(rep.m_gamma_se[c], rep.m_gamma_se[0]);
    if (rep.m_beta[c] > rep.m_beta[0] + 3.0 * se_b) rep.bounded = false;
    if (rep.m_gamma[c] > rep.m_gamma[0] + 3.0 * se_g) rep.bounded = false;
  }
  double r = 0.0;
  for (size_t c = 0; c < nc; ++c) {
    r = std::max({r, rep.m_beta[c], rep.m_gamma[c]});
  }
  rep.bound = r;
  return rep;
}

}  // namespace lincoag::sim
