#ifndef LINCOAG_RNG_HPP_
#define LINCOAG_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace lincoag {

// Philox4x64-10 counter-based stream keyed by (master seed, stream id).
// Streams are independent, merge-order free, and reproducible: the n-th draw
// of stream s depends on (seed, s, n) only.
class CounterRng {
 public:
  CounterRng(std::uint64_t master_seed, std::uint64_t stream_id)
      : key0_(master_seed), key1_(stream_id) {}

  std::uint64_t next_u64() {
    if (avail_ == 0) refill();
    return buf_[--avail_];
  }

  // uniform in (0,1), never returning an exact endpoint
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  double normal() {
    if (have_normal_) {
      have_normal_ = false;
      return cached_normal_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * f;
    have_normal_ = true;
    return u * f;
  }

  // Marsaglia-Tsang
  double gamma_dist(double shape, double scale) {
    if (shape < 1.0) {
      const double u = uniform();
      return gamma_dist(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
  }

  // exact Poisson; inversion for small means, PTRS (Hormann) otherwise
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) {
      const double l = std::exp(-mean);
      std::uint64_t k = 0;
      double p = uniform();
      while (p > l) {
        ++k;
        p *= uniform();
      }
      return k;
    }
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double ln_mean = std::log(mean);
    for (;;) {
      const double u = uniform() - 0.5;
      const double v = uniform();
      const double us = 0.5 - std::abs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          kf * ln_mean - mean - std::lgamma(kf + 1.0)) {
        return static_cast<std::uint64_t>(kf);
      }
    }
  }

 private:
  static void mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                        std::uint64_t& lo) {
    const unsigned __int128 p =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
  }

  void refill() {
    std::uint64_t x0 = ctr_lo_, x1 = ctr_hi_, x2 = 0, x3 = 0;
    std::uint64_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      std::uint64_t hi0, lo0, hi1, lo1;
      mul_hi_lo(0xD2E7470EE14C6C93ULL, x0, hi0, lo0);
      mul_hi_lo(0xCA5A826395121157ULL, x2, hi1, lo1);
      const std::uint64_t y0 = hi1 ^ x1 ^ k0;
      const std::uint64_t y1 = lo1;
      const std::uint64_t y2 = hi0 ^ x3 ^ k1;
      const std::uint64_t y3 = lo0;
      x0 = y0;
      x1 = y1;
      x2 = y2;
      x3 = y3;
      k0 += 0x9E3779B97F4A7C15ULL;
      k1 += 0xBB67AE8584CAA73BULL;
    }
    if (++ctr_lo_ == 0) ++ctr_hi_;
    buf_[0] = x0;
    buf_[1] = x1;
    buf_[2] = x2;
    buf_[3] = x3;
    avail_ = 4;
  }

  std::uint64_t key0_, key1_;
  std::uint64_t ctr_lo_ = 0, ctr_hi_ = 0;
  std::uint64_t buf_[4] = {0, 0, 0, 0};
  int avail_ = 0;
  bool have_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace lincoag

#endif  // LINCOAG_RNG_HPP_
