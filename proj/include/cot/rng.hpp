#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace cot {

// Counter-based generator (Philox4x32-10). A (seed, stream) pair addresses an
// independent substream, so parallel replicates draw reproducibly no matter
// how work is scheduled.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  CounterRng substream(std::uint64_t id) const {
    return CounterRng(seed_, stream_ * 0x9E3779B97F4A7C15ull + id + 1);
  }

  std::uint32_t next_u32() {
    if (buffer_pos_ == 4) {
      fill_block();
      buffer_pos_ = 0;
    }
    return buffer_[buffer_pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // Box-Muller; u1 strictly positive.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  double chi_squared(int df) {
    double s = 0.0;
    for (int i = 0; i < df; ++i) {
      const double z = normal();
      s += z * z;
    }
    return s;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Index in [0, n).
  int index(int n) { return static_cast<int>(uniform() * n) % n; }

  // Multinomial counts over probabilities p (must sum to ~1).
  Eigen::VectorXi multinomial(int draws, const Eigen::VectorXd& p) {
    const int m = static_cast<int>(p.size());
    Eigen::VectorXd cdf(m);
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      acc += p[j];
      cdf[j] = acc;
    }
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(m);
    for (int k = 0; k < draws; ++k) {
      const double u = uniform() * acc;
      const double* begin = cdf.data();
      const double* pos = std::lower_bound(begin, begin + m, u);
      int j = static_cast<int>(pos - begin);
      if (j >= m) j = m - 1;
      counts[j] += 1;
    }
    return counts;
  }

 private:
  static std::uint32_t mulhi(std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) >> 32);
  }
  static std::uint32_t mullo(std::uint32_t a, std::uint32_t b) {
    return a * b;
  }

  void fill_block() {
    std::uint32_t c0 = static_cast<std::uint32_t>(counter_);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter_ >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(seed_);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed_ >> 32);

    for (int round = 0; round < 10; ++round) {
      const std::uint32_t hi0 = mulhi(0xD2511F53u, c0);
      const std::uint32_t lo0 = mullo(0xD2511F53u, c0);
      const std::uint32_t hi1 = mulhi(0xCD9E8D57u, c2);
      const std::uint32_t lo1 = mullo(0xCD9E8D57u, c2);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    buffer_[0] = c0;
    buffer_[1] = c1;
    buffer_[2] = c2;
    buffer_[3] = c3;
    ++counter_;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::uint32_t buffer_[4] = {0, 0, 0, 0};
  int buffer_pos_ = 4;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cot
