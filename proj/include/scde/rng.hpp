#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace scde {

//! Deterministic 64-bit generator (splitmix64, Steele et al. 2014).
//!
//! Chosen over the standard-library engines because its output is fully
//! specified: the same seed produces bit-identical streams on every
//! platform and compiler. Replicate r of a run with seed s draws from the
//! stream `stream_seed(s, r)`, so replicates are independent and can be
//! computed in any order.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : state_(seed)
  {
  }

  std::uint64_t next_u64()
  {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  //! Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  //! Standard normal via Box-Muller; the second variate is cached.
  double next_gaussian()
  {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log1p(-u1)); // 1-u1 in (0,1]
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  //! Derive an independent stream seed for (seed, stream index).
  static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream)
  {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

} // namespace scde
