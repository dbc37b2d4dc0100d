#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dirsparse {

// Identifies one reproducible pseudo-random stream: a published master seed
// plus a substream index (e.g. the trial number).
struct StreamSeed {
  std::uint64_t master = 0;
  std::uint64_t index = 0;
};

namespace detail {
// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

// Engine seed for a stream.  For fixed master the map index -> seed is a
// composition of bijections (offset, xor with a constant, mix64), so two
// distinct indices can never collide; symmetrically for fixed index.
constexpr std::uint64_t stream_seed_value(const StreamSeed& s) {
  return detail::mix64(detail::mix64(s.master + 0x9e3779b97f4a7c15ull) ^
                       (s.index + 0xd1b54a32d192ed03ull));
}

// One single-owner random stream.  Everything is pinned down bit-for-bit:
// mt19937_64 is fully specified by the standard, and the variate transforms
// below are hand-rolled because std::uniform_real_distribution and
// std::normal_distribution may differ across standard libraries.
class Stream {
 public:
  explicit Stream(const StreamSeed& seed) : engine_(stream_seed_value(seed)) {}

  // Uniform on the open interval: ((word >> 12) + 0.5) * 2^-52 lies in
  // [2^-53, 1 - 2^-53], so its log is always finite.
  double uniform_open01() {
    return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1p-52;
  }

  // Box-Muller with a cached spare.
  double standard_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open01()));
    const double t = 2.0 * kPi * uniform_open01();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline Stream derive_stream(const StreamSeed& seed) { return Stream(seed); }

}  // namespace dirsparse
