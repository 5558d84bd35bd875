#pragma once

#include <cstdint>

namespace fdt {

// splitmix64. Small, fast, and fully specified, so simulations are
// bit-reproducible across platforms and thread counts.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of randomness.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Derives an independent stream from (seed, counters). Used to hand each
// Monte-Carlo trial its own generator regardless of scheduling order.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  SplitMix64 mixer(seed);
  std::uint64_t s = mixer.next();
  s ^= 0x9e3779b97f4a7c15ULL * (a + 1);
  SplitMix64 mixer2(s);
  std::uint64_t t = mixer2.next() ^ (0xbf58476d1ce4e5b9ULL * (b + 1));
  return SplitMix64(t);
}

}  // namespace fdt
