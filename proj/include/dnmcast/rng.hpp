#ifndef DNMCAST_RNG_HPP
#define DNMCAST_RNG_HPP

#include <cstdint>

namespace dnmcast {

// splitmix64 stream.  Chosen over <random> engines because its output is
// pinned by the algorithm itself, not by the standard library
// implementation, which keeps seeded runs byte-identical across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Decorrelates (seed, stream) pairs so each sample index gets an
// independent stream regardless of thread scheduling.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mixer(seed ^ (0xA0761D6478BD642FULL + stream * 0xE7037ED1A0B428DBULL));
  mixer.next_u64();
  return mixer.next_u64();
}

}  // namespace dnmcast

#endif  // DNMCAST_RNG_HPP
