#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ppcurve {

// Mixing step of SplitMix64. Used only to derive substream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// FNV-1a; turns experiment names into substream tags.
constexpr std::uint64_t stream_tag(std::string_view name) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Seed of the substream identified by (master, tag, n, index):
//   s0 = master, s1 = mix(s0 ^ tag), s2 = mix(s1 ^ n), seed = mix(s2 ^ index).
// Every replicate owns its substream, so results do not depend on which
// worker ran it.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t tag,
                                       std::uint64_t n, std::uint64_t index) {
  std::uint64_t s = splitmix64(master ^ tag);
  s = splitmix64(s ^ n);
  return splitmix64(s ^ index);
}

// Caller-owned random stream. Uniforms and normals are produced by fixed
// transforms of the 64-bit engine output (no std:: distributions), so a given
// seed yields the same numbers on every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream substream(std::uint64_t master, std::uint64_t tag,
                             std::uint64_t n, std::uint64_t index) {
    return RngStream(substream_seed(master, tag, n, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0,1): midpoints of the 2^53 lattice.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal by inversion.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace ppcurve
