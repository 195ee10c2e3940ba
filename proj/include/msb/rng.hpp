#pragma once

#include <cstdint>

namespace msb {

// Counter-based splittable random stream. A stream is nothing but a 64-bit
// key; draw i is a hash of (key, i), so any draw can be computed without
// generating its predecessors and streams can be split hierarchically
// without shared state. Generation order and thread count therefore never
// change the output.
class RandomStream {
 public:
  RandomStream() = default;
  explicit RandomStream(std::uint64_t seed);

  // Rebuilds a stream from a key previously obtained via key(), e.g. one
  // recorded in a dataset manifest.
  static RandomStream from_key(std::uint64_t key);

  std::uint64_t key() const { return key_; }

  // Child stream for (salt, index); salts keep unrelated hierarchies apart.
  RandomStream substream(std::uint64_t salt, std::uint64_t index) const;

  std::uint64_t bits(std::uint64_t counter) const;
  double uniform01(std::uint64_t counter) const;  // [0, 1)

 private:
  std::uint64_t key_ = 0;
};

namespace stream_salt {
inline constexpr std::uint64_t kImage = 0x736e6f77696d6721ull;
inline constexpr std::uint64_t kArtifact = 0x61727469666163ull;
inline constexpr std::uint64_t kChannel = 0x6368616e6e656cull;
}  // namespace stream_salt

// Sequential draws on top of a stream; each draw advances the counter.
class Sampler {
 public:
  explicit Sampler(RandomStream stream) : stream_(stream) {}

  double uniform01();                           // [0, 1)
  double uniform(double lo, double hi);         // [lo, hi)
  double uniform_open(double lo, double hi);    // (lo, hi)
  int uniform_int(int lo, int hi);              // {lo, ..., hi}
  bool bernoulli(double p);

 private:
  RandomStream stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace msb
