#include "msb/rng.hpp"

#include <stdexcept>

namespace msb {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer
inline std::uint64_t avalanche(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : key_(avalanche(seed + kGolden)) {}

RandomStream RandomStream::from_key(std::uint64_t key) {
  RandomStream s;
  s.key_ = key;
  return s;
}

RandomStream RandomStream::substream(std::uint64_t salt, std::uint64_t index) const {
  RandomStream s;
  s.key_ = avalanche(avalanche(key_ ^ salt) + kGolden * (index + 1));
  return s;
}

std::uint64_t RandomStream::bits(std::uint64_t counter) const {
  return avalanche(key_ + kGolden * (counter + 1));
}

double RandomStream::uniform01(std::uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

double Sampler::uniform01() { return stream_.uniform01(counter_++); }

double Sampler::uniform(double lo, double hi) {
  return lo + uniform01() * (hi - lo);
}

double Sampler::uniform_open(double lo, double hi) {
  double u = uniform01();
  while (u == 0.0) u = uniform01();
  return lo + u * (hi - lo);
}

int Sampler::uniform_int(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  const std::uint64_t b = stream_.bits(counter_++);
  const std::uint64_t v =
      static_cast<std::uint64_t>((static_cast<unsigned __int128>(b) * span) >> 64);
  return lo + static_cast<int>(v);
}

bool Sampler::bernoulli(double p) { return uniform01() < p; }

}  // namespace msb
