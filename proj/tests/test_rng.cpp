#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "msb/rng.hpp"

using msb::RandomStream;
using msb::Sampler;

TEST_CASE("stream draws depend only on key and counter") {
  const RandomStream a(12345);
  const RandomStream b(12345);
  for (std::uint64_t i = 0; i < 100; ++i) CHECK(a.bits(i) == b.bits(i));

  // Out-of-order access yields the same values as sequential access.
  std::vector<std::uint64_t> reversed;
  for (int i = 99; i >= 0; --i) reversed.push_back(a.bits(static_cast<std::uint64_t>(i)));
  for (int i = 0; i < 100; ++i)
    CHECK(reversed[static_cast<std::size_t>(99 - i)] == a.bits(static_cast<std::uint64_t>(i)));
}

TEST_CASE("different seeds give different sequences") {
  const RandomStream a(1);
  const RandomStream b(2);
  int same = 0;
  for (std::uint64_t i = 0; i < 64; ++i) same += a.bits(i) == b.bits(i);
  CHECK(same == 0);
}

TEST_CASE("substreams are distinct from the parent and each other") {
  const RandomStream root(7);
  std::set<std::uint64_t> keys{root.key()};
  for (std::uint64_t salt : {msb::stream_salt::kImage, msb::stream_salt::kArtifact,
                             msb::stream_salt::kChannel})
    for (std::uint64_t i = 0; i < 50; ++i) keys.insert(root.substream(salt, i).key());
  CHECK(keys.size() == 1 + 3 * 50);
}

TEST_CASE("a stream is reconstructible from its key") {
  const RandomStream root(99);
  const RandomStream child = root.substream(msb::stream_salt::kImage, 17);
  const RandomStream rebuilt = RandomStream::from_key(child.key());
  for (std::uint64_t i = 0; i < 20; ++i) CHECK(child.bits(i) == rebuilt.bits(i));
}

TEST_CASE("uniform01 lands in the half-open unit interval") {
  const RandomStream s(5);
  double lo = 1.0, hi = 0.0;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const double v = s.uniform01(i);
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("seed bit flips avalanche through the output") {
  int total = 0;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const RandomStream a(seed);
    const RandomStream b(seed ^ (1ull << (seed % 64)));
    total += __builtin_popcountll(a.bits(0) ^ b.bits(0));
  }
  const double mean_flips = total / 64.0;
  CHECK(mean_flips > 24.0);
  CHECK(mean_flips < 40.0);
}

TEST_CASE("sampler ranges") {
  Sampler s{RandomStream(42)};
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform(2.0, 5.0);
    CHECK(u >= 2.0);
    CHECK(u < 5.0);
    const double o = s.uniform_open(1.0, 3.0);
    CHECK(o > 1.0);
    CHECK(o < 3.0);
    const int k = s.uniform_int(10, 80);
    CHECK(k >= 10);
    CHECK(k <= 80);
  }
}

TEST_CASE("uniform_int covers every value of a small range") {
  Sampler s{RandomStream(8)};
  std::set<int> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(s.uniform_int(1, 6));
  CHECK(seen == std::set<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("uniform_int is unbiased across 71 bins") {
  Sampler s{RandomStream(64)};
  constexpr int kBins = 71;
  constexpr int kDraws = 71000;
  std::vector<int> counts(kBins, 0);
  for (int i = 0; i < kDraws; ++i) ++counts[static_cast<std::size_t>(s.uniform_int(0, kBins - 1))];
  const double expected = static_cast<double>(kDraws) / kBins;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 99.9th percentile of chi-square with 70 degrees of freedom.
  CHECK(chi2 < 112.317);
}

TEST_CASE("bernoulli respects the edge probabilities") {
  Sampler s{RandomStream(3)};
  for (int i = 0; i < 1000; ++i) CHECK_FALSE(s.bernoulli(0.0));
  for (int i = 0; i < 1000; ++i) CHECK(s.bernoulli(1.0));
  int hits = 0;
  for (int i = 0; i < 100000; ++i) hits += s.bernoulli(0.7);
  CHECK(hits > 68500);
  CHECK(hits < 71500);
}
