#include <catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "oracles.hpp"
#include "srhsd/range_dist.hpp"
#include "srhsd/rng.hpp"

using Catch::Approx;
using namespace srhsd;

TEST_CASE("mix64 and substreams", "[rng]") {
  // First SplitMix64 output from state 0.
  CHECK(mix64(0) == 0xe220a8397b1dcdafULL);
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
    for (std::uint64_t r = 0; r < 1000; ++r) seen.insert(substream_seed(seed, r));
  }
  CHECK(seen.size() == 3000);
  CHECK(substream_seed(7, 3) == substream_seed(7, 3));
  CHECK(substream_seed(7, 3) != substream_seed(3, 7));
}

TEST_CASE("Xoshiro256 is deterministic and uniform", "[rng]") {
  Xoshiro256 a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs |= x != c();
  }
  CHECK(differs);

  Xoshiro256 g(5);
  std::vector<double> u(100000);
  for (double& v : u) {
    v = g.uniform();
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
  }
  CHECK(oracle::ks_distance(u, [](double x) { return x; }) < 0.01);
}

TEST_CASE("NormalSampler matches the normal law", "[rng]") {
  NormalSampler a(9), b(9);
  for (int i = 0; i < 50; ++i) CHECK(a() == b());

  NormalSampler s(2024);
  std::vector<double> z(200000);
  double sum = 0.0, sq = 0.0;
  for (double& v : z) {
    v = s();
    sum += v;
    sq += v * v;
  }
  const double mean = sum / z.size();
  CHECK(mean == Approx(0.0).margin(0.01));
  CHECK(sq / z.size() - mean * mean == Approx(1.0).margin(0.01));
  CHECK(oracle::ks_distance(z, [](double x) { return oracle::normal_cdf_series(std::clamp(x, -6.0, 6.0)); }) <
        0.005);
}
