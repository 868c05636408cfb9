#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <set>
#include <vector>

#include "regime_split/errors.hpp"
#include "regime_split/parallel.hpp"
#include "regime_split/rng.hpp"
#include "regime_split/types.hpp"

using namespace regime_split;

TEST_CASE("mix_seed is deterministic and spreads streams") {
  CHECK(mix_seed(1, 0) == mix_seed(1, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (std::uint64_t stream = 0; stream < 10; ++stream) {
      seen.insert(mix_seed(seed, stream));
    }
  }
  CHECK(seen.size() == 100);
}

TEST_CASE("rng_stream reproduces the same sequence per (seed, stream)") {
  rng_stream a(42, 3);
  rng_stream b(42, 3);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  rng_stream c(42, 4);
  CHECK(rng_stream(42, 3).next_u64() != c.next_u64());
}

TEST_CASE("uniform lands in (0, 1]") {
  rng_stream r(7, 0);
  for (int i = 0; i < 10000; ++i) {
    double u = r.uniform();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("normal draws have roughly standard moments") {
  rng_stream r(11, 0);
  double sum = 0.0, sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double z = r.normal();
    sum += z;
    sq += z * z;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("parallel_for touches every index exactly once") {
  const std::size_t n = 1000;
  std::vector<int> hits(n, 0);
  parallel_for(n, [&](std::size_t i) { hits[i] += 1; });
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(hits[i] == 1);
  }
}

TEST_CASE("parallel_for propagates worker exceptions") {
  CHECK_THROWS_AS(parallel_for(100,
                               [](std::size_t i) {
                                 if (i == 37) {
                                   throw error(errc::domain_error, "boom");
                                 }
                               }),
                  error);
}

TEST_CASE("worker_count respects the environment variable") {
  setenv("REGIME_SPLIT_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("REGIME_SPLIT_THREADS", "0", 1);
  CHECK(worker_count() >= 1);
  unsetenv("REGIME_SPLIT_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("errors carry code, name prefix, and optional index") {
  error plain(errc::empty_sample, "nothing to scan");
  CHECK(plain.code() == errc::empty_sample);
  CHECK(std::string(plain.what()).find("EmptySample") == 0);
  CHECK_FALSE(plain.index().has_value());

  error indexed(errc::non_finite_value, "bad entry", 5);
  CHECK(indexed.index().has_value());
  CHECK(*indexed.index() == 5);
  CHECK(std::string(indexed.what()).find("index 5") != std::string::npos);
}

TEST_CASE("vector_sample row accounting") {
  vector_sample vs;
  vs.dim = 2;
  vs.data = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  CHECK(vs.size() == 3);
  CHECK(vs.row(1)[0] == 3.0);
  CHECK(vs.row(2)[1] == 6.0);
}

TEST_CASE("band_partition counts both sides") {
  band_partition p;
  p.ordinary_indices = {0, 2, 4};
  p.abnormal_indices = {1, 3};
  CHECK(p.n1() == 3);
  CHECK(p.n2() == 2);
}
