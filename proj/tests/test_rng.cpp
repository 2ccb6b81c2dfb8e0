#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "ramanforge/errors.hpp"
#include "ramanforge/parallel.hpp"
#include "ramanforge/rng.hpp"

using namespace ramanforge;

TEST_SUITE("rng") {

TEST_CASE("streams are reproducible and depend on both ids") {
  RngStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  const double x = a.uniform(0, 1);
  CHECK(x == b.uniform(0, 1));
  CHECK(x != c.uniform(0, 1));
  CHECK(x != d.uniform(0, 1));
  a.reset();
  CHECK(a.uniform(0, 1) == x);
}

TEST_CASE("substreams do not depend on creation order") {
  const RngStream root(7, 3);
  RngStream s5 = root.substream(5);
  RngStream s2 = root.substream(2);
  RngStream s5b = RngStream(7, 3).substream(5);
  CHECK(s5.engine()() == s5b.engine()());
  std::set<std::uint64_t> indices;
  for (std::uint64_t i = 0; i < 1000; ++i) indices.insert(root.substream(i).stream_index());
  CHECK(indices.size() == 1000);
  (void)s2;
}

TEST_CASE("uniform ranges") {
  RngStream r(1, 1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform_open_closed();
    CHECK((u > 0.0 && u <= 1.0));
    const auto k = r.uniform_int(3, 6);
    CHECK((k >= 3 && k <= 6));
  }
}

TEST_CASE("gaussian and poisson moments") {
  RngStream r(9, 9);
  const int n = 200000;
  double s1 = 0, s2 = 0, p1 = 0, p2 = 0;
  for (int i = 0; i < n; ++i) {
    const double g = sample_gaussian(r, 3.0, 4.0);
    s1 += g;
    s2 += g * g;
    const double p = static_cast<double>(sample_poisson(r, 12.5));
    p1 += p;
    p2 += p * p;
  }
  const double gm = s1 / n, gv = s2 / n - gm * gm;
  const double pm = p1 / n, pv = p2 / n - pm * pm;
  CHECK(std::abs(gm - 3.0) < 5 * std::sqrt(4.0 / n));
  CHECK(std::abs(gv - 4.0) < 5 * 4.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(pm - 12.5) < 5 * std::sqrt(12.5 / n));
  CHECK(std::abs(pv - 12.5) < 0.2);
  CHECK(sample_gaussian(r, 5.0, 0.0) == 5.0);
  CHECK(sample_poisson(r, 0.0) == 0);
  CHECK_THROWS_AS(sample_gaussian(r, 0.0, -1.0), ValidationError);
  CHECK_THROWS_AS(sample_poisson(r, -1.0), ValidationError);
}

TEST_CASE("parallel_for covers every index and rethrows the lowest failure") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);

  try {
    parallel_for(100, [](std::size_t i) {
      if (i == 17 || i == 60) throw ValidationError("item " + std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "item 17");
  }
}

}  // TEST_SUITE
