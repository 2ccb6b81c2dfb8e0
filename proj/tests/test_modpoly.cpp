#include <cmath>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "ramanforge/classical/modpoly.hpp"
#include "ramanforge/errors.hpp"

using namespace ramanforge;

TEST_SUITE("modpoly") {

TEST_CASE("baseline-only input is removed") {
  const SpectrumGrid g;
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.normalized(i);
    v[i] = 3.0 - 2.0 * x + 0.5 * x * x * x;
  }
  const ModPolyResult r = modpoly_baseline(Spectrum(g, v));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(r.corrected[i]) < 1e-9);
}

TEST_CASE("working signal never rises above the input") {
  const SpectrumGrid g;
  RngStream rng(41, 0);
  for (int k = 0; k < 5; ++k) {
    const auto c = rftest::baseline_case(g, rng);
    for (int order = 3; order <= 6; ++order) {
      const ModPolyFit fit = modpoly_fit_order(c.signal.values(), order, ModPolyConfig{});
      for (std::size_t i = 0; i < g.size(); ++i) CHECK(fit.working[i] <= c.signal[i]);
      CHECK(fit.iterations >= 1);
      CHECK(fit.iterations <= 100);
    }
  }
}

TEST_CASE("cubic baselines under positive peaks are recovered") {
  const SpectrumGrid g;
  RngStream rng(42, 0);
  for (int k = 0; k < 20; ++k) {
    const auto c = rftest::baseline_case(g, rng);
    const ModPolyResult r = modpoly_baseline(c.signal);
    double sq = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!c.peak_free[i]) continue;
      const double d = r.baseline[i] - c.baseline[i];
      sq += d * d;
      ++n;
    }
    CHECK(std::sqrt(sq / n) < 0.02 * c.baseline_range);
  }
}

TEST_CASE("configuration validation") {
  const SpectrumGrid g;
  const Spectrum s(g);
  CHECK_THROWS_AS(modpoly_baseline(s, ModPolyConfig{5, 3}), ValidationError);
  CHECK_THROWS_AS(modpoly_baseline(s, ModPolyConfig{3, 6, 0}), ValidationError);
  CHECK_THROWS_AS(modpoly_baseline(s, ModPolyConfig{3, 6, 100, 0.0}), ValidationError);
  std::vector<double> tiny(3, 1.0);
  CHECK_THROWS_AS(modpoly_fit_order(tiny, 3, ModPolyConfig{}), ValidationError);
}

}  // TEST_SUITE
