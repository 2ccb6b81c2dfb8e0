#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "ramanforge/classical/wavelet.hpp"
#include "ramanforge/errors.hpp"
#include "ramanforge/rng.hpp"

using namespace ramanforge;

namespace {

std::vector<double> noise(RngStream& rng, std::size_t n, double sd) {
  std::vector<double> v(n);
  for (double& x : v) x = sample_gaussian(rng, 0.0, sd * sd);
  return v;
}

double variance(const std::vector<double>& v) {
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

}  // namespace

TEST_SUITE("wavelet") {

TEST_CASE("db2 matches its closed form") {
  const double r3 = std::sqrt(3.0), den = 4.0 * std::sqrt(2.0);
  const double want[] = {(1 + r3) / den, (3 + r3) / den, (3 - r3) / den, (1 - r3) / den};
  const auto& lo = wavelet_filter("db2").lowpass;
  for (int k = 0; k < 4; ++k) CHECK(lo[k] == doctest::Approx(want[k]).epsilon(1e-15));
}

TEST_CASE("filters are orthonormal with vanishing moments") {
  for (const char* name : {"haar", "db2", "db4"}) {
    const auto& lo = wavelet_filter(name).lowpass;
    const auto hi = wavelet_filter(name).highpass();
    const int len = static_cast<int>(lo.size());
    CHECK(std::accumulate(lo.begin(), lo.end(), 0.0) == doctest::Approx(std::sqrt(2.0)));
    for (int shift = 0; shift < len; shift += 2) {
      double s = 0.0;
      for (int k = 0; k + shift < len; ++k) s += lo[k] * lo[k + shift];
      CHECK(std::abs(s - (shift == 0 ? 1.0 : 0.0)) < 1e-14);
    }
    for (int p = 0; p < len / 2; ++p) {
      double moment = 0.0;
      for (int k = 0; k < len; ++k) moment += hi[k] * std::pow(k, p);
      CHECK(std::abs(moment) < 1e-9);
    }
  }
  CHECK_THROWS_AS(wavelet_filter("sym8"), ValidationError);
}

TEST_CASE("dwt and idwt are exact inverses on dyadic lengths") {
  RngStream rng(31, 0);
  for (const char* name : {"haar", "db2", "db4"}) {
    for (std::size_t n : {8u, 64u, 1024u}) {
      const auto x = noise(rng, n, 1.0);
      const auto c = dwt(x, wavelet_filter(name), 3);
      CHECK(c.details.size() == 3);
      CHECK(c.details[0].size() == n / 2);
      CHECK(c.approx.size() == n / 8);
      const auto y = idwt(c, wavelet_filter(name));
      double err = 0.0, e_in = 0.0, e_out = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        err = std::max(err, std::abs(x[i] - y[i]));
        e_in += x[i] * x[i];
      }
      for (const auto& d : c.details)
        for (double v : d) e_out += v * v;
      for (double v : c.approx) e_out += v * v;
      CHECK(err < 1e-10);
      CHECK(e_out == doctest::Approx(e_in).epsilon(1e-12));
    }
  }
  std::vector<double> odd(12, 1.0);
  CHECK_THROWS_AS(dwt(odd, wavelet_filter("haar"), 3), ValidationError);
}

TEST_CASE("half-sample symmetric padding") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::size_t offset = 0;
  const auto p = symmetric_pad(x, 16, offset);
  CHECK(offset == 5);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(p[offset + i] == x[i]);
  for (std::size_t j = 0; j < offset; ++j) CHECK(p[offset - 1 - j] == x[j]);
  for (std::size_t j = 0; j < x.size(); ++j) CHECK(p[offset + x.size() + j] == x[x.size() - 1 - j]);
  CHECK(p[15] == x[0]);  // one full period later
  CHECK(dyadic_length(693) == 1024);
  CHECK(dyadic_length(512) == 512);
}

TEST_CASE("zero threshold reproduces a 693-point signal") {
  RngStream rng(32, 0);
  const auto x = noise(rng, 693, 3.0);
  for (const char* name : {"haar", "db2", "db4"}) {
    const auto y = wavelet_denoise(x, WaveletConfig{name, 5, ThresholdRule::kSoft, 0.0});
    REQUIRE(y.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) < 1e-10);
  }
}

TEST_CASE("threshold rules") {
  CHECK(soft_threshold(3.0, 1.0) == 2.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(hard_threshold(3.0, 1.0) == 3.0);
  CHECK(hard_threshold(-0.5, 1.0) == 0.0);
}

TEST_CASE("universal threshold from the finest details") {
  WaveletCoeffs c;
  c.details = {{-0.6745, 0.6745, 2 * 0.6745, 0.0}, {100.0}};
  // median |d| = (0.6745 + 0.6745) / 2, so sigma = 1.
  CHECK(universal_threshold(c, 1024) == doctest::Approx(std::sqrt(2.0 * std::log(1024.0))));
}

TEST_CASE("soft thresholding reduces the variance of pure noise") {
  RngStream rng(33, 0);
  int reduced = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = noise(rng, 693, 1.0);
    const auto y = wavelet_denoise(x, WaveletConfig{});
    reduced += variance(y) < variance(x) ? 1 : 0;
  }
  CHECK(reduced >= 95);
}

TEST_CASE("level validation") {
  std::vector<double> x(693, 1.0);
  CHECK_THROWS_AS(wavelet_denoise(x, WaveletConfig{"db4", 0}), ValidationError);
  CHECK_THROWS_AS(wavelet_denoise(x, WaveletConfig{"db4", 11}), ValidationError);
  CHECK_NOTHROW(wavelet_denoise(x, WaveletConfig{"haar", 10}));
}

}  // TEST_SUITE
