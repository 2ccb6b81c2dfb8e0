#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ramanforge/errors.hpp"
#include "ramanforge/evalkit/peaks.hpp"
#include "ramanforge/rng.hpp"

using namespace ramanforge;

namespace {

// Prominence from the reachable interval on each side: the run of samples not
// higher than the peak, ending at the first higher sample or the array edge.
double brute_prominence(const std::vector<double>& y, std::size_t i) {
  const double h = y[i];
  auto higher = [h](double v) { return v > h; };
  const auto left_end = std::find_if(y.rbegin() + static_cast<long>(y.size() - i), y.rend(), higher);
  const auto left_begin = left_end.base();
  const auto right_end = std::find_if(y.begin() + static_cast<long>(i), y.end(), higher);
  const double left_min = *std::min_element(left_begin, y.begin() + static_cast<long>(i) + 1);
  const double right_min = *std::min_element(y.begin() + static_cast<long>(i), right_end);
  return h - std::max(left_min, right_min);
}

std::vector<PeakPoint> at(std::initializer_list<double> positions, double amp = 1.0) {
  std::vector<PeakPoint> out;
  for (double p : positions) out.push_back({p, amp});
  return out;
}

}  // namespace

TEST_SUITE("peaks") {

TEST_CASE("triangle peak") {
  const std::vector<double> y{0, 0, 0.5, 1.0, 0.5, 0, 0};
  const auto found = detect_peaks(y, 0.5);
  REQUIRE(found.size() == 1);
  CHECK(found[0].index == 3);
  CHECK(found[0].prominence == 1.0);
  CHECK(detect_peaks(y, 1.5).empty());
}

TEST_CASE("two peaks with a valley at zero") {
  const std::vector<double> y{0, 1.0, 0, 0.3, 0};
  const auto found = detect_peaks(y, 0.5);
  REQUIRE(found.size() == 1);
  CHECK(found[0].index == 1);
  CHECK(brute_prominence(y, 3) == doctest::Approx(0.3));
  CHECK(peak_prominence(y, 3) == doctest::Approx(0.3));
}

TEST_CASE("prominence matches the brute-force oracle") {
  RngStream rng(61, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> y(static_cast<std::size_t>(rng.uniform_int(3, 40)));
    for (double& v : y) v = std::round(rng.uniform(0, 10));  // ties and plateaus included
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
      CHECK(peak_prominence(y, i) == brute_prominence(y, i));
    }
  }
}

TEST_CASE("prominence zero returns exactly the strict local maxima") {
  RngStream rng(62, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> y(50);
    for (double& v : y) v = std::round(rng.uniform(0, 5));
    std::vector<std::size_t> want;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
      if (y[i - 1] < y[i] && y[i] > y[i + 1]) want.push_back(i);
    }
    std::vector<std::size_t> got;
    for (const auto& p : detect_peaks(y, 0.0)) got.push_back(p.index);
    CHECK(got == want);
  }
  CHECK_THROWS_AS(detect_peaks(std::vector<double>{1, 2, 1}, -1.0), ValidationError);
}

TEST_CASE("matching within the tolerance") {
  const auto r = match_peaks(at({1000.0}), at({1005.0}));
  CHECK(r.n_match == 1);
  CHECK(r.shift_mean == 5.0);
  CHECK(match_peaks(at({1000.0}), at({1006.5})).n_match == 0);
}

TEST_CASE("missing ratio") {
  const auto r = match_peaks(at({700, 900, 1100, 1300}), at({701, 899, 1102}));
  CHECK(r.n_match == 3);
  CHECK(r.missing_ratio == 0.25);
  CHECK(r.artifact_ratio == 0.0);
}

TEST_CASE("no true peaks flags the ratios") {
  const auto r = match_peaks(at({}), at({800, 900}));
  CHECK(r.n_artifact == 2);
  CHECK_FALSE(r.ratios_defined);
  CHECK(std::isinf(r.artifact_ratio));
  CHECK_FALSE(r.matches_defined);
  CHECK(r.value_bias == 0.0);
}

TEST_CASE("one-to-one greedy matching by distance") {
  // 1003 pairs with 1004 first (distance 1), leaving 1001 for 998 (distance 3).
  const auto r = match_peaks(at({998, 1004}), at({1001, 1003}));
  CHECK(r.n_match == 2);
  CHECK(r.shift_mean == doctest::Approx((1.0 + 3.0) / 2));
  // A single prediction cannot match two true peaks.
  const auto s = match_peaks(at({1000, 1002}), at({1001.5}));
  CHECK(s.n_match == 1);
  CHECK(s.n_miss == 1);
}

TEST_CASE("bookkeeping identities") {
  RngStream rng(63, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PeakPoint> t, p;
    const auto n_t = rng.uniform_int(0, 8), n_p = rng.uniform_int(0, 8);
    for (int k = 0; k < n_t; ++k) t.push_back({rng.uniform(600, 700), 1.0});
    for (int k = 0; k < n_p; ++k) p.push_back({rng.uniform(600, 700), 0.5});
    const auto r = match_peaks(t, p);
    CHECK(r.n_true == r.n_match + r.n_miss);
    CHECK(r.n_pred == r.n_match + r.n_artifact);
    CHECK(r.n_match <= std::min(r.n_true, r.n_pred));
    if (r.ratios_defined) CHECK((r.missing_ratio >= 0.0 && r.missing_ratio <= 1.0));
    if (r.matches_defined) CHECK(r.value_bias == doctest::Approx(0.5));
  }
}

}  // TEST_SUITE
