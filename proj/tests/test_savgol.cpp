#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ramanforge/classical/savgol.hpp"
#include "ramanforge/errors.hpp"
#include "ramanforge/rng.hpp"

using namespace ramanforge;
using Rational = boost::multiprecision::cpp_rational;

namespace {

// Exact least-squares weights: row t of V (V^T V)^{-1} V^T on integer
// abscissae -m..m, solved by Gauss-Jordan elimination over the rationals.
std::vector<double> rational_sg(int m, int d, int t) {
  const int n = d + 1;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  auto power = [](int x, int k) {
    Rational p = 1;
    for (int i = 0; i < k; ++i) p *= x;
    return p;
  };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      for (int x = -m; x <= m; ++x) a[r][c] += power(x, r + c);
    }
    a[r][n] = power(t, r);
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (a[pivot][col] == 0) ++pivot;
    std::swap(a[col], a[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  // z = (V^T V)^{-1} e(t), weights c_x = sum_k z_k x^k.
  std::vector<double> w;
  for (int x = -m; x <= m; ++x) {
    Rational acc = 0;
    for (int k = 0; k < n; ++k) acc += a[k][n] / a[k][k] * power(x, k);
    w.push_back(static_cast<double>(acc));
  }
  return w;
}

}  // namespace

TEST_SUITE("savgol") {

TEST_CASE("coefficients match the exact least-squares oracle") {
  double worst = 0.0;
  for (int m = 0; m <= 6; ++m) {
    for (int d = 0; d < 2 * m + 1; ++d) {
      for (int t = -m; t <= m; ++t) {
        const auto got = sg_coefficients(m, d, t);
        const auto want = rational_sg(m, d, t);
        REQUIRE(got.size() == want.size());
        for (std::size_t k = 0; k < got.size(); ++k) {
          worst = std::max(worst, std::abs(got[k] - want[k]));
        }
      }
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("classic 5-point quadratic weights") {
  const auto c = sg_coefficients(2, 2);
  const double want[] = {-3, 12, 17, 12, -3};
  for (int k = 0; k < 5; ++k) CHECK(c[k] == doctest::Approx(want[k] / 35.0).epsilon(1e-14));
}

TEST_CASE("polynomials up to the fitted degree are reproduced, edges included") {
  for (int m = 1; m <= 6; ++m) {
    for (int d = 0; d < 2 * m + 1; ++d) {
      std::vector<double> y(40);
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double x = static_cast<double>(i) / 39.0 * 2.0 - 1.0;
        double p = 0.0;
        for (int k = d; k >= 0; --k) p = p * x + (k % 2 ? -0.7 : 1.3) / (k + 1);
        y[i] = p;
      }
      const auto out = sg_filter(y, SGConfig{m, d});
      for (std::size_t i = 0; i < y.size(); ++i) CHECK(out[i] == doctest::Approx(y[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("filter is linear") {
  RngStream rng(21, 0);
  std::vector<double> x(693), y(693), z(693);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.uniform(-5, 5);
    y[i] = rng.uniform(-5, 5);
    z[i] = 2.5 * x[i] - 0.75 * y[i];
  }
  const SGConfig cfg{5, 3};
  const auto fx = sg_filter(x, cfg), fy = sg_filter(y, cfg), fz = sg_filter(z, cfg);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(fz[i] - (2.5 * fx[i] - 0.75 * fy[i])) < 1e-10);
  }
}

TEST_CASE("edge points use the shifted window fit") {
  RngStream rng(22, 0);
  std::vector<double> y(30);
  for (double& v : y) v = rng.uniform(0, 1);
  const int m = 3, d = 2;
  const auto out = sg_filter(y, SGConfig{m, d});
  // Point 1 is the first window's fit evaluated at offset 1 - m.
  const auto w = rational_sg(m, d, 1 - m);
  double want = 0.0;
  for (int k = 0; k < 2 * m + 1; ++k) want += w[k] * y[k];
  CHECK(out[1] == doctest::Approx(want).epsilon(1e-12));
  const auto wl = rational_sg(m, d, m);
  double last = 0.0;
  for (int k = 0; k < 2 * m + 1; ++k) last += wl[k] * y[y.size() - 7 + k];
  CHECK(out.back() == doctest::Approx(last).epsilon(1e-12));
}

TEST_CASE("invalid configurations") {
  std::vector<double> y(10, 1.0);
  CHECK_THROWS_AS(sg_filter(y, SGConfig{2, 5}), ValidationError);
  CHECK_THROWS_AS(sg_filter(y, SGConfig{6, 2}), ValidationError);
  CHECK_THROWS_AS(sg_coefficients(2, 2, 3), ValidationError);
}

}  // TEST_SUITE
