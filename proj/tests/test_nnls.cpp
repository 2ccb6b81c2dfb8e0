#include <cmath>
#include <vector>

#include "doctest.h"
#include "ramanforge/errors.hpp"
#include "ramanforge/evalkit/nnls.hpp"
#include "ramanforge/rng.hpp"

using namespace ramanforge;

namespace {

Eigen::MatrixXd random_matrix(RngStream& rng, int rows, int cols, double lo, double hi) {
  Eigen::MatrixXd a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = rng.uniform(lo, hi);
  return a;
}

double kkt_violation(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& x) {
  const Eigen::VectorXd grad = a.transpose() * (a * x - b);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) < 0.0) return INFINITY;
    worst = std::max(worst, x(j) > 0.0 ? std::abs(grad(j)) : std::max(0.0, -grad(j)));
  }
  return worst;
}

}  // namespace

TEST_SUITE("nnls") {

TEST_CASE("KKT conditions on random problems") {
  RngStream rng(71, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = static_cast<int>(rng.uniform_int(7, 60));
    const int cols = static_cast<int>(rng.uniform_int(1, 7));
    const Eigen::MatrixXd a = random_matrix(rng, rows, cols, -1.0, 1.0);
    const Eigen::VectorXd b = random_matrix(rng, rows, 1, -1.0, 1.0);
    const NnlsResult r = nnls(a, b);
    CHECK(kkt_violation(a, b, r.weights) < 1e-8);
  }
}

TEST_CASE("objective never increases") {
  RngStream rng(72, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd a = random_matrix(rng, 40, 7, -1.0, 1.0);
    const Eigen::VectorXd b = random_matrix(rng, 40, 1, -1.0, 1.0);
    const auto trace = nnls(a, b).objective_trace;
    for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] <= trace[k - 1] * (1 + 1e-12));
  }
}

TEST_CASE("exact mixtures are recovered") {
  RngStream rng(73, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd a = random_matrix(rng, 100, 7, 0.0, 1.0);
    Eigen::VectorXd w0(7);
    for (int j = 0; j < 7; ++j) w0(j) = j % 3 == 0 ? 0.0 : rng.uniform(0.0, 2.0);
    const Eigen::VectorXd w = nnls(a, a * w0).weights;
    CHECK((w - w0).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("negative target clamps to zero") {
  Eigen::MatrixXd a(3, 1);
  a << 1, 2, 3;
  CHECK(nnls(a, -a.col(0)).weights(0) == 0.0);
}

TEST_CASE("orthogonal basis matches the projection") {
  // Columns e1 + e2 and e3; the noise e4 is orthogonal to both.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 2);
  a(0, 0) = a(1, 0) = 1.0;
  a(2, 1) = 1.0;
  Eigen::VectorXd b = 2.0 * a.col(0);
  b(3) = 0.7;
  const Eigen::VectorXd w = nnls(a, b).weights;
  // Closed form: w_k = <a_k, b> / <a_k, a_k>.
  CHECK(std::abs(w(0) - a.col(0).dot(b) / a.col(0).squaredNorm()) < 1e-8);
  CHECK(std::abs(w(0) - 2.0) < 1e-8);
  CHECK(std::abs(w(1)) < 1e-8);
}

TEST_CASE("spectrum interface and validation") {
  const SpectrumGrid g(0.0, 3.0, 4);
  const std::vector<Spectrum> basis{Spectrum(g, {1, 0, 0, 1}), Spectrum(g, {0, 1, 1, 0})};
  const auto w = nnls(basis, Spectrum(g, {3, 2, 2, 3}));
  CHECK(w[0] == doctest::Approx(3.0));
  CHECK(w[1] == doctest::Approx(2.0));
  const std::vector<Spectrum> mixed{Spectrum(g), Spectrum(SpectrumGrid(0.0, 4.0, 4))};
  CHECK_THROWS_AS(nnls(mixed, Spectrum(g)), ValidationError);
  CHECK_THROWS_AS(nnls(Eigen::MatrixXd(3, 2), Eigen::VectorXd(4)), ValidationError);
}

TEST_CASE("rank-deficient basis still satisfies KKT") {
  RngStream rng(74, 0);
  Eigen::MatrixXd a = random_matrix(rng, 30, 4, 0.0, 1.0);
  a.col(3) = a.col(0) + a.col(1);
  const Eigen::VectorXd b = random_matrix(rng, 30, 1, 0.0, 1.0);
  CHECK(kkt_violation(a, b, nnls(a, b).weights) < 1e-8);
}

}  // TEST_SUITE
