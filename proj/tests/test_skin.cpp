#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "ramanforge/errors.hpp"
#include "ramanforge/evalkit/nnls.hpp"
#include "ramanforge/skin.hpp"

using namespace ramanforge;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("rf_skin_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<NamedCurve> curves_on(const std::vector<double>& axis, const SkinBasis& source) {
  std::vector<NamedCurve> out;
  for (std::size_t c = 0; c < kSkinComponentCount; ++c) {
    SampledCurve curve;
    for (double w : axis) {
      curve.wavenumbers.push_back(w);
      const auto i = static_cast<std::size_t>(
          std::lround((w - source.grid().start()) / source.grid().spacing()));
      curve.values.push_back(1.0 + source.components[c][i]);
    }
    out.push_back({std::string(kSkinComponents[c]), curve});
  }
  return out;
}

}  // namespace

TEST_SUITE("skin") {

TEST_CASE("stand-in basis is valid and distinct") {
  const SkinBasis b = standin_basis();
  REQUIRE(b.components.size() == 7);
  b.validate();
  for (const auto& c : b.components) CHECK(trapezoid_auc(c) == doctest::Approx(1.0).epsilon(1e-12));
  const Eigen::MatrixXd a = basis_matrix(b.components);
  CHECK(a.colPivHouseholderQr().rank() == 7);
}

TEST_CASE("validate rejects malformed bases") {
  SkinBasis b = standin_basis();
  b.components[2] = b.components[2] * 2.0;
  CHECK_THROWS_AS(b.validate(), ValidationError);
  b.components.pop_back();
  CHECK_THROWS_AS(b.validate(), ValidationError);
}

TEST_CASE("mixtures are linear") {
  const SkinBasis b = standin_basis();
  RngStream rng(91, 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> w1(7), w2(7), sum(7);
    for (int c = 0; c < 7; ++c) {
      w1[c] = rng.uniform(0, 1);
      w2[c] = rng.uniform(0, 1);
      sum[c] = w1[c] + w2[c];
    }
    const Spectrum lhs = mix_components(b, sum);
    const Spectrum rhs = mix_components(b, w1) + mix_components(b, w2);
    for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-12);
  }
  CHECK_THROWS_AS(mix_components(b, std::vector<double>(6, 1.0)), ValidationError);
}

TEST_CASE("gen_skin weights are recovered by NNLS") {
  const SkinBasis b = standin_basis();
  RngStream rng(92, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const SkinSample s = gen_skin(b, rng);
    for (double w : s.weights) CHECK((w >= 0.0 && w < 1.0));
    const auto got = nnls(b.components, s.spectrum);
    for (int c = 0; c < 7; ++c) CHECK(std::abs(got[c] - s.weights[c]) < 1e-6);
  }
}

TEST_CASE("load_basis keeps a shared uniform axis") {
  const SkinBasis src = standin_basis();
  std::vector<double> axis;
  for (std::size_t i = 0; i < src.grid().size(); ++i) axis.push_back(src.grid().at(i));
  const SkinBasis b = load_basis(curves_on(axis, src));
  CHECK(b.grid() == src.grid());
  for (const auto& c : b.components) CHECK(trapezoid_auc(c) == doctest::Approx(1.0));
}

TEST_CASE("load_basis resamples an irregular axis") {
  const SkinBasis src = standin_basis();
  std::vector<double> axis{600, 620, 700, 1000, 1400, 1700, 1790};
  auto curves = curves_on(axis, src);
  std::swap(curves[0], curves[4]);  // order comes from the names
  const SkinBasis b = load_basis(curves);
  CHECK(b.grid() == SpectrumGrid());
  b.validate();
  curves.pop_back();
  CHECK_THROWS_AS(load_basis(curves), ValidationError);
  curves = curves_on(axis, src);
  curves[3].name = "melanin";
  CHECK_THROWS_AS(load_basis(curves), ValidationError);
}

TEST_CASE("basis directory round trip") {
  const auto dir = scratch_dir("roundtrip");
  const SkinBasis b = standin_basis();
  write_basis_dir(dir, b);
  for (auto name : kSkinComponents) CHECK(std::filesystem::exists(dir / (std::string(name) + ".csv")));
  const SkinBasis back = load_basis_dir(dir);
  for (std::size_t c = 0; c < 7; ++c)
    for (std::size_t i = 0; i < back.components[c].size(); ++i)
      CHECK(std::abs(back.components[c][i] - b.components[c][i]) < 1e-12);
  std::filesystem::remove(dir / "keratin.csv");
  CHECK_THROWS_WITH(load_basis_dir(dir), doctest::Contains("keratin"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("skin test set is deterministic and labeled") {
  const SkinBasis b = standin_basis();
  const std::vector<DarkStats> darks{rftest::flat_dark(b.grid(), 20.0)};
  const auto a = gen_skin_testset(b, 12, RngStream(93, 0), darks);
  const auto c = gen_skin_testset(b, 12, RngStream(93, 0), darks);
  REQUIRE(a.size() == 12);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].weights == c[k].weights);
    CHECK(a[k].example.noisy.data() == c[k].example.noisy.data());
    // The pure target is m times the mixture.
    const Spectrum mix = mix_components(b, a[k].weights);
    const double m = a[k].example.scale.m;
    for (std::size_t i = 0; i < mix.size(); i += 37)
      CHECK(a[k].example.pure_raman[i] == doctest::Approx(m * mix[i]).epsilon(1e-10));
  }
}

}  // TEST_SUITE
