#include <cmath>
#include <cstdlib>
#include <set>
#include <vector>

#include "doctest.h"
#include "ramanforge/errors.hpp"
#include "ramanforge/synth.hpp"

using namespace ramanforge;

namespace {

DarkStats flat_dark(const SpectrumGrid& g, double variance) {
  return DarkStats{g, std::vector<double>(g.size(), 0.0), std::vector<double>(g.size(), variance),
                   0.1, 1000};
}

void check_targets(const LabeledExample& ex, const DarkStats& dark) {
  const std::size_t p = ex.peak_index;
  const double r2f = ex.pure_raman[p] / ex.fluorescence.max();
  const double snr =
      ex.pure_raman[p] / std::sqrt(ex.clean_with_baseline[p] + 2.0 * dark.variance[p]);
  CHECK(r2f == doctest::Approx(ex.targets.r2f).epsilon(1e-9));
  CHECK(snr == doctest::Approx(ex.targets.snr).epsilon(1e-9));
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("pseudo-Voigt has a unit summit and shares the FWHM") {
  const double fwhm = 37.0;
  for (double mix : {0.0, 0.3, 1.0}) {
    const PeakParams p = PeakParams::from_fwhm(1000.0, fwhm, mix, 0.8);
    CHECK(pseudo_voigt_at(1000.0, p) == doctest::Approx(0.8));
    CHECK(pseudo_voigt_at(1000.0 + fwhm / 2, p) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(pseudo_voigt_at(1000.0 - fwhm / 2, p) == doctest::Approx(0.4).epsilon(1e-12));
  }
  const PeakParams p = PeakParams::from_fwhm(1000.0, fwhm, 0.5, 1.0);
  CHECK(p.lorentz_width == doctest::Approx(fwhm / 2));
  CHECK(p.gauss_width == doctest::Approx(fwhm / (2 * std::sqrt(2 * std::log(2.0)))));
}

TEST_CASE("pseudo-Voigt parameter validation") {
  const SpectrumGrid g;
  CHECK_THROWS_AS(pseudo_voigt(g, PeakParams::from_fwhm(1000, 20, 0.5, 0.0)), ValidationError);
  CHECK_THROWS_AS(pseudo_voigt(g, PeakParams::from_fwhm(1000, 20, 0.5, 1.5)), ValidationError);
  CHECK_THROWS_AS(pseudo_voigt(g, PeakParams::from_fwhm(1000, 20, 1.5, 0.5)), ValidationError);
  CHECK_THROWS_AS(pseudo_voigt(g, PeakParams::from_fwhm(1000, -2, 0.5, 0.5)), ValidationError);
  CHECK_THROWS_AS(pseudo_voigt(g, PeakParams::from_fwhm(500, 20, 0.5, 0.5)), ValidationError);
}

TEST_CASE("peak count is uniform on 0..30") {
  const SpectrumGrid g;
  RngStream rng(11, 0);
  const int per_bin = 200;
  const int draws = 31 * per_bin;
  std::vector<int> counts(31, 0);
  for (int k = 0; k < draws; ++k) {
    const auto peaks = sample_peaks(g, rng);
    REQUIRE(peaks.size() <= 30);
    ++counts[peaks.size()];
    for (const auto& p : peaks) {
      CHECK((p.amplitude > 0.0 && p.amplitude <= 1.0));
      const double fwhm = 2.0 * p.lorentz_width;
      CHECK((fwhm >= 10.0 && fwhm <= 200.0));
      CHECK((p.center >= 600.0 && p.center <= 1790.0));
      CHECK((p.mix >= 0.0 && p.mix <= 1.0));
    }
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - per_bin) * (c - per_bin) / static_cast<double>(per_bin);
  // 99.9% quantile of chi-square with 30 degrees of freedom.
  CHECK(chi2 < 59.70);
}

TEST_CASE("fluorescence orders, coefficients and evaluation") {
  RngStream rng(12, 0);
  std::set<int> orders;
  for (int k = 0; k < 400; ++k) {
    const FluorSpec spec = sample_fluor_spec(rng);
    orders.insert(spec.order);
    CHECK(spec.coeffs.size() == static_cast<std::size_t>(spec.order) + 1);
    for (double a : spec.coeffs) CHECK((a >= -1.0 && a <= 1.0));
  }
  CHECK(orders == std::set<int>{3, 4, 5, 6});

  const SpectrumGrid g(600.0, 1790.0, 11);
  const FluorSpec spec{3, {0.5, -1.0, 0.25, 0.75}};
  const Spectrum f = evaluate_fluorescence(g, spec);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = (g.at(i) - 600.0) / 1190.0;
    const double direct = 0.5 - x + 0.25 * x * x + 0.75 * x * x * x;
    CHECK(f[i] == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("fluorescence is strictly positive") {
  const SpectrumGrid g;
  RngStream rng(13, 0);
  for (int k = 0; k < 200; ++k) CHECK(gen_fluorescence(g, rng).min() > 0.0);

  const Spectrum s(SpectrumGrid(0.0, 2.0, 3), {-2.0, 1.0, 3.0});
  const Spectrum lifted = shift_positive(s, 1e-6);
  CHECK(lifted.min() == doctest::Approx(1e-6));
  CHECK(lifted[2] - lifted[1] == doctest::Approx(2.0));
}

TEST_CASE("solve_scale worked values") {
  const ScaleFactors a = solve_scale(1, 1, 1, 1, 1, 0);
  CHECK(a.m == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(a.n == doctest::Approx(2.0).epsilon(1e-15));

  // r2f=0.5, s=2, x_p=2, f_max=4, f_p=1, y=3: A=4, B=-12, C=-12.
  const ScaleFactors b = solve_scale(0.5, 2, 2, 4, 1, 3);
  const double expected = (12.0 + std::sqrt(336.0)) / 8.0;
  CHECK(b.n == doctest::Approx(expected).epsilon(1e-15));
  CHECK(b.m == doctest::Approx(0.5 * expected * 4.0 / 2.0).epsilon(1e-15));
}

TEST_CASE("solve_scale back-substitution") {
  RngStream rng(14, 0);
  for (int k = 0; k < 2000; ++k) {
    const double r2f = rng.uniform(0.1, 0.5), s = rng.uniform(0.01, 20.0);
    const double x_p = rng.uniform(0.01, 5.0), f_max = rng.uniform(0.01, 5.0);
    const double f_p = rng.uniform(0.0, f_max), y = rng.uniform(0.0, 200.0);
    const ScaleFactors sf = solve_scale(r2f, s, x_p, f_max, f_p, y);
    CHECK(sf.m * x_p / (sf.n * f_max) == doctest::Approx(r2f).epsilon(1e-12));
    CHECK(sf.m * x_p / std::sqrt(sf.m * x_p + sf.n * f_p + y) ==
          doctest::Approx(s).epsilon(1e-12));
  }
  CHECK_THROWS_AS(solve_scale(0.3, 1.0, 0.0, 1.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(solve_scale(0.3, 1.0, 1.0, 0.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("assembled examples hit their targets") {
  const SpectrumGrid g;
  const DarkStats dark = flat_dark(g, 25.0);
  const std::vector<DarkStats> darks{dark};
  RngStream root(15, 0);
  for (std::size_t i = 0; i < 50; ++i) {
    RngStream s = root.substream(i);
    const LabeledExample ex = gen_example(g, darks, s);
    check_targets(ex, dark);
    CHECK(ex.pure_raman.argmax() == ex.peak_index);
    CHECK(ex.fluorescence.min() > 0.0);
    CHECK(ex.targets.r2f >= 0.1);
    CHECK(ex.targets.r2f < 0.5);
    CHECK(ex.targets.snr >= 0.01);
    CHECK(ex.targets.snr < 20.0);
  }
}

TEST_CASE("flat Raman input is rejected") {
  const SpectrumGrid g;
  RngStream rng(16, 0);
  CHECK_THROWS_AS(assemble_example(Spectrum(g), gen_fluorescence(g, rng), {0.3, 5.0},
                                   flat_dark(g, 1.0), rng),
                  FlatRamanError);
}

TEST_CASE("dataset generation is independent of thread count") {
  const SpectrumGrid g;
  const std::vector<DarkStats> darks{flat_dark(g, 10.0), flat_dark(g, 40.0)};
  const RngStream stream(17, 2);
  setenv("RAMANFORGE_THREADS", "1", 1);
  const auto serial = gen_dataset(24, g, darks, stream);
  setenv("RAMANFORGE_THREADS", "4", 1);
  const auto threaded = gen_dataset(24, g, darks, stream);
  unsetenv("RAMANFORGE_THREADS");
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].noisy.data() == threaded[i].noisy.data());
    CHECK(serial[i].dark_id == threaded[i].dark_id);
    check_targets(serial[i], darks[serial[i].dark_id]);
  }
  // A prefix of a larger dataset is the smaller dataset.
  const auto longer = gen_dataset(30, g, darks, stream);
  CHECK(longer[23].noisy.data() == serial[23].noisy.data());
}

TEST_CASE("dataset generation needs dark stats") {
  const SpectrumGrid g;
  std::vector<DarkStats> none;
  CHECK_THROWS_AS(gen_dataset(3, g, none, RngStream(1, 1)), ValidationError);
}

}  // TEST_SUITE
