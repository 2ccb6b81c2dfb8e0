#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ramanforge/core.hpp"
#include "ramanforge/noisemodel.hpp"
#include "ramanforge/rng.hpp"

namespace ramanforge {

/// One pseudo-Voigt line. Widths are the Lorentzian half-width gamma and the
/// Gaussian standard deviation sigma, both in cm^-1.
struct PeakParams {
  double center = 0.0;
  double lorentz_width = 1.0;
  double gauss_width = 1.0;
  double mix = 0.5;
  double amplitude = 1.0;

  /// Builds a peak whose Lorentzian and Gaussian parts share the given FWHM.
  static PeakParams from_fwhm(double center, double fwhm, double mix, double amplitude);
};

/// Sampling ranges for random pure Raman spectra.
struct RamanSampling {
  int max_peaks = 30;
  double fwhm_min = 10.0;
  double fwhm_max = 200.0;
};

/// Polynomial fluorescence: coefficients a_0..a_order on the abscissa
/// normalized to [0, 1] across the grid.
struct FluorSpec {
  int order = 3;
  std::vector<double> coeffs;
};

struct FluorSampling {
  int order_min = 3;
  int order_max = 6;
  int max_attempts = 100;
  double shift_epsilon = 1e-6;
};

struct ScaleTargets {
  double r2f = 0.3;
  double snr = 10.0;
};

struct TargetRanges {
  double r2f_min = 0.1;
  double r2f_max = 0.5;
  double snr_min = 0.01;
  double snr_max = 20.0;

  ScaleTargets sample(RngStream& stream) const;
  void validate() const;
};

struct ScaleFactors {
  double m = 0.0;  ///< Raman multiplier
  double n = 0.0;  ///< fluorescence multiplier
};

/// Noisy input plus its clean targets and provenance.
struct LabeledExample {
  Spectrum noisy;
  Spectrum clean_with_baseline;
  Spectrum pure_raman;
  Spectrum fluorescence;
  ScaleTargets targets;
  ScaleFactors scale;
  std::size_t peak_index = 0;  ///< position of the largest Raman value
  std::size_t dark_id = 0;
  std::uint64_t root_seed = 0;
  std::uint64_t stream_index = 0;
  int raman_retries = 0;
};

/// Unit-summit Lorentzian/Gaussian mix scaled by the amplitude.
Spectrum pseudo_voigt(const SpectrumGrid& grid, const PeakParams& p);
double pseudo_voigt_at(double wavenumber, const PeakParams& p);

/// Draws the peak list: count uniform in {0..max_peaks}, amplitude in (0, 1],
/// FWHM uniform, center uniform over the grid range, mix uniform in [0, 1].
std::vector<PeakParams> sample_peaks(const SpectrumGrid& grid, RngStream& stream,
                                     const RamanSampling& sampling = {});
Spectrum render_peaks(const SpectrumGrid& grid, std::span<const PeakParams> peaks);
Spectrum gen_pure_raman(const SpectrumGrid& grid, RngStream& stream,
                        const RamanSampling& sampling = {});

FluorSpec sample_fluor_spec(RngStream& stream, const FluorSampling& sampling = {});
Spectrum evaluate_fluorescence(const SpectrumGrid& grid, const FluorSpec& spec);
/// Returns `s` unchanged if its minimum is positive, otherwise lifts it so the
/// minimum equals `epsilon`.
Spectrum shift_positive(const Spectrum& s, double epsilon = 1e-6);
/// Draws up to max_attempts polynomials and returns the first strictly
/// positive one; otherwise the last draw lifted by shift_positive.
Spectrum gen_fluorescence(const SpectrumGrid& grid, RngStream& stream,
                          const FluorSampling& sampling = {});

/// Closed-form scale factors meeting the r2f and SNR targets.
///   x_p    largest Raman value
///   f_max  largest fluorescence value
///   f_p    fluorescence at the Raman maximum
///   y      dark noise variance there (2 S_dark)
ScaleFactors solve_scale(double r2f, double snr, double x_p, double f_max, double f_p, double y);

LabeledExample assemble_example(const Spectrum& raman, const Spectrum& fluor,
                                const ScaleTargets& targets, const DarkStats& dark,
                                RngStream& stream, NoiseMode mode = NoiseMode::kGaussian);

struct DatasetOptions {
  TargetRanges ranges;
  RamanSampling raman;
  FluorSampling fluor;
  NoiseMode mode = NoiseMode::kGaussian;
  int max_raman_retries = 100;
};

/// One example drawn entirely from `stream`: targets, dark set, Raman
/// (regenerated while flat), fluorescence, then assembly.
LabeledExample gen_example(const SpectrumGrid& grid, std::span<const DarkStats> dark_sets,
                           RngStream& stream, const DatasetOptions& options = {});

/// `count` examples; item i uses stream.substream(i) and may run in parallel.
std::vector<LabeledExample> gen_dataset(std::size_t count, const SpectrumGrid& grid,
                                        std::span<const DarkStats> dark_sets,
                                        const RngStream& stream,
                                        const DatasetOptions& options = {});

}  // namespace ramanforge
