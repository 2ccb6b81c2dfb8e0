#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ramanforge/core.hpp"
#include "ramanforge/errors.hpp"
#include "ramanforge/evalkit/peaks.hpp"
#include "ramanforge/noisemodel.hpp"
#include "ramanforge/rng.hpp"
#include "ramanforge/synth.hpp"

namespace ramanforge {

/// Maps a batch of examples to one output spectrum per example, on the same
/// grid. Ordinary denoisers read only `noisy`; oracles may read the targets.
using Denoiser = std::function<std::vector<Spectrum>(std::span<const LabeledExample>)>;

/// Failure of a denoiser on a specific batch item.
class DenoiserError : public Error {
 public:
  DenoiserError(std::size_t item, const std::string& what)
      : Error(what), item_(item) {}
  std::size_t item() const { return item_; }

 private:
  std::size_t item_;
};

Denoiser identity_denoiser();
/// Returns the clean baseline-included spectrum (perfect stochastic denoiser).
Denoiser oracle_clean_denoiser();
/// Returns the pure Raman target (perfect full pipeline).
Denoiser oracle_pure_denoiser();
/// Applies `fn` to each noisy spectrum in parallel; failures carry the item index.
Denoiser per_spectrum_denoiser(std::function<Spectrum(const Spectrum&)> fn);

/// Runs `denoiser` and checks the output count and grids.
std::vector<Spectrum> apply_denoiser(const Denoiser& denoiser,
                                     std::span<const LabeledExample> batch);

// ---------------------------------------------------------------------------
// SNR improvement

/// 10 log10(new / old)
double snri_db(double snr_old, double snr_new);
/// 10 log10(1 + (new - old) / old); algebraically equal to snri_db.
double snri_db_relative_form(double snr_old, double snr_new);

struct SnriRecord {
  double r2f = 0.0;
  double snr_old = 0.0;
  /// Geometric mean of the per-signal SNRs after denoising, so that
  /// snri_db == 10 log10(snr_new / snr_old).
  double snr_new = 0.0;
  double snri_db = 0.0;
  /// True when some signal hit the SNR cap (zero spread after denoising).
  bool capped = false;
};

struct SnriConfig {
  std::size_t n_pairs = 500;
  std::size_t signals_per_pair = 5;
  std::size_t realizations = 10;
  TargetRanges ranges;
  NoiseMode mode = NoiseMode::kGaussian;
  double snr_cap = 1e6;
};

/// For every random (r2f, SNR) pair: build `signals_per_pair` clean composites
/// from the pools, corrupt each `realizations` times, denoise the whole batch
/// at once, take the spread of the outputs at the Raman maximum, and average
/// the per-signal SNR improvements.
std::vector<SnriRecord> run_snri_protocol(const Denoiser& denoiser, const SnriConfig& cfg,
                                          std::span<const Spectrum> raman_pool,
                                          std::span<const Spectrum> fluor_pool,
                                          std::span<const DarkStats> dark_sets,
                                          const RngStream& stream);

// ---------------------------------------------------------------------------
// Peak recovery

struct PeakProtocolConfig {
  /// Prominence thresholds relative to the maximum of the true Raman spectrum.
  std::vector<double> prominences{0.02, 0.05, 0.1, 0.2, 0.4};
  double tol_wn = kPeakMatchTolerance;
};

/// Means over spectra at one prominence level. Ratios average over spectra
/// with at least one true peak; bias and shift over spectra with a match.
struct PeakLevelSummary {
  double prominence = 0.0;
  double missing_ratio = 0.0;
  double artifact_ratio = 0.0;
  double value_bias = 0.0;
  double shift_mean = 0.0;
  std::size_t n_spectra = 0;
  std::size_t n_ratio_defined = 0;
  std::size_t n_match_defined = 0;
  std::size_t n_true = 0;
  std::size_t n_pred = 0;
  std::size_t n_match = 0;
};

struct PeakProtocolResult {
  std::vector<PeakLevelSummary> levels;
  /// per_spectrum[level][item]
  std::vector<std::vector<PeakMatchReport>> per_spectrum;
};

/// Peaks in the denoised output vs peaks in each example's pure Raman target.
PeakMatchReport compare_peaks(const Spectrum& truth, const Spectrum& denoised,
                              double relative_prominence, double tol_wn = kPeakMatchTolerance);

PeakProtocolResult run_peak_protocol(const Denoiser& denoiser,
                                     std::span<const LabeledExample> examples,
                                     const PeakProtocolConfig& cfg = {});

// ---------------------------------------------------------------------------
// Component concentrations

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// False when the abscissa has no spread.
  bool defined = false;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct ConcentrationReport {
  /// [spectrum][component]
  std::vector<std::vector<double>> weights_pure;
  std::vector<std::vector<double>> weights_denoised;
  /// One fit per component: denoised-derived vs pure-derived weights.
  std::vector<LinearFit> fits;
  /// Mean squared weight difference over all spectra and components.
  double mse = 0.0;
};

/// NNLS against `basis` for each pure/denoised pair, then per-component fits.
ConcentrationReport concentration_analysis(std::span<const Spectrum> pure,
                                           std::span<const Spectrum> denoised,
                                           std::span<const Spectrum> basis);

/// Upper bound of the low-SNR group used when reporting skin results.
inline constexpr double kLowSnrLimit = 7.0;

struct SkinEvalReport {
  ConcentrationReport all;
  ConcentrationReport low_snr;   ///< SNR <= 7
  ConcentrationReport high_snr;  ///< 7 < SNR
  std::size_t n_low = 0;
  std::size_t n_high = 0;
};

/// Pure and denoised spectra are divided by each example's Raman multiplier
/// m first, so the pure-derived weights are the mixture weights themselves.
SkinEvalReport run_skin_protocol(const Denoiser& denoiser,
                                 std::span<const LabeledExample> examples,
                                 std::span<const Spectrum> basis);

}  // namespace ramanforge
