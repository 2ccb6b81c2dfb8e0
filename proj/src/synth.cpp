#include "ramanforge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ramanforge/errors.hpp"
#include "ramanforge/parallel.hpp"

namespace ramanforge {

namespace {

const double kFwhmToSigma = 1.0 / (2.0 * std::sqrt(2.0 * std::log(2.0)));

void validate_peak(const SpectrumGrid& grid, const PeakParams& p) {
  if (!(p.lorentz_width > 0.0) || !(p.gauss_width > 0.0)) {
    throw ValidationError("peak widths must be positive");
  }
  if (!(p.mix >= 0.0 && p.mix <= 1.0)) throw ValidationError("peak mix must lie in [0, 1]");
  if (!(p.amplitude > 0.0 && p.amplitude <= 1.0)) {
    throw ValidationError("peak amplitude must lie in (0, 1]");
  }
  if (!(p.center >= grid.start() && p.center <= grid.end())) {
    throw ValidationError("peak center outside the grid range");
  }
}

}  // namespace

PeakParams PeakParams::from_fwhm(double center, double fwhm, double mix, double amplitude) {
  return PeakParams{center, 0.5 * fwhm, fwhm * kFwhmToSigma, mix, amplitude};
}

ScaleTargets TargetRanges::sample(RngStream& stream) const {
  ScaleTargets t;
  t.r2f = stream.uniform(r2f_min, r2f_max);
  t.snr = stream.uniform(snr_min, snr_max);
  return t;
}

void TargetRanges::validate() const {
  if (!(r2f_min > 0.0 && r2f_min <= r2f_max)) throw ValidationError("invalid r2f range");
  if (!(snr_min > 0.0 && snr_min <= snr_max)) throw ValidationError("invalid snr range");
}

double pseudo_voigt_at(double wavenumber, const PeakParams& p) {
  const double d = wavenumber - p.center;
  const double g2 = p.lorentz_width * p.lorentz_width;
  const double lorentz = g2 / (d * d + g2);
  const double gauss = std::exp(-(d * d) / (2.0 * p.gauss_width * p.gauss_width));
  return p.amplitude * (p.mix * lorentz + (1.0 - p.mix) * gauss);
}

Spectrum pseudo_voigt(const SpectrumGrid& grid, const PeakParams& p) {
  validate_peak(grid, p);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = pseudo_voigt_at(grid.at(i), p);
  return Spectrum(grid, std::move(v));
}

std::vector<PeakParams> sample_peaks(const SpectrumGrid& grid, RngStream& stream,
                                     const RamanSampling& sampling) {
  const auto count = stream.uniform_int(0, sampling.max_peaks);
  std::vector<PeakParams> peaks;
  peaks.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) {
    const double amplitude = stream.uniform_open_closed();
    const double fwhm = stream.uniform(sampling.fwhm_min, sampling.fwhm_max);
    const double center = stream.uniform(grid.start(), grid.end());
    const double mix = stream.uniform(0.0, 1.0);
    peaks.push_back(PeakParams::from_fwhm(center, fwhm, mix, amplitude));
  }
  return peaks;
}

Spectrum render_peaks(const SpectrumGrid& grid, std::span<const PeakParams> peaks) {
  Spectrum out(grid);
  for (const auto& p : peaks) out += pseudo_voigt(grid, p);
  return out;
}

Spectrum gen_pure_raman(const SpectrumGrid& grid, RngStream& stream,
                        const RamanSampling& sampling) {
  return render_peaks(grid, sample_peaks(grid, stream, sampling));
}

FluorSpec sample_fluor_spec(RngStream& stream, const FluorSampling& sampling) {
  FluorSpec spec;
  spec.order = static_cast<int>(stream.uniform_int(sampling.order_min, sampling.order_max));
  spec.coeffs.resize(static_cast<std::size_t>(spec.order) + 1);
  for (double& a : spec.coeffs) a = stream.uniform(-1.0, 1.0);
  return spec;
}

Spectrum evaluate_fluorescence(const SpectrumGrid& grid, const FluorSpec& spec) {
  if (spec.coeffs.size() != static_cast<std::size_t>(spec.order) + 1) {
    throw ValidationError("fluorescence coefficient count does not match order");
  }
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = grid.normalized(i);
    double acc = 0.0;
    for (auto it = spec.coeffs.rbegin(); it != spec.coeffs.rend(); ++it) acc = acc * x + *it;
    v[i] = acc;
  }
  return Spectrum(grid, std::move(v));
}

Spectrum shift_positive(const Spectrum& s, double epsilon) {
  const double lo = s.min();
  if (lo > 0.0) return s;
  Spectrum out = s;
  for (double& v : out.mutable_values()) v = v - lo + epsilon;
  return out;
}

Spectrum gen_fluorescence(const SpectrumGrid& grid, RngStream& stream,
                          const FluorSampling& sampling) {
  Spectrum last;
  for (int attempt = 0; attempt < std::max(1, sampling.max_attempts); ++attempt) {
    last = evaluate_fluorescence(grid, sample_fluor_spec(stream, sampling));
    if (last.min() > 0.0) return last;
  }
  return shift_positive(last, sampling.shift_epsilon);
}

ScaleFactors solve_scale(double r2f, double snr, double x_p, double f_max, double f_p, double y) {
  if (!(x_p > 0.0)) throw ValidationError("solve_scale: Raman peak amplitude x_p must be > 0");
  if (!(f_max > 0.0)) throw ValidationError("solve_scale: fluorescence maximum must be > 0");
  if (!(snr > 0.0) || !(r2f > 0.0)) throw ValidationError("solve_scale: targets must be > 0");
  if (!(f_p >= 0.0) || !(y >= 0.0)) throw ValidationError("solve_scale: f_p and y must be >= 0");

  const double a = r2f * r2f * f_max * f_max;
  const double b = -snr * snr * (r2f * f_max + f_p);
  const double c = -snr * snr * y;
  // b < 0 and c <= 0, so -b + sqrt(...) adds two non-negative terms.
  const double n = (-b + std::sqrt(b * b - 4.0 * a * c)) / (2.0 * a);
  const double m = r2f * n * f_max / x_p;
  return {m, n};
}

LabeledExample assemble_example(const Spectrum& raman, const Spectrum& fluor,
                                const ScaleTargets& targets, const DarkStats& dark,
                                RngStream& stream, NoiseMode mode) {
  require_same_grid(raman.grid(), fluor.grid(), "raman vs fluorescence");
  require_same_grid(raman.grid(), dark.grid, "raman vs dark stats");
  if (!(fluor.min() > 0.0)) throw ValidationError("fluorescence must be strictly positive");

  const std::size_t p = raman.argmax();
  const double x_p = raman[p];
  if (!(x_p > 0.0)) throw FlatRamanError("Raman spectrum has no positive value; regenerate");

  const ScaleFactors scale =
      solve_scale(targets.r2f, targets.snr, x_p, fluor.max(), fluor[p], 2.0 * dark.variance[p]);

  LabeledExample ex;
  ex.pure_raman = raman * scale.m;
  ex.fluorescence = fluor * scale.n;
  ex.clean_with_baseline = ex.pure_raman + ex.fluorescence;
  ex.noisy = sample_noisy_spectrum(ex.clean_with_baseline, dark, stream, mode);
  ex.targets = targets;
  ex.scale = scale;
  ex.peak_index = p;
  ex.root_seed = stream.root_seed();
  ex.stream_index = stream.stream_index();
  return ex;
}

LabeledExample gen_example(const SpectrumGrid& grid, std::span<const DarkStats> dark_sets,
                           RngStream& stream, const DatasetOptions& options) {
  const ScaleTargets targets = options.ranges.sample(stream);
  const std::size_t dark_id = select_dark(dark_sets, stream);

  int retries = 0;
  Spectrum raman = gen_pure_raman(grid, stream, options.raman);
  while (!(raman.max() > 0.0)) {
    if (++retries > options.max_raman_retries) {
      throw FlatRamanError("could not draw a non-flat Raman spectrum after " +
                           std::to_string(options.max_raman_retries) + " retries");
    }
    raman = gen_pure_raman(grid, stream, options.raman);
  }
  const Spectrum fluor = gen_fluorescence(grid, stream, options.fluor);

  LabeledExample ex = assemble_example(raman, fluor, targets, dark_sets[dark_id], stream,
                                       options.mode);
  ex.dark_id = dark_id;
  ex.raman_retries = retries;
  return ex;
}

std::vector<LabeledExample> gen_dataset(std::size_t count, const SpectrumGrid& grid,
                                        std::span<const DarkStats> dark_sets,
                                        const RngStream& stream, const DatasetOptions& options) {
  if (count < 1) throw ValidationError("dataset count must be >= 1");
  if (dark_sets.empty()) throw ValidationError("no dark stats supplied");
  options.ranges.validate();
  for (const auto& d : dark_sets) {
    d.validate();
    require_same_grid(grid, d.grid, "dataset grid vs dark stats");
  }

  std::vector<LabeledExample> out(count);
  parallel_for(count, [&](std::size_t i) {
    RngStream item = stream.substream(i);
    out[i] = gen_example(grid, dark_sets, item, options);
  });
  return out;
}

}  // namespace ramanforge
