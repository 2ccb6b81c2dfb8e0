#include "ramanforge/evalkit/protocols.hpp"

#include <cmath>
#include <string>

#include "ramanforge/evalkit/nnls.hpp"
#include "ramanforge/parallel.hpp"

namespace ramanforge {

Denoiser identity_denoiser() {
  return [](std::span<const LabeledExample> batch) {
    std::vector<Spectrum> out;
    out.reserve(batch.size());
    for (const auto& ex : batch) out.push_back(ex.noisy);
    return out;
  };
}

Denoiser oracle_clean_denoiser() {
  return [](std::span<const LabeledExample> batch) {
    std::vector<Spectrum> out;
    out.reserve(batch.size());
    for (const auto& ex : batch) out.push_back(ex.clean_with_baseline);
    return out;
  };
}

Denoiser oracle_pure_denoiser() {
  return [](std::span<const LabeledExample> batch) {
    std::vector<Spectrum> out;
    out.reserve(batch.size());
    for (const auto& ex : batch) out.push_back(ex.pure_raman);
    return out;
  };
}

Denoiser per_spectrum_denoiser(std::function<Spectrum(const Spectrum&)> fn) {
  return [fn = std::move(fn)](std::span<const LabeledExample> batch) {
    std::vector<Spectrum> out(batch.size());
    parallel_for(batch.size(), [&](std::size_t i) {
      try {
        out[i] = fn(batch[i].noisy);
      } catch (const std::exception& e) {
        throw DenoiserError(i, "denoiser failed on item " + std::to_string(i) + ": " + e.what());
      }
    });
    return out;
  };
}

std::vector<Spectrum> apply_denoiser(const Denoiser& denoiser,
                                     std::span<const LabeledExample> batch) {
  std::vector<Spectrum> out = denoiser(batch);
  if (out.size() != batch.size()) {
    throw DenoiserError(out.size(), "denoiser returned " + std::to_string(out.size()) +
                                        " spectra for a batch of " +
                                        std::to_string(batch.size()));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i].grid() == batch[i].noisy.grid()) || out[i].size() != batch[i].noisy.size()) {
      throw DenoiserError(i, "denoiser output " + std::to_string(i) + " is on a different grid");
    }
  }
  return out;
}

double snri_db(double snr_old, double snr_new) { return 10.0 * std::log10(snr_new / snr_old); }

double snri_db_relative_form(double snr_old, double snr_new) {
  return 10.0 * std::log10(1.0 + (snr_new - snr_old) / snr_old);
}

std::vector<SnriRecord> run_snri_protocol(const Denoiser& denoiser, const SnriConfig& cfg,
                                          std::span<const Spectrum> raman_pool,
                                          std::span<const Spectrum> fluor_pool,
                                          std::span<const DarkStats> dark_sets,
                                          const RngStream& stream) {
  if (raman_pool.empty() || fluor_pool.empty()) {
    throw ValidationError("SNRi protocol needs non-empty Raman and fluorescence pools");
  }
  if (cfg.n_pairs == 0 || cfg.signals_per_pair == 0 || cfg.realizations < 2) {
    throw ValidationError("SNRi protocol needs pairs, signals and at least 2 realizations");
  }
  if (dark_sets.empty()) throw ValidationError("no dark stats supplied");
  cfg.ranges.validate();

  const std::size_t per_pair = cfg.signals_per_pair * cfg.realizations;
  std::vector<LabeledExample> batch(cfg.n_pairs * per_pair);
  std::vector<ScaleTargets> pair_targets(cfg.n_pairs);

  parallel_for(cfg.n_pairs, [&](std::size_t i) {
    RngStream rng = stream.substream(i);
    pair_targets[i] = cfg.ranges.sample(rng);
    for (std::size_t j = 0; j < cfg.signals_per_pair; ++j) {
      const auto r_idx = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(raman_pool.size()) - 1));
      const auto f_idx = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(fluor_pool.size()) - 1));
      const std::size_t dark_id = select_dark(dark_sets, rng);
      const DarkStats& dark = dark_sets[dark_id];

      LabeledExample base;
      try {
        base = assemble_example(raman_pool[r_idx], fluor_pool[f_idx], pair_targets[i], dark,
                                rng, cfg.mode);
      } catch (const Error& e) {
        throw ValidationError("SNRi pair " + std::to_string(i) + ", signal " +
                              std::to_string(j) + ": " + e.what());
      }
      base.dark_id = dark_id;
      for (std::size_t k = 0; k < cfg.realizations; ++k) {
        LabeledExample ex = base;
        if (k > 0) ex.noisy = sample_noisy_spectrum(ex.clean_with_baseline, dark, rng, cfg.mode);
        batch[i * per_pair + j * cfg.realizations + k] = std::move(ex);
      }
    }
  });

  std::vector<Spectrum> outputs;
  try {
    outputs = apply_denoiser(denoiser, batch);
  } catch (const DenoiserError& e) {
    const std::size_t item = e.item();
    if (item >= batch.size()) throw;
    throw DenoiserError(item, "SNRi pair " + std::to_string(item / per_pair) + ", signal " +
                                  std::to_string((item % per_pair) / cfg.realizations) + ": " +
                                  e.what());
  }

  std::vector<SnriRecord> records(cfg.n_pairs);
  for (std::size_t i = 0; i < cfg.n_pairs; ++i) {
    SnriRecord rec;
    rec.r2f = pair_targets[i].r2f;
    rec.snr_old = pair_targets[i].snr;
    double sum_db = 0.0;
    for (std::size_t j = 0; j < cfg.signals_per_pair; ++j) {
      const std::size_t first = i * per_pair + j * cfg.realizations;
      const LabeledExample& clean = batch[first];
      const std::size_t p = clean.peak_index;
      const double amplitude = clean.pure_raman[p];

      double mean = 0.0;
      for (std::size_t k = 0; k < cfg.realizations; ++k) mean += outputs[first + k][p];
      mean /= static_cast<double>(cfg.realizations);
      double var = 0.0;
      for (std::size_t k = 0; k < cfg.realizations; ++k) {
        const double d = outputs[first + k][p] - mean;
        var += d * d;
      }
      var /= static_cast<double>(cfg.realizations - 1);
      const double sigma = std::sqrt(var);

      double snr_new = sigma > 0.0 ? amplitude / sigma : cfg.snr_cap;
      if (!(snr_new < cfg.snr_cap)) {
        snr_new = cfg.snr_cap;
        rec.capped = true;
      }
      sum_db += snri_db(rec.snr_old, snr_new);
    }
    rec.snri_db = sum_db / static_cast<double>(cfg.signals_per_pair);
    rec.snr_new = rec.snr_old * std::pow(10.0, rec.snri_db / 10.0);
    records[i] = rec;
  }
  return records;
}

PeakMatchReport compare_peaks(const Spectrum& truth, const Spectrum& denoised,
                              double relative_prominence, double tol_wn) {
  const double reference = std::max(truth.max(), 0.0);
  const double threshold = relative_prominence * reference;
  const auto true_peaks = peak_points(truth, detect_peaks(truth.values(), threshold));
  const auto pred_peaks = peak_points(denoised, detect_peaks(denoised.values(), threshold));
  return match_peaks(true_peaks, pred_peaks, tol_wn);
}

PeakProtocolResult run_peak_protocol(const Denoiser& denoiser,
                                     std::span<const LabeledExample> examples,
                                     const PeakProtocolConfig& cfg) {
  const std::vector<Spectrum> outputs = apply_denoiser(denoiser, examples);

  PeakProtocolResult result;
  for (const double prominence : cfg.prominences) {
    std::vector<PeakMatchReport> reports(examples.size());
    parallel_for(examples.size(), [&](std::size_t i) {
      reports[i] = compare_peaks(examples[i].pure_raman, outputs[i], prominence, cfg.tol_wn);
    });

    PeakLevelSummary s;
    s.prominence = prominence;
    s.n_spectra = reports.size();
    for (const auto& r : reports) {
      s.n_true += r.n_true;
      s.n_pred += r.n_pred;
      s.n_match += r.n_match;
      if (r.ratios_defined) {
        ++s.n_ratio_defined;
        s.missing_ratio += r.missing_ratio;
        s.artifact_ratio += r.artifact_ratio;
      }
      if (r.matches_defined) {
        ++s.n_match_defined;
        s.value_bias += r.value_bias;
        s.shift_mean += r.shift_mean;
      }
    }
    if (s.n_ratio_defined > 0) {
      s.missing_ratio /= static_cast<double>(s.n_ratio_defined);
      s.artifact_ratio /= static_cast<double>(s.n_ratio_defined);
    }
    if (s.n_match_defined > 0) {
      s.value_bias /= static_cast<double>(s.n_match_defined);
      s.shift_mean /= static_cast<double>(s.n_match_defined);
    }
    result.levels.push_back(s);
    result.per_spectrum.push_back(std::move(reports));
  }
  return result;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  LinearFit fit;
  if (x.size() != y.size() || x.size() < 2) return fit;
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.defined = true;
  return fit;
}

ConcentrationReport concentration_analysis(std::span<const Spectrum> pure,
                                           std::span<const Spectrum> denoised,
                                           std::span<const Spectrum> basis) {
  if (pure.size() != denoised.size()) {
    throw ValidationError("concentration analysis needs as many denoised as pure spectra");
  }
  if (basis.empty()) throw ValidationError("concentration analysis needs a basis");
  for (std::size_t i = 0; i < pure.size(); ++i) {
    require_same_grid(pure[i].grid(), denoised[i].grid(), "pure vs denoised spectrum");
  }

  ConcentrationReport report;
  report.weights_pure.resize(pure.size());
  report.weights_denoised.resize(pure.size());
  parallel_for(pure.size(), [&](std::size_t i) {
    report.weights_pure[i] = nnls(basis, pure[i]);
    report.weights_denoised[i] = nnls(basis, denoised[i]);
  });

  const std::size_t k = basis.size();
  double sq = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> x(pure.size());
    std::vector<double> y(pure.size());
    for (std::size_t i = 0; i < pure.size(); ++i) {
      x[i] = report.weights_pure[i][c];
      y[i] = report.weights_denoised[i][c];
      sq += (y[i] - x[i]) * (y[i] - x[i]);
    }
    report.fits.push_back(fit_line(x, y));
  }
  report.mse = pure.empty() ? 0.0 : sq / static_cast<double>(pure.size() * k);
  return report;
}

SkinEvalReport run_skin_protocol(const Denoiser& denoiser,
                                 std::span<const LabeledExample> examples,
                                 std::span<const Spectrum> basis) {
  const std::vector<Spectrum> outputs = apply_denoiser(denoiser, examples);
  std::vector<Spectrum> pure_all;
  std::vector<Spectrum> pure_low;
  std::vector<Spectrum> pure_high;
  std::vector<Spectrum> den_low;
  std::vector<Spectrum> den_high;
  std::vector<Spectrum> den_all;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const LabeledExample& ex = examples[i];
    const double unit = ex.scale.m > 0.0 ? 1.0 / ex.scale.m : 1.0;
    Spectrum pure = ex.pure_raman * unit;
    Spectrum den = outputs[i] * unit;
    pure_all.push_back(pure);
    den_all.push_back(den);
    if (ex.targets.snr <= kLowSnrLimit) {
      pure_low.push_back(std::move(pure));
      den_low.push_back(std::move(den));
    } else {
      pure_high.push_back(std::move(pure));
      den_high.push_back(std::move(den));
    }
  }
  SkinEvalReport report;
  report.all = concentration_analysis(pure_all, den_all, basis);
  report.low_snr = concentration_analysis(pure_low, den_low, basis);
  report.high_snr = concentration_analysis(pure_high, den_high, basis);
  report.n_low = pure_low.size();
  report.n_high = pure_high.size();
  return report;
}

}  // namespace ramanforge
