#include "ramanforge/dataio/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "ramanforge/dataio/csv.hpp"
#include "ramanforge/dataio/denoisers.hpp"
#include "ramanforge/dataio/json_io.hpp"
#include "ramanforge/dataio/manifest.hpp"
#include "ramanforge/dataio/reports.hpp"
#include "ramanforge/errors.hpp"
#include "ramanforge/skin.hpp"

namespace ramanforge {

namespace {

namespace fs = std::filesystem;

struct GridArgs {
  double start = SpectrumGrid{}.start();
  double end = SpectrumGrid{}.end();
  std::size_t n = SpectrumGrid{}.size();

  void add_to(CLI::App* cmd) {
    cmd->add_option("--grid-start", start, "First wavenumber (cm^-1)")->capture_default_str();
    cmd->add_option("--grid-end", end, "Last wavenumber (cm^-1)")->capture_default_str();
    cmd->add_option("--grid-n", n, "Number of grid points")->capture_default_str();
  }
  SpectrumGrid grid() const { return SpectrumGrid(start, end, n); }
};

struct SimArgs {
  std::size_t count = 0;
  std::string split = "train";
  std::vector<std::string> darks;
  std::uint64_t seed = 0;
  std::string out;
  std::string noise_mode = "gaussian";
  std::vector<double> r2f_range{0.1, 0.5};
  std::vector<double> snr_range{0.01, 20.0};
  std::string basis;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--count", count, "Number of examples")->required();
    cmd->add_option("--split", split, "train, val or test")->capture_default_str();
    cmd->add_option("--dark", darks, "Dark stats JSON files")->required()->expected(1, -1);
    cmd->add_option("--seed", seed, "Root seed")->required();
    cmd->add_option("--out", out, "Output dataset directory")->required();
    cmd->add_option("--noise-mode", noise_mode, "gaussian or exact")->capture_default_str();
    cmd->add_option("--r2f-range", r2f_range, "Raman-to-fluorescence ratio range")
        ->expected(2)
        ->capture_default_str();
    cmd->add_option("--snr-range", snr_range, "SNR range")->expected(2)->capture_default_str();
  }
};

NoiseMode parse_noise_mode(const std::string& s) {
  if (s == "gaussian") return NoiseMode::kGaussian;
  if (s == "exact") return NoiseMode::kExact;
  throw ValidationError("--noise-mode must be gaussian or exact, got '" + s + "'");
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::vector<DarkStats> load_darks(const std::vector<std::string>& files) {
  if (files.empty()) throw ValidationError("no dark stats given (--dark)");
  std::vector<DarkStats> darks;
  for (const auto& f : files) {
    if (!fs::exists(f)) throw IoError("dark stats file not found: " + f);
    darks.push_back(load_dark_stats(f));
  }
  for (const auto& d : darks) require_same_grid(darks.front().grid, d.grid, "dark stats files");
  return darks;
}

DatasetOptions dataset_options(const SimArgs& a) {
  DatasetOptions opt;
  opt.mode = parse_noise_mode(a.noise_mode);
  opt.ranges = {a.r2f_range[0], a.r2f_range[1], a.snr_range[0], a.snr_range[1]};
  opt.ranges.validate();
  return opt;
}

Json creation_json(const DatasetOptions& opt, const SpectrumGrid& grid) {
  return Json{{"noise_mode", opt.mode == NoiseMode::kExact ? "exact" : "gaussian"},
              {"r2f_range", {opt.ranges.r2f_min, opt.ranges.r2f_max}},
              {"snr_range", {opt.ranges.snr_min, opt.ranges.snr_max}},
              {"peak_count_range", {0, opt.raman.max_peaks}},
              {"fwhm_range", {opt.raman.fwhm_min, opt.raman.fwhm_max}},
              {"peak_amplitude_range", {0.0, 1.0}},
              {"peak_mix_range", {0.0, 1.0}},
              {"fluor_order_range", {opt.fluor.order_min, opt.fluor.order_max}},
              {"fluor_coeff_range", {-1.0, 1.0}},
              {"max_raman_retries", opt.max_raman_retries},
              {"grid", grid_to_json(grid)}};
}

/// Writes darks and (for skin) the basis into `out`, then merges `entry` into
/// any manifest already there when it describes the same dataset.
void write_dataset(const fs::path& out, DatasetManifest m, const std::string& split,
                   const std::vector<DarkStats>& darks, SplitEntry entry) {
  const fs::path manifest_path = out / "manifest.json";
  for (std::size_t k = 0; k < darks.size(); ++k) {
    m.dark_stats.push_back({k, "dark_" + std::to_string(k) + ".json",
                            darks[k].integration_time, darks[k].n_frames});
  }
  if (fs::exists(manifest_path)) {
    const DatasetManifest old = load_manifest(manifest_path);
    const std::string where = manifest_path.string();
    if (old.kind != m.kind || old.root_seed != m.root_seed || !(old.grid == m.grid) ||
        old.creation != m.creation || old.dark_stats.size() != darks.size()) {
      throw ValidationError(where + ": existing dataset was made with different kind, seed, "
                                    "grid, dark stats or creation parameters");
    }
    for (std::size_t k = 0; k < darks.size(); ++k) {
      if (file_bytes(out / old.dark_stats[k].file) != dark_stats_to_json(darks[k]).dump(2) + "\n") {
        throw ValidationError(where + ": field 'dark_stats[" + std::to_string(k) +
                              "]' refers to different dark stats");
      }
    }
    for (auto& [name, s] : old.splits) {
      if (name != split) m.splits.emplace(name, std::move(s));
    }
  }
  for (std::size_t k = 0; k < darks.size(); ++k) {
    save_dark_stats(out / m.dark_stats[k].file, darks[k]);
  }
  m.splits[split] = std::move(entry);
  save_manifest(manifest_path, m);
}

int cmd_simulate(const SimArgs& a, bool skin) {
  const auto darks = load_darks(a.darks);
  const DatasetOptions opt = dataset_options(a);
  const DatasetKind kind = skin ? DatasetKind::kSkin : DatasetKind::kRaman;
  const std::uint64_t stream_index = split_stream_index(kind, a.split);
  if (a.count < 1) throw ValidationError("--count must be >= 1");
  const SpectrumGrid grid = darks.front().grid;
  const RngStream stream(a.seed, stream_index);

  const fs::path out(a.out);
  ensure_dir(out);
  DatasetManifest m;
  m.kind = kind;
  m.grid = grid;
  m.root_seed = a.seed;
  m.creation = creation_json(opt, grid);

  SplitEntry entry;
  if (skin) {
    SkinBasis basis = a.basis.empty() ? standin_basis(grid) : load_basis_dir(a.basis, grid);
    require_same_grid(grid, basis.grid(), "skin basis vs dark stats");
    m.creation["skin_basis_source"] = a.basis.empty() ? "standin" : "directory";
    const auto set = gen_skin_testset(basis, a.count, stream, darks, opt);
    std::vector<LabeledExample> examples;
    std::vector<SkinWeights> weights;
    for (const auto& s : set) {
      examples.push_back(s.example);
      weights.push_back(s.weights);
    }
    write_basis_dir(out / "basis", basis);
    m.skin_basis_dir = "basis";
    entry = write_split(out, a.split, examples, weights);
  } else {
    const auto examples = gen_dataset(a.count, grid, darks, stream, opt);
    entry = write_split(out, a.split, examples);
  }
  entry.stream_index = stream_index;
  write_dataset(out, std::move(m), a.split, darks, std::move(entry));
  std::cout << "wrote " << a.count << " examples to " << (out / "manifest.json").string() << '\n';
  return kExitOk;
}

std::vector<Spectrum> read_batch_spectra(const std::string& path) {
  if (!fs::exists(path)) throw IoError("batch file not found: " + path);
  return read_batch_csv(path).spectra;
}

struct DenoiseArgs {
  std::string method;
  std::string in;
  std::string out;
  std::vector<std::string> params;
  std::string exec;
};

int cmd_denoise(const DenoiseArgs& a) {
  StageOptions opts;
  for (const auto& p : a.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ValidationError("--param expects key=value, got '" + p + "'");
    }
    opts[p.substr(0, eq)] = p.substr(eq + 1);
  }
  const auto input = read_batch_spectra(a.in);
  std::vector<Spectrum> output;
  if (a.method == "external") {
    if (a.exec.empty()) throw ValidationError("--method external needs --exec <command>");
    if (!opts.empty()) throw ValidationError("--param is not used by --method external");
    std::istringstream words(a.exec);
    std::vector<std::string> argv{std::istream_iterator<std::string>(words), {}};
    output = run_external(argv, input);
  } else {
    std::string spec = a.method;
    std::string joined;
    for (const auto& [k, v] : opts) joined += (joined.empty() ? "" : ",") + k + "=" + v;
    if (!joined.empty()) spec += ":" + joined;
    if (a.method != "sg" && a.method != "wavelet" && a.method != "modpoly") {
      throw ValidationError("unknown method '" + a.method + "'");
    }
    const Denoiser d = make_denoiser(spec);
    std::vector<LabeledExample> batch(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) batch[i].noisy = input[i];
    output = apply_denoiser(d, batch);
  }
  write_batch_csv(a.out, output);
  std::cout << "wrote " << output.size() << " spectra to " << a.out << '\n';
  return kExitOk;
}

struct EvalArgs {
  std::string protocol;
  std::string manifest;
  std::string denoiser;
  std::string out;
  std::string split = "test";
  std::uint64_t seed = 0;
  std::size_t pairs = 500;
  std::size_t signals = 5;
  std::size_t realizations = 10;
  std::vector<double> prominences{0.02, 0.05, 0.1, 0.2, 0.4};
};

int cmd_eval(const EvalArgs& a) {
  const fs::path manifest_path(a.manifest);
  const DatasetManifest m = load_manifest(manifest_path);
  const fs::path dir = manifest_path.parent_path();
  const Denoiser denoiser = make_denoiser(a.denoiser);
  const auto examples = load_split_examples(m, dir, a.split);
  const ReportContext ctx{a.denoiser, a.manifest, a.split, a.seed};

  Json report;
  if (a.protocol == "snri") {
    SnriConfig cfg;
    cfg.n_pairs = a.pairs;
    cfg.signals_per_pair = a.signals;
    cfg.realizations = a.realizations;
    const Json& c = m.creation;
    if (c.contains("r2f_range") && c.contains("snr_range")) {
      cfg.ranges = {c["r2f_range"][0], c["r2f_range"][1], c["snr_range"][0], c["snr_range"][1]};
    }
    if (c.value("noise_mode", "gaussian") == "exact") cfg.mode = NoiseMode::kExact;
    std::vector<Spectrum> raman;
    std::vector<Spectrum> fluor;
    for (const auto& ex : examples) {
      raman.push_back(ex.pure_raman * (1.0 / ex.scale.m));
      fluor.push_back(ex.fluorescence * (1.0 / ex.scale.n));
    }
    const auto darks = load_manifest_darks(m, dir);
    const auto records =
        run_snri_protocol(denoiser, cfg, raman, fluor, darks, RngStream(a.seed, 32));
    report = snri_report(ctx, cfg, records);
  } else if (a.protocol == "peaks") {
    PeakProtocolConfig cfg;
    cfg.prominences = a.prominences;
    for (double p : cfg.prominences) {
      if (!(p >= 0.0)) throw ValidationError("--prominences must be >= 0");
    }
    report = peak_report(ctx, run_peak_protocol(denoiser, examples, cfg));
  } else {
    if (m.kind != DatasetKind::kSkin) {
      throw ValidationError(a.manifest + ": field 'kind' must be \"skin\" for eval skin");
    }
    const SkinBasis basis = load_manifest_basis(m, dir);
    report = skin_report(ctx, run_skin_protocol(denoiser, examples, basis.components));
  }

  write_json_file(a.out, report);
  fs::path points(a.out);
  points.replace_extension(".csv");
  write_text_file(points, plot_points_csv(report));
  std::cout << "wrote " << a.out << " and " << points.string() << '\n';
  return kExitOk;
}

int cmd_plot(const std::string& report_path, const std::string& out) {
  if (!fs::exists(report_path)) throw IoError("report not found: " + report_path);
  const Json report = read_json_file(report_path);
  const std::string ext = fs::path(out).extension().string();
  if (ext == ".svg") {
    write_text_file(out, plot_svg(report));
  } else if (ext == ".csv") {
    write_text_file(out, plot_points_csv(report));
  } else {
    throw ValidationError("--out must end in .svg or .csv");
  }
  std::cout << "wrote " << out << '\n';
  return kExitOk;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Synthetic Raman spectra, classical denoisers and evaluation protocols",
               "ramanforge"};
  app.require_subcommand(1);

  GridArgs grid_args;

  std::string frames_path, dark_out;
  double itime = 0.0;
  auto* dark = app.add_subcommand("dark-stats", "Per-wavenumber dark frame mean and variance");
  dark->add_option("--frames", frames_path, "Batch CSV of dark frames")->required();
  dark->add_option("--itime", itime, "Integration time (s)")->required();
  dark->add_option("--out", dark_out, "Output JSON")->required();

  std::size_t n_frames = 1000;
  double frame_mean = 100.0, frame_var = 25.0;
  std::uint64_t frame_seed = 0;
  std::string frames_out;
  auto* synth_dark = app.add_subcommand("synth-dark-frames", "Gaussian stand-in dark frames");
  synth_dark->add_option("--count", n_frames, "Number of frames")->capture_default_str();
  synth_dark->add_option("--mean", frame_mean, "Mean level")->capture_default_str();
  synth_dark->add_option("--variance", frame_var, "Per-point variance")->capture_default_str();
  synth_dark->add_option("--seed", frame_seed, "Seed")->required();
  synth_dark->add_option("--out", frames_out, "Output batch CSV")->required();
  grid_args.add_to(synth_dark);

  std::string measured, radiance, gain_out;
  auto* gain = app.add_subcommand("gain", "System response from a reference measurement");
  gain->add_option("--measured", measured, "Measured reference spectrum CSV")->required();
  gain->add_option("--radiance", radiance, "True reference radiance CSV")->required();
  gain->add_option("--out", gain_out, "Output gain CSV")->required();

  std::string cal_in, cal_gain, cal_dark, cal_out;
  auto* calib = app.add_subcommand("calibrate", "Divide a raw batch by the gain");
  calib->add_option("--in", cal_in, "Raw batch CSV")->required();
  calib->add_option("--gain", cal_gain, "Gain CSV")->required();
  calib->add_option("--dark", cal_dark, "Dark stats JSON to subtract");
  calib->add_option("--out", cal_out, "Output batch CSV")->required();

  std::string basis_out, basis_from;
  auto* basis = app.add_subcommand("skin-basis", "Write an AUC-normalized skin basis");
  basis->add_option("--out", basis_out, "Output directory")->required();
  basis->add_option("--from", basis_from, "Directory with <component>.csv to normalize");
  grid_args.add_to(basis);

  SimArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Generate a labeled Raman dataset split");
  sim_args.add_to(sim);

  SimArgs skin_args;
  skin_args.count = 1000;
  skin_args.split = "test";
  auto* sim_skin = app.add_subcommand("simulate-skin", "Generate skin mixture test spectra");
  skin_args.add_to(sim_skin);
  sim_skin->get_option("--count")->required(false)->capture_default_str();
  sim_skin->add_option("--basis", skin_args.basis, "Basis directory (default: stand-in)");

  DenoiseArgs den_args;
  auto* den = app.add_subcommand("denoise", "Apply a denoiser to a batch");
  den->add_option("--method", den_args.method, "sg, wavelet, modpoly or external")
      ->required()
      ->check(CLI::IsMember({"sg", "wavelet", "modpoly", "external"}));
  den->add_option("--in", den_args.in, "Input batch CSV")->required();
  den->add_option("--out", den_args.out, "Output batch CSV")->required();
  den->add_option("--param", den_args.params,
                  "Method option key=value (sg: m,d; wavelet: family,levels,rule,scale; "
                  "modpoly: low,high,iters,tol)");
  den->add_option("--exec", den_args.exec, "External command; --in/--out are appended");

  EvalArgs eval_args;
  auto* ev = app.add_subcommand("eval", "Run an evaluation protocol");
  ev->add_option("protocol", eval_args.protocol, "snri, peaks or skin")
      ->required()
      ->check(CLI::IsMember({"snri", "peaks", "skin"}));
  ev->add_option("--manifest", eval_args.manifest, "Dataset manifest")->required();
  ev->add_option("--denoiser", eval_args.denoiser, "Denoiser spec")->required();
  ev->add_option("--out", eval_args.out, "Report JSON")->required();
  ev->add_option("--split", eval_args.split, "Split to evaluate")->capture_default_str();
  ev->add_option("--seed", eval_args.seed, "Seed for the SNRi sweep")->capture_default_str();
  ev->add_option("--pairs", eval_args.pairs, "SNRi (r2f, SNR) pairs")->capture_default_str();
  ev->add_option("--signals", eval_args.signals, "SNRi signals per pair")->capture_default_str();
  ev->add_option("--realizations", eval_args.realizations, "SNRi noise realizations")
      ->capture_default_str();
  ev->add_option("--prominences", eval_args.prominences, "Relative prominence levels")
      ->capture_default_str();

  std::string report_path, plot_out;
  auto* plot = app.add_subcommand("plot", "Plot data from a report as SVG or CSV");
  plot->add_option("--report", report_path, "Report JSON")->required();
  plot->add_option("--out", plot_out, "Output .svg or .csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*dark) {
    if (!fs::exists(frames_path)) throw IoError("frames file not found: " + frames_path);
    const Batch frames = read_batch_csv(frames_path);
    const DarkStats stats = estimate_dark_stats(frames.spectra, itime);
    save_dark_stats(dark_out, stats);
    std::cout << "wrote " << dark_out << " (" << stats.n_frames << " frames)\n";
  } else if (*synth_dark) {
    const SpectrumGrid grid = grid_args.grid();
    if (n_frames < 1) throw ValidationError("--count must be >= 1");
    std::vector<Spectrum> frames(n_frames, Spectrum(grid));
    RngStream rng(frame_seed, 48);
    for (auto& f : frames) {
      for (double& v : f.mutable_values()) v = sample_gaussian(rng, frame_mean, frame_var);
    }
    write_batch_csv(frames_out, frames);
    std::cout << "wrote " << n_frames << " frames to " << frames_out << '\n';
  } else if (*gain) {
    const Spectrum m = to_spectrum(read_spectrum_csv(measured));
    const Spectrum r = to_spectrum(read_spectrum_csv(radiance));
    const GainCurve g = estimate_gain(m, r);
    write_spectrum_csv(gain_out, Spectrum(g.grid, g.gain));
    std::cout << "wrote " << gain_out << '\n';
  } else if (*calib) {
    const Spectrum g = to_spectrum(read_spectrum_csv(cal_gain));
    const GainCurve curve{g.grid(), std::vector<double>(g.values().begin(), g.values().end())};
    std::vector<Spectrum> out;
    std::optional<DarkStats> stats;
    if (!cal_dark.empty()) stats = load_dark_stats(cal_dark);
    for (const auto& s : read_batch_spectra(cal_in)) {
      Spectrum c = calibrate(s, curve);
      out.push_back(stats ? subtract_dark(c, *stats) : c);
    }
    write_batch_csv(cal_out, out);
    std::cout << "wrote " << out.size() << " spectra to " << cal_out << '\n';
  } else if (*basis) {
    const SpectrumGrid grid = grid_args.grid();
    const SkinBasis b = basis_from.empty() ? standin_basis(grid) : load_basis_dir(basis_from, grid);
    write_basis_dir(basis_out, b);
    std::cout << "wrote " << kSkinComponentCount << " components to " << basis_out << '\n';
  } else if (*sim) {
    return cmd_simulate(sim_args, false);
  } else if (*sim_skin) {
    return cmd_simulate(skin_args, true);
  } else if (*den) {
    return cmd_denoise(den_args);
  } else if (*ev) {
    return cmd_eval(eval_args);
  } else if (*plot) {
    return cmd_plot(report_path, plot_out);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  try {
    return run(argc, argv);
  } catch (const ExternalToolError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitExternal;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace ramanforge
