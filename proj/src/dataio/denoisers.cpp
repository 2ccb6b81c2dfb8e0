#include "ramanforge/dataio/denoisers.hpp"

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "ramanforge/dataio/csv.hpp"
#include "ramanforge/errors.hpp"

extern char** environ;

namespace ramanforge {

namespace {

StageOptions parse_options(const std::string& text, const std::string& stage) {
  StageOptions opts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ValidationError("denoiser '" + stage + "': expected key=value, got '" + item + "'");
    }
    opts[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return opts;
}

void reject_unknown(const StageOptions& opts, std::initializer_list<const char*> known,
                    const char* stage) {
  for (const auto& [key, value] : opts) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ValidationError(std::string(stage) + ": unknown option '" + key + "'");
  }
}

int to_int(const StageOptions& opts, const char* key, int fallback) {
  const auto it = opts.find(key);
  if (it == opts.end()) return fallback;
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(it->second, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != it->second.size()) {
    throw ValidationError(std::string("option '") + key + "' must be an integer");
  }
  return v;
}

double to_double(const StageOptions& opts, const char* key, double fallback) {
  const auto it = opts.find(key);
  if (it == opts.end()) return fallback;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != it->second.size()) {
    throw ValidationError(std::string("option '") + key + "' must be a number");
  }
  return v;
}

std::vector<std::string> split_words(const std::string& cmd) {
  std::vector<std::string> words;
  std::istringstream in(cmd);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "ramanforge-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) {
      throw IoError(std::string("cannot create temporary directory: ") + std::strerror(errno));
    }
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

int spawn_and_wait(const std::vector<std::string>& argv) {
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  // The tool's stdout goes to our stderr so command output stays parseable.
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, STDERR_FILENO, STDOUT_FILENO);
  pid_t pid = 0;
  const int rc = posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) {
    throw ExternalToolError("cannot start external denoiser '" + argv[0] +
                            "': " + std::strerror(rc));
  }
  int status = 0;
  while (waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) throw ExternalToolError("waitpid failed for '" + argv[0] + "'");
  }
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  throw ExternalToolError("external denoiser '" + argv[0] + "' was terminated by signal " +
                          std::to_string(WTERMSIG(status)));
}

Denoiser chain(std::vector<Denoiser> stages) {
  return [stages = std::move(stages)](std::span<const LabeledExample> batch) {
    std::vector<Spectrum> current = apply_denoiser(stages.front(), batch);
    for (std::size_t s = 1; s < stages.size(); ++s) {
      std::vector<LabeledExample> staged(batch.begin(), batch.end());
      for (std::size_t i = 0; i < staged.size(); ++i) staged[i].noisy = std::move(current[i]);
      current = apply_denoiser(stages[s], staged);
    }
    return current;
  };
}

Denoiser make_stage(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (name == "external") {
    auto argv = split_words(rest);
    if (argv.empty()) throw ValidationError("external denoiser needs a command");
    return external_denoiser(std::move(argv));
  }
  const StageOptions opts = parse_options(rest, name);
  if (name == "identity" || name == "oracle" || name == "oracle-clean" ||
      name == "oracle-pure") {
    reject_unknown(opts, {}, name.c_str());
    if (name == "identity") return identity_denoiser();
    if (name == "oracle-clean") return oracle_clean_denoiser();
    return oracle_pure_denoiser();
  }
  if (name == "sg") {
    const SGConfig cfg = sg_config_from(opts);
    return per_spectrum_denoiser([cfg](const Spectrum& s) { return sg_filter(s, cfg); });
  }
  if (name == "wavelet") {
    const WaveletConfig cfg = wavelet_config_from(opts);
    return per_spectrum_denoiser([cfg](const Spectrum& s) { return wavelet_denoise(s, cfg); });
  }
  if (name == "modpoly") {
    const ModPolyConfig cfg = modpoly_config_from(opts);
    return per_spectrum_denoiser(
        [cfg](const Spectrum& s) { return modpoly_baseline(s, cfg).corrected; });
  }
  throw ValidationError("unknown denoiser '" + name + "'");
}

}  // namespace

SGConfig sg_config_from(const StageOptions& opts) {
  reject_unknown(opts, {"m", "d"}, "sg");
  SGConfig cfg;
  cfg.half_window = to_int(opts, "m", cfg.half_window);
  cfg.degree = to_int(opts, "d", cfg.degree);
  return cfg;
}

WaveletConfig wavelet_config_from(const StageOptions& opts) {
  reject_unknown(opts, {"family", "levels", "rule", "scale"}, "wavelet");
  WaveletConfig cfg;
  if (auto it = opts.find("family"); it != opts.end()) {
    wavelet_filter(it->second);
    cfg.family = it->second;
  }
  cfg.levels = to_int(opts, "levels", cfg.levels);
  if (auto it = opts.find("rule"); it != opts.end()) {
    if (it->second == "soft") {
      cfg.rule = ThresholdRule::kSoft;
    } else if (it->second == "hard") {
      cfg.rule = ThresholdRule::kHard;
    } else {
      throw ValidationError("wavelet rule must be soft or hard");
    }
  }
  cfg.threshold_scale = to_double(opts, "scale", cfg.threshold_scale);
  if (!(cfg.threshold_scale >= 0.0)) throw ValidationError("wavelet scale must be >= 0");
  return cfg;
}

ModPolyConfig modpoly_config_from(const StageOptions& opts) {
  reject_unknown(opts, {"low", "high", "iters", "tol"}, "modpoly");
  ModPolyConfig cfg;
  cfg.order_low = to_int(opts, "low", cfg.order_low);
  cfg.order_high = to_int(opts, "high", cfg.order_high);
  cfg.max_iters = to_int(opts, "iters", cfg.max_iters);
  cfg.tol = to_double(opts, "tol", cfg.tol);
  cfg.validate();
  return cfg;
}

std::vector<Spectrum> run_external(const std::vector<std::string>& argv,
                                   std::span<const Spectrum> input) {
  if (argv.empty()) throw ValidationError("external denoiser needs a command");
  if (input.empty()) return {};
  TempDir dir;
  const auto in_path = dir.path() / "in.csv";
  const auto out_path = dir.path() / "out.csv";
  write_batch_csv(in_path, input);

  std::vector<std::string> full = argv;
  full.insert(full.end(), {"--in", in_path.string(), "--out", out_path.string()});
  const int code = spawn_and_wait(full);
  if (code != 0) {
    throw ExternalToolError("external denoiser '" + argv[0] + "' exited with code " +
                            std::to_string(code));
  }
  if (!std::filesystem::exists(out_path)) {
    throw ExternalToolError("external denoiser did not write " + out_path.string());
  }
  Batch out;
  try {
    out = read_batch_csv(out_path);
  } catch (const Error& e) {
    throw ExternalToolError(std::string("shape mismatch: ") + e.what());
  }
  const SpectrumGrid& grid = input.front().grid();
  if (out.grid.size() != grid.size()) {
    throw ExternalToolError("shape mismatch in " + out_path.string() + ": " +
                            std::to_string(out.grid.size()) + " rows, expected " +
                            std::to_string(grid.size()));
  }
  if (out.spectra.size() != input.size()) {
    throw ExternalToolError("shape mismatch in " + out_path.string() + ": " +
                            std::to_string(out.spectra.size()) + " spectra, expected " +
                            std::to_string(input.size()));
  }
  if (!(out.grid == grid)) {
    throw ExternalToolError("shape mismatch in " + out_path.string() +
                            ": wavenumber column differs from the input grid");
  }
  return std::move(out.spectra);
}

Denoiser external_denoiser(std::vector<std::string> argv) {
  return [argv = std::move(argv)](std::span<const LabeledExample> batch) {
    std::vector<Spectrum> input;
    input.reserve(batch.size());
    for (const auto& ex : batch) input.push_back(ex.noisy);
    return run_external(argv, input);
  };
}

Denoiser make_denoiser(const std::string& spec) {
  if (spec.empty()) throw ValidationError("empty denoiser spec");
  std::vector<Denoiser> stages;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    if (spec.compare(pos, 9, "external:") == 0) {
      stages.push_back(make_stage(spec.substr(pos)));
      break;
    }
    const auto plus = spec.find('+', pos);
    const std::string part = spec.substr(pos, plus == std::string::npos ? plus : plus - pos);
    if (part.empty()) throw ValidationError("empty stage in denoiser spec '" + spec + "'");
    stages.push_back(make_stage(part));
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  if (stages.size() == 1) return stages.front();
  return chain(std::move(stages));
}

}  // namespace ramanforge
