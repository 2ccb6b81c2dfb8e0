#include "ramanforge/dataio/manifest.hpp"

#include "ramanforge/dataio/csv.hpp"
#include "ramanforge/errors.hpp"

namespace ramanforge {

namespace {

const char* kind_name(DatasetKind k) { return k == DatasetKind::kSkin ? "skin" : "raman"; }

template <typename T>
T require_count(const Json& j, const char* key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_number_unsigned()) {
    throw ValidationError(where + ": field '" + key + "' must be a non-negative integer");
  }
  return v.get<T>();
}

Json record_to_json(const ExampleRecord& r, const SplitFiles& files) {
  Json j{{"id", r.id},
         {"seed_index", r.seed_index},
         {"r2f", r.r2f},
         {"snr", r.snr},
         {"dark_id", r.dark_id},
         {"m", r.m},
         {"n", r.n},
         {"peak_index", r.peak_index},
         {"raman_retries", r.raman_retries},
         {"column", "spec_" + std::to_string(r.id)},
         {"files",
          {{"noisy", files.noisy}, {"clean", files.clean}, {"pure", files.pure},
           {"fluor", files.fluor}}}};
  if (r.skin_weights) j["skin_weights"] = *r.skin_weights;
  return j;
}

ExampleRecord record_from_json(const Json& j, const std::string& where) {
  ExampleRecord r;
  r.id = require_count<std::size_t>(j, "id", where);
  r.seed_index = require_count<std::uint64_t>(j, "seed_index", where);
  r.r2f = require_number(j, "r2f", where);
  r.snr = require_number(j, "snr", where);
  r.dark_id = require_count<std::size_t>(j, "dark_id", where);
  r.m = require_number(j, "m", where);
  r.n = require_number(j, "n", where);
  r.peak_index = require_count<std::size_t>(j, "peak_index", where);
  r.raman_retries = static_cast<int>(require_number(j, "raman_retries", where));
  if (j.contains("skin_weights")) {
    const Json& w = j.at("skin_weights");
    if (!w.is_array() || w.size() != kSkinComponentCount) {
      throw ValidationError(where + ": field 'skin_weights' must hold 7 numbers");
    }
    SkinWeights weights{};
    for (std::size_t k = 0; k < kSkinComponentCount; ++k) weights[k] = w[k].get<double>();
    r.skin_weights = weights;
  }
  return r;
}

}  // namespace

std::uint64_t split_stream_index(DatasetKind kind, const std::string& split) {
  const std::uint64_t base = kind == DatasetKind::kSkin ? 16 : 0;
  if (split == "train") return base + 0;
  if (split == "val") return base + 1;
  if (split == "test") return base + 2;
  throw ValidationError("unknown split '" + split + "' (expected train, val or test)");
}

Json manifest_to_json(const DatasetManifest& m) {
  Json darks = Json::array();
  for (const auto& d : m.dark_stats) {
    darks.push_back({{"id", d.id},
                     {"file", d.file},
                     {"integration_time", d.integration_time},
                     {"n_frames", d.n_frames}});
  }
  Json splits = Json::object();
  for (const auto& [name, s] : m.splits) {
    Json examples = Json::array();
    for (const auto& r : s.examples) examples.push_back(record_to_json(r, s.files));
    splits[name] = {{"count", s.count},
                    {"stream_index", s.stream_index},
                    {"files",
                     {{"noisy", s.files.noisy},
                      {"clean", s.files.clean},
                      {"pure", s.files.pure},
                      {"fluor", s.files.fluor}}},
                    {"examples", std::move(examples)}};
  }
  Json j{{"schema_version", kManifestSchemaVersion},
         {"kind", kind_name(m.kind)},
         {"grid", grid_to_json(m.grid)},
         {"root_seed", m.root_seed},
         {"dark_stats", std::move(darks)},
         {"creation", m.creation},
         {"splits", std::move(splits)}};
  if (m.skin_basis_dir) {
    Json names = Json::array();
    for (auto n : kSkinComponents) names.push_back(std::string(n));
    j["skin_basis"] = {{"dir", *m.skin_basis_dir}, {"components", names}};
  }
  return j;
}

DatasetManifest manifest_from_json(const Json& j, const std::string& where) {
  const Json& version = require_field(j, "schema_version", where);
  if (!version.is_number_integer() || version.get<int>() != kManifestSchemaVersion) {
    throw ValidationError(where + ": unsupported schema_version (expected " +
                          std::to_string(kManifestSchemaVersion) + ")");
  }
  DatasetManifest m;
  const std::string kind = require_string(j, "kind", where);
  if (kind == "raman") {
    m.kind = DatasetKind::kRaman;
  } else if (kind == "skin") {
    m.kind = DatasetKind::kSkin;
  } else {
    throw ValidationError(where + ": field 'kind' must be \"raman\" or \"skin\"");
  }
  m.grid = grid_from_json(require_field(j, "grid", where), where + ".grid");
  m.root_seed = require_count<std::uint64_t>(j, "root_seed", where);
  m.creation = j.value("creation", Json::object());

  const Json& darks = require_field(j, "dark_stats", where);
  if (!darks.is_array() || darks.empty()) {
    throw ValidationError(where + ": field 'dark_stats' must be a non-empty array");
  }
  for (std::size_t i = 0; i < darks.size(); ++i) {
    const std::string w = where + ".dark_stats[" + std::to_string(i) + "]";
    DarkRef d;
    d.id = require_count<std::size_t>(darks[i], "id", w);
    if (d.id != i) throw ValidationError(w + ": field 'id' must equal its position");
    d.file = require_string(darks[i], "file", w);
    d.integration_time = require_number(darks[i], "integration_time", w);
    d.n_frames = require_count<std::size_t>(darks[i], "n_frames", w);
    m.dark_stats.push_back(d);
  }

  if (j.contains("skin_basis")) {
    m.skin_basis_dir = require_string(j.at("skin_basis"), "dir", where + ".skin_basis");
  }
  if (m.kind == DatasetKind::kSkin && !m.skin_basis_dir) {
    throw ValidationError(where + ": skin manifest needs field 'skin_basis'");
  }

  const Json& splits = require_field(j, "splits", where);
  if (!splits.is_object()) throw ValidationError(where + ": field 'splits' must be an object");
  for (const auto& [name, s] : splits.items()) {
    const std::string w = where + ".splits." + name;
    split_stream_index(m.kind, name);
    SplitEntry entry;
    entry.count = require_count<std::size_t>(s, "count", w);
    entry.stream_index = require_count<std::uint64_t>(s, "stream_index", w);
    const Json& files = require_field(s, "files", w);
    entry.files = {require_string(files, "noisy", w + ".files"),
                   require_string(files, "clean", w + ".files"),
                   require_string(files, "pure", w + ".files"),
                   require_string(files, "fluor", w + ".files")};
    const Json& examples = require_field(s, "examples", w);
    if (!examples.is_array()) throw ValidationError(w + ": field 'examples' must be an array");
    for (std::size_t i = 0; i < examples.size(); ++i) {
      const std::string we = w + ".examples[" + std::to_string(i) + "]";
      ExampleRecord r = record_from_json(examples[i], we);
      if (r.id != i) throw ValidationError(we + ": field 'id' must equal its position");
      if (r.dark_id >= m.dark_stats.size()) {
        throw ValidationError(we + ": field 'dark_id' references a missing dark set");
      }
      if (m.kind == DatasetKind::kSkin && !r.skin_weights) {
        throw ValidationError(we + ": skin example lacks field 'skin_weights'");
      }
      entry.examples.push_back(std::move(r));
    }
    if (entry.examples.size() != entry.count) {
      throw ValidationError(w + ": field 'count' is " + std::to_string(entry.count) + " but " +
                            std::to_string(entry.examples.size()) + " examples are listed");
    }
    m.splits.emplace(name, std::move(entry));
  }
  return m;
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& m) {
  write_json_file(path, manifest_to_json(m));
}

std::vector<DarkStats> load_manifest_darks(const DatasetManifest& m,
                                           const std::filesystem::path& dir) {
  std::vector<DarkStats> out;
  for (const auto& ref : m.dark_stats) {
    const auto path = dir / ref.file;
    if (!std::filesystem::exists(path)) {
      throw ValidationError("manifest field 'dark_stats[" + std::to_string(ref.id) +
                            "].file': missing file " + path.string());
    }
    DarkStats d = load_dark_stats(path);
    if (!(d.grid == m.grid)) {
      throw ValidationError(path.string() + ": dark stats grid differs from manifest grid");
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<LabeledExample> load_split_examples(const DatasetManifest& m,
                                                const std::filesystem::path& dir,
                                                const std::string& split) {
  const auto it = m.splits.find(split);
  if (it == m.splits.end()) {
    throw ValidationError("manifest has no split '" + split + "'");
  }
  const SplitEntry& s = it->second;
  auto read = [&](const std::string& field, const std::string& file) {
    const auto path = dir / file;
    if (!std::filesystem::exists(path)) {
      throw ValidationError("manifest field 'splits." + split + ".files." + field +
                            "': missing file " + path.string());
    }
    Batch b = read_batch_csv(path);
    if (b.spectra.size() != s.count) {
      throw ValidationError(path.string() + ": holds " + std::to_string(b.spectra.size()) +
                            " spectra but manifest count is " + std::to_string(s.count));
    }
    if (!(b.grid == m.grid)) {
      throw ValidationError(path.string() + ": grid differs from manifest grid");
    }
    return b;
  };
  Batch noisy = read("noisy", s.files.noisy);
  Batch clean = read("clean", s.files.clean);
  Batch pure = read("pure", s.files.pure);
  Batch fluor = read("fluor", s.files.fluor);

  std::vector<LabeledExample> out(s.count);
  for (std::size_t i = 0; i < s.count; ++i) {
    const ExampleRecord& r = s.examples[i];
    LabeledExample& ex = out[i];
    ex.noisy = std::move(noisy.spectra[i]);
    ex.clean_with_baseline = std::move(clean.spectra[i]);
    ex.pure_raman = std::move(pure.spectra[i]);
    ex.fluorescence = std::move(fluor.spectra[i]);
    ex.targets = {r.r2f, r.snr};
    ex.scale = {r.m, r.n};
    ex.peak_index = r.peak_index;
    ex.dark_id = r.dark_id;
    ex.root_seed = m.root_seed;
    ex.stream_index = r.seed_index;
    ex.raman_retries = r.raman_retries;
  }
  return out;
}

SkinBasis load_manifest_basis(const DatasetManifest& m, const std::filesystem::path& dir) {
  if (!m.skin_basis_dir) throw ValidationError("manifest has no field 'skin_basis'");
  return load_basis_dir(dir / *m.skin_basis_dir, m.grid);
}

SplitEntry write_split(const std::filesystem::path& dir, const std::string& split,
                       std::span<const LabeledExample> examples,
                       std::span<const SkinWeights> skin_weights) {
  SplitEntry entry;
  entry.count = examples.size();
  entry.files = {split + "_noisy.csv", split + "_clean.csv", split + "_pure.csv",
                 split + "_fluor.csv"};

  auto column = [&](auto member) {
    std::vector<Spectrum> col;
    col.reserve(examples.size());
    for (const auto& ex : examples) col.push_back(ex.*member);
    return col;
  };
  write_batch_csv(dir / entry.files.noisy, column(&LabeledExample::noisy));
  write_batch_csv(dir / entry.files.clean, column(&LabeledExample::clean_with_baseline));
  write_batch_csv(dir / entry.files.pure, column(&LabeledExample::pure_raman));
  write_batch_csv(dir / entry.files.fluor, column(&LabeledExample::fluorescence));

  for (std::size_t i = 0; i < examples.size(); ++i) {
    const auto& ex = examples[i];
    ExampleRecord r;
    r.id = i;
    r.seed_index = ex.stream_index;
    r.r2f = ex.targets.r2f;
    r.snr = ex.targets.snr;
    r.dark_id = ex.dark_id;
    r.m = ex.scale.m;
    r.n = ex.scale.n;
    r.peak_index = ex.peak_index;
    r.raman_retries = ex.raman_retries;
    if (!skin_weights.empty()) r.skin_weights = skin_weights[i];
    entry.examples.push_back(r);
  }
  return entry;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw IoError("manifest not found: " + path.string());
  DatasetManifest m = manifest_from_json(read_json_file(path), path.string());
  const auto dir = path.parent_path();
  const auto darks = load_manifest_darks(m, dir);
  for (std::size_t i = 0; i < darks.size(); ++i) {
    if (darks[i].n_frames != m.dark_stats[i].n_frames) {
      throw ValidationError(path.string() + ": field 'dark_stats[" + std::to_string(i) +
                            "].n_frames' disagrees with " + m.dark_stats[i].file);
    }
  }
  for (const auto& [name, s] : m.splits) load_split_examples(m, dir, name);
  if (m.skin_basis_dir) load_manifest_basis(m, dir);
  return m;
}

}  // namespace ramanforge
