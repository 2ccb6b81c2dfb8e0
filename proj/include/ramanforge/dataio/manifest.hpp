#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ramanforge/dataio/json_io.hpp"
#include "ramanforge/skin.hpp"
#include "ramanforge/synth.hpp"

namespace ramanforge {

inline constexpr int kManifestSchemaVersion = 1;

enum class DatasetKind { kRaman, kSkin };

/// Stream index reserved for each (kind, split) so splits never share draws.
/// Throws ValidationError for a split other than train, val or test.
std::uint64_t split_stream_index(DatasetKind kind, const std::string& split);

struct SplitFiles {
  std::string noisy;
  std::string clean;
  std::string pure;
  std::string fluor;
};

struct ExampleRecord {
  std::size_t id = 0;
  std::uint64_t seed_index = 0;
  double r2f = 0.0;
  double snr = 0.0;
  std::size_t dark_id = 0;
  double m = 0.0;
  double n = 0.0;
  std::size_t peak_index = 0;
  int raman_retries = 0;
  std::optional<SkinWeights> skin_weights;
};

struct SplitEntry {
  std::size_t count = 0;
  std::uint64_t stream_index = 0;
  SplitFiles files;
  std::vector<ExampleRecord> examples;
};

struct DarkRef {
  std::size_t id = 0;
  std::string file;  ///< relative to the manifest directory
  double integration_time = 0.0;
  std::size_t n_frames = 0;
};

/// Dataset description written next to the batch files it references.
struct DatasetManifest {
  DatasetKind kind = DatasetKind::kRaman;
  SpectrumGrid grid;
  std::uint64_t root_seed = 0;
  std::vector<DarkRef> dark_stats;
  std::optional<std::string> skin_basis_dir;  ///< relative to the manifest directory
  Json creation = Json::object();
  std::map<std::string, SplitEntry> splits;
};

Json manifest_to_json(const DatasetManifest& m);
/// Structural parse; `where` prefixes diagnostics.
DatasetManifest manifest_from_json(const Json& j, const std::string& where);

/// Reads and fully validates: every referenced file exists and parses and
/// every count matches its file contents. Diagnostics name the field or file.
DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const std::filesystem::path& path, const DatasetManifest& m);

/// Dark stats referenced by a manifest, in id order.
std::vector<DarkStats> load_manifest_darks(const DatasetManifest& m,
                                           const std::filesystem::path& dir);

/// Rebuilds the labeled examples of one split from its batch files.
std::vector<LabeledExample> load_split_examples(const DatasetManifest& m,
                                                const std::filesystem::path& dir,
                                                const std::string& split);

/// Basis referenced by a skin manifest.
SkinBasis load_manifest_basis(const DatasetManifest& m, const std::filesystem::path& dir);

/// Writes the four batch files for `examples` and returns the split entry.
SplitEntry write_split(const std::filesystem::path& dir, const std::string& split,
                       std::span<const LabeledExample> examples,
                       std::span<const SkinWeights> skin_weights = {});

}  // namespace ramanforge
