#include "ramanforge/dataio/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ramanforge/errors.hpp"

namespace ramanforge {

const Json& require_field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(where + ": missing field '" + key + "'");
  }
  return j.at(key);
}

double require_number(const Json& j, const char* key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_number()) throw ValidationError(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

std::string require_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_string()) throw ValidationError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

Json grid_to_json(const SpectrumGrid& grid) {
  return Json{{"start", grid.start()}, {"end", grid.end()}, {"n", grid.size()}};
}

SpectrumGrid grid_from_json(const Json& j, const std::string& where) {
  const double start = require_number(j, "start", where);
  const double end = require_number(j, "end", where);
  const Json& n = require_field(j, "n", where);
  if (!n.is_number_unsigned()) throw ValidationError(where + ": field 'n' must be a count");
  try {
    return SpectrumGrid(start, end, n.get<std::size_t>());
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

Json dark_stats_to_json(const DarkStats& stats) {
  return Json{{"kind", "dark_stats"},
              {"schema_version", 1},
              {"grid", grid_to_json(stats.grid)},
              {"integration_time", stats.integration_time},
              {"n_frames", stats.n_frames},
              {"mean", stats.mean},
              {"variance", stats.variance}};
}

DarkStats dark_stats_from_json(const Json& j, const std::string& where) {
  if (require_string(j, "kind", where) != "dark_stats") {
    throw ValidationError(where + ": field 'kind' must be \"dark_stats\"");
  }
  DarkStats stats;
  stats.grid = grid_from_json(require_field(j, "grid", where), where + ".grid");
  stats.integration_time = require_number(j, "integration_time", where);
  const Json& frames = require_field(j, "n_frames", where);
  if (!frames.is_number_unsigned()) throw ValidationError(where + ": 'n_frames' must be a count");
  stats.n_frames = frames.get<std::size_t>();
  try {
    stats.mean = require_field(j, "mean", where).get<std::vector<double>>();
    stats.variance = require_field(j, "variance", where).get<std::vector<double>>();
  } catch (const Json::exception&) {
    throw ValidationError(where + ": 'mean' and 'variance' must be numeric arrays");
  }
  try {
    stats.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
  return stats;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string());
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw IoError(path.string() + ": invalid JSON: " + e.what());
  }
}

void save_dark_stats(const std::filesystem::path& path, const DarkStats& stats) {
  write_json_file(path, dark_stats_to_json(stats));
}

DarkStats load_dark_stats(const std::filesystem::path& path) {
  return dark_stats_from_json(read_json_file(path), path.string());
}

}  // namespace ramanforge
