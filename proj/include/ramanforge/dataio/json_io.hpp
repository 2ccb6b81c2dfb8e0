#pragma once

#include <filesystem>

#include "json.hpp"
#include "ramanforge/core.hpp"
#include "ramanforge/noisemodel.hpp"

namespace ramanforge {

using Json = nlohmann::json;

Json grid_to_json(const SpectrumGrid& grid);
/// Throws ValidationError naming `where` for missing or bad fields.
SpectrumGrid grid_from_json(const Json& j, const std::string& where);

Json dark_stats_to_json(const DarkStats& stats);
DarkStats dark_stats_from_json(const Json& j, const std::string& where);

/// Pretty-printed with sorted keys and a trailing newline; written to a
/// temporary sibling and renamed into place.
void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

void save_dark_stats(const std::filesystem::path& path, const DarkStats& stats);
DarkStats load_dark_stats(const std::filesystem::path& path);

/// Field accessors that raise ValidationError("<where>: missing field 'x'").
const Json& require_field(const Json& j, const char* key, const std::string& where);
double require_number(const Json& j, const char* key, const std::string& where);
std::string require_string(const Json& j, const char* key, const std::string& where);

}  // namespace ramanforge
