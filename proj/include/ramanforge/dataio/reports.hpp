#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "ramanforge/dataio/json_io.hpp"
#include "ramanforge/evalkit/protocols.hpp"

namespace ramanforge {

/// Fields shared by every report: what was evaluated and how.
struct ReportContext {
  std::string denoiser;
  std::string manifest;
  std::string split;
  std::uint64_t seed = 0;
};

/// Undefined quantities are written as null.
Json snri_report(const ReportContext& ctx, const SnriConfig& cfg,
                 std::span<const SnriRecord> records);
Json peak_report(const ReportContext& ctx, const PeakProtocolResult& result);
Json skin_report(const ReportContext& ctx, const SkinEvalReport& report);

/// Flat table of the points a report's figure is drawn from.
/// snri: r2f,snr,snri_db
/// peaks: prominence,missing_ratio,artifact_ratio,value_bias,shift_mean
/// skin: component,weight_pure,weight_denoised,slope,intercept
std::string plot_points_csv(const Json& report);

/// Static SVG of the same points: an r2f/SNR scatter coloured by SNRi, the
/// peak metrics against prominence, or the concentration scatter with fits.
std::string plot_svg(const Json& report);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ramanforge
