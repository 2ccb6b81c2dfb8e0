#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ramanforge/core.hpp"

namespace ramanforge {

/// Shortest-safe round-trip text for a double (17 significant digits).
std::string format_double(double v);

/// `wavenumber,intensity`, one row per grid point.
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s);
/// Reads a spectrum file without imposing a grid. Throws IoError with the
/// offending line number on malformed input.
SampledCurve read_spectrum_csv(const std::filesystem::path& path);

/// Spectra sharing one grid, stored column-wise.
struct Batch {
  SpectrumGrid grid;
  std::vector<Spectrum> spectra;
};

/// `wavenumber,spec_0,spec_1,...`; all spectra must share a grid.
void write_batch_csv(const std::filesystem::path& path, std::span<const Spectrum> spectra);
Batch read_batch_csv(const std::filesystem::path& path);

}  // namespace ramanforge
