#include "ramanforge/dataio/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ramanforge/errors.hpp"

namespace ramanforge {

namespace {

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(std::string_view field, const std::filesystem::path& path, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw IoError(where(path, line) + "invalid number '" + std::string(field) + "'");
  }
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s) {
  auto out = open_out(path);
  out << "wavenumber,intensity\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_double(s.grid().at(i)) << ',' << format_double(s[i]) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

SampledCurve read_spectrum_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "wavenumber,intensity") {
    throw IoError(where(path, 1) + "expected header 'wavenumber,intensity'");
  }
  SampledCurve curve;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw IoError(where(path, line_no) + "expected 2 fields");
    const double wn = parse_number(fields[0], path, line_no);
    if (!curve.wavenumbers.empty() && !(wn > curve.wavenumbers.back())) {
      throw IoError(where(path, line_no) + "wavenumbers must be strictly increasing");
    }
    curve.wavenumbers.push_back(wn);
    curve.values.push_back(parse_number(fields[1], path, line_no));
  }
  if (curve.wavenumbers.size() < 2) throw IoError(path.string() + ": fewer than 2 data rows");
  return curve;
}

void write_batch_csv(const std::filesystem::path& path, std::span<const Spectrum> spectra) {
  if (spectra.empty()) throw ValidationError("batch must contain at least one spectrum");
  const SpectrumGrid& grid = spectra.front().grid();
  for (const auto& s : spectra) require_same_grid(grid, s.grid(), "batch columns");

  auto out = open_out(path);
  std::string row = "wavenumber";
  for (std::size_t k = 0; k < spectra.size(); ++k) row += ",spec_" + std::to_string(k);
  out << row << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    row = format_double(grid.at(i));
    for (const auto& s : spectra) {
      row += ',';
      row += format_double(s[i]);
    }
    out << row << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

Batch read_batch_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError(where(path, 1) + "empty batch file");
  line = strip_cr(line);
  const auto header = split_fields(line);
  if (header.size() < 2 || header.front() != "wavenumber") {
    throw IoError(where(path, 1) + "expected header 'wavenumber,spec_0,...'");
  }
  const std::size_t columns = header.size() - 1;

  std::vector<double> wn;
  std::vector<std::vector<double>> cols(columns);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != columns + 1) {
      throw IoError(where(path, line_no) + "expected " + std::to_string(columns + 1) +
                    " fields, found " + std::to_string(fields.size()));
    }
    const double w = parse_number(fields[0], path, line_no);
    if (!wn.empty() && !(w > wn.back())) {
      throw IoError(where(path, line_no) + "wavenumbers must be strictly increasing");
    }
    wn.push_back(w);
    for (std::size_t k = 0; k < columns; ++k) {
      cols[k].push_back(parse_number(fields[k + 1], path, line_no));
    }
  }
  if (wn.size() < 2) throw IoError(path.string() + ": fewer than 2 data rows");

  Batch batch;
  try {
    batch.grid = infer_grid(SampledCurve{wn, wn});
  } catch (const ValidationError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  batch.spectra.reserve(columns);
  for (auto& c : cols) batch.spectra.emplace_back(batch.grid, std::move(c));
  return batch;
}

}  // namespace ramanforge
