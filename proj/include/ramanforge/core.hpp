#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ramanforge {

/// Uniform wavenumber axis in cm^-1.
///
/// The default-constructed grid is the 600-1790 cm^-1 range sampled at 693
/// points, which every simulated spectrum uses unless told otherwise.
class SpectrumGrid {
 public:
  static constexpr double kDefaultStart = 600.0;
  static constexpr double kDefaultEnd = 1790.0;
  static constexpr std::size_t kDefaultPoints = 693;

  SpectrumGrid() = default;

  /// Throws ValidationError unless start < end and n_points >= 2.
  SpectrumGrid(double start_wn, double end_wn, std::size_t n_points);

  double start() const { return start_; }
  double end() const { return end_; }
  std::size_t size() const { return n_; }
  double spacing() const { return (end_ - start_) / static_cast<double>(n_ - 1); }

  /// Wavenumber of point i; the last point is exactly end().
  double at(std::size_t i) const;
  std::vector<double> wavenumbers() const;

  /// Maps a wavenumber onto [0, 1] across the grid range.
  double normalized(std::size_t i) const {
    return static_cast<double>(i) / static_cast<double>(n_ - 1);
  }

  friend bool operator==(const SpectrumGrid&, const SpectrumGrid&) = default;

 private:
  double start_ = kDefaultStart;
  double end_ = kDefaultEnd;
  std::size_t n_ = kDefaultPoints;
};

SpectrumGrid make_grid(double start_wn, double end_wn, std::size_t n_points);

/// Intensities sampled on a SpectrumGrid. Values are always finite.
class Spectrum {
 public:
  Spectrum() = default;
  /// Zero spectrum on `grid`.
  explicit Spectrum(const SpectrumGrid& grid);
  /// Throws ValidationError on a length mismatch or a non-finite value.
  Spectrum(const SpectrumGrid& grid, std::vector<double> values);

  const SpectrumGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& data() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Mutable access; callers are responsible for keeping values finite.
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<double> mutable_values() { return values_; }

  double max() const;
  double min() const;
  /// Index of the largest value; ties resolve to the lowest wavenumber.
  std::size_t argmax() const;

  Spectrum& operator+=(const Spectrum& other);
  Spectrum& operator-=(const Spectrum& other);
  Spectrum& operator*=(double factor);

 private:
  SpectrumGrid grid_;
  std::vector<double> values_;
};

Spectrum operator+(Spectrum lhs, const Spectrum& rhs);
Spectrum operator-(Spectrum lhs, const Spectrum& rhs);
Spectrum operator*(Spectrum lhs, double factor);
Spectrum operator*(double factor, Spectrum rhs);

/// Samples on an arbitrary strictly increasing wavenumber axis, as read from
/// files before they are placed on a SpectrumGrid.
struct SampledCurve {
  std::vector<double> wavenumbers;
  std::vector<double> values;
};

/// Grid matching the curve's axis when the axis is uniform (within 1e-6 of
/// the spacing); otherwise ValidationError.
SpectrumGrid infer_grid(const SampledCurve& curve);

/// Exact conversion of a uniformly sampled curve.
Spectrum to_spectrum(const SampledCurve& curve);

/// Linear interpolation onto `grid`. The curve must cover the grid range.
Spectrum resample_linear(const SampledCurve& curve, const SpectrumGrid& grid);

/// Throws ValidationError naming `what` when the grids differ.
void require_same_grid(const SpectrumGrid& a, const SpectrumGrid& b, const char* what);

/// Trapezoidal integral over the physical wavenumber axis.
double trapezoid_auc(const Spectrum& s);

/// Rescales `s` so its trapezoidal area is one. Throws ValidationError when
/// the area is zero or negative.
Spectrum auc_normalize(const Spectrum& s);

}  // namespace ramanforge
