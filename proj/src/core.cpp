#include "ramanforge/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ramanforge/errors.hpp"

namespace ramanforge {

SpectrumGrid::SpectrumGrid(double start_wn, double end_wn, std::size_t n_points)
    : start_(start_wn), end_(end_wn), n_(n_points) {
  if (!std::isfinite(start_wn) || !std::isfinite(end_wn) || !(start_wn < end_wn)) {
    throw ValidationError("invalid grid range: start must be < end (got " +
                          std::to_string(start_wn) + ", " + std::to_string(end_wn) + ")");
  }
  if (n_points < 2) {
    throw ValidationError("invalid grid range: need at least 2 points");
  }
}

double SpectrumGrid::at(std::size_t i) const {
  if (i + 1 == n_) return end_;
  return start_ + static_cast<double>(i) * spacing();
}

std::vector<double> SpectrumGrid::wavenumbers() const {
  std::vector<double> wn(n_);
  for (std::size_t i = 0; i < n_; ++i) wn[i] = at(i);
  return wn;
}

SpectrumGrid make_grid(double start_wn, double end_wn, std::size_t n_points) {
  return SpectrumGrid(start_wn, end_wn, n_points);
}

Spectrum::Spectrum(const SpectrumGrid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

Spectrum::Spectrum(const SpectrumGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ValidationError("spectrum has " + std::to_string(values_.size()) +
                          " values but grid has " + std::to_string(grid_.size()) + " points");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("non-finite spectrum value at index " + std::to_string(i));
    }
  }
}

double Spectrum::max() const { return *std::max_element(values_.begin(), values_.end()); }

double Spectrum::min() const { return *std::min_element(values_.begin(), values_.end()); }

std::size_t Spectrum::argmax() const {
  // max_element returns the first of equal maxima.
  return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) -
                                  values_.begin());
}

void require_same_grid(const SpectrumGrid& a, const SpectrumGrid& b, const char* what) {
  if (!(a == b)) {
    throw ValidationError(std::string("grid mismatch: ") + what);
  }
}

Spectrum& Spectrum::operator+=(const Spectrum& other) {
  require_same_grid(grid_, other.grid_, "spectrum addition");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Spectrum& Spectrum::operator-=(const Spectrum& other) {
  require_same_grid(grid_, other.grid_, "spectrum subtraction");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Spectrum& Spectrum::operator*=(double factor) {
  for (double& v : values_) v *= factor;
  return *this;
}

Spectrum operator+(Spectrum lhs, const Spectrum& rhs) { return lhs += rhs; }
Spectrum operator-(Spectrum lhs, const Spectrum& rhs) { return lhs -= rhs; }
Spectrum operator*(Spectrum lhs, double factor) { return lhs *= factor; }
Spectrum operator*(double factor, Spectrum rhs) { return rhs *= factor; }

double trapezoid_auc(const Spectrum& s) {
  const auto v = s.values();
  double inner = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) inner += v[i];
  return s.grid().spacing() * (inner + 0.5 * (v.front() + v.back()));
}

Spectrum auc_normalize(const Spectrum& s) {
  const double area = trapezoid_auc(s);
  if (area == 0.0) throw ValidationError("zero-area spectrum cannot be AUC-normalized");
  if (!(area > 0.0)) throw ValidationError("negative-area spectrum cannot be AUC-normalized");
  return s * (1.0 / area);
}

namespace {

void check_curve(const SampledCurve& curve) {
  if (curve.wavenumbers.size() != curve.values.size()) {
    throw ValidationError("curve has mismatched wavenumber and value counts");
  }
  if (curve.wavenumbers.size() < 2) throw ValidationError("curve needs at least 2 points");
  for (std::size_t i = 1; i < curve.wavenumbers.size(); ++i) {
    if (!(curve.wavenumbers[i] > curve.wavenumbers[i - 1])) {
      throw ValidationError("wavenumbers must be strictly increasing (row " +
                            std::to_string(i + 1) + ")");
    }
  }
}

}  // namespace

SpectrumGrid infer_grid(const SampledCurve& curve) {
  check_curve(curve);
  const SpectrumGrid grid(curve.wavenumbers.front(), curve.wavenumbers.back(),
                          curve.wavenumbers.size());
  const double tol = 1e-6 * grid.spacing();
  for (std::size_t i = 0; i < curve.wavenumbers.size(); ++i) {
    if (std::abs(curve.wavenumbers[i] - grid.at(i)) > tol) {
      throw ValidationError("wavenumber axis is not uniform (point " + std::to_string(i) + ")");
    }
  }
  return grid;
}

Spectrum to_spectrum(const SampledCurve& curve) {
  return Spectrum(infer_grid(curve), curve.values);
}

Spectrum resample_linear(const SampledCurve& curve, const SpectrumGrid& grid) {
  check_curve(curve);
  const auto& wn = curve.wavenumbers;
  const double slack = 1e-9 * grid.spacing();
  if (wn.front() > grid.start() + slack || wn.back() < grid.end() - slack) {
    throw ValidationError("curve does not cover the target grid range");
  }
  std::vector<double> out(grid.size());
  std::size_t seg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = std::clamp(grid.at(i), wn.front(), wn.back());
    while (seg + 2 < wn.size() && wn[seg + 1] < x) ++seg;
    const double t = (x - wn[seg]) / (wn[seg + 1] - wn[seg]);
    out[i] = curve.values[seg] + std::clamp(t, 0.0, 1.0) * (curve.values[seg + 1] - curve.values[seg]);
  }
  return Spectrum(grid, std::move(out));
}

}  // namespace ramanforge
