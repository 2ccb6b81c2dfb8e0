#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramanforge/core.hpp"
#include "ramanforge/noisemodel.hpp"
#include "ramanforge/rng.hpp"
#include "ramanforge/synth.hpp"

namespace ramanforge {

inline constexpr std::size_t kSkinComponentCount = 7;
inline constexpr std::array<std::string_view, kSkinComponentCount> kSkinComponents{
    "water", "ceramide", "keratin", "nucleus", "triolein", "elastin", "collagen"};

using SkinWeights = std::array<double, kSkinComponentCount>;

/// Seven AUC-normalized component spectra on one grid, in kSkinComponents order.
struct SkinBasis {
  std::vector<Spectrum> components;

  const SpectrumGrid& grid() const { return components.front().grid(); }
  /// Throws ValidationError unless there are 7 components on one grid, each
  /// with unit area (1e-9).
  void validate() const;
};

struct NamedCurve {
  std::string name;
  SampledCurve curve;
};

/// Builds a basis from one curve per component (any order, matched by name).
/// Curves sharing a uniform axis keep it; otherwise all are resampled onto
/// `target` by linear interpolation. Each is then AUC-normalized.
SkinBasis load_basis(std::span<const NamedCurve> curves, const SpectrumGrid& target = {});

/// Reads `<dir>/<component>.csv` for each component.
SkinBasis load_basis_dir(const std::filesystem::path& dir, const SpectrumGrid& target = {});

/// Writes `<dir>/<component>.csv` for each component.
void write_basis_dir(const std::filesystem::path& dir, const SkinBasis& basis);

/// Synthetic stand-in components: a distinct set of pseudo-Voigt bands per
/// component, placed near the usual assignments for each constituent.
SkinBasis standin_basis(const SpectrumGrid& grid = {});

struct SkinSample {
  SkinWeights weights{};
  Spectrum spectrum;
};

/// sum_i w_i C_i
Spectrum mix_components(const SkinBasis& basis, std::span<const double> weights);

/// Weights i.i.d. U(0, 1).
SkinSample gen_skin(const SkinBasis& basis, RngStream& stream);

struct SkinExample {
  LabeledExample example;
  SkinWeights weights{};
};

/// Each skin mixture becomes the Raman input of assemble_example together
/// with a random fluorescence baseline and random (r2f, SNR) targets.
std::vector<SkinExample> gen_skin_testset(const SkinBasis& basis, std::size_t count,
                                          const RngStream& stream,
                                          std::span<const DarkStats> dark_sets,
                                          const DatasetOptions& options = {});

}  // namespace ramanforge
