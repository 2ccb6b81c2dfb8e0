#include "ramanforge/skin.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ramanforge/dataio/csv.hpp"
#include "ramanforge/errors.hpp"
#include "ramanforge/parallel.hpp"

namespace ramanforge {

namespace {

struct Band {
  double center;
  double fwhm;
  double amplitude;
};

// Rough band assignments for each constituent; shapes only need to be distinct.
const std::array<std::vector<Band>, kSkinComponentCount>& standin_bands() {
  static const std::array<std::vector<Band>, kSkinComponentCount> bands{{
      {{1640, 90, 1.0}, {650, 150, 0.3}},
      {{1062, 25, 0.6}, {1128, 25, 0.6}, {1296, 30, 0.8}, {1440, 35, 1.0}},
      {{935, 30, 0.3}, {1003, 12, 0.6}, {1250, 60, 0.5}, {1450, 40, 0.8}, {1655, 50, 1.0}},
      {{785, 20, 1.0}, {1095, 30, 0.6}, {1340, 40, 0.7}, {1485, 25, 0.4}, {1575, 30, 0.6}},
      {{870, 30, 0.3}, {1265, 30, 0.6}, {1302, 25, 0.7}, {1440, 30, 1.0}, {1655, 30, 0.9},
       {1745, 25, 0.5}},
      {{720, 30, 0.3}, {1003, 12, 0.4}, {1105, 40, 0.5}, {1335, 50, 0.5}, {1450, 40, 0.9},
       {1660, 60, 1.0}},
      {{855, 20, 0.7}, {938, 25, 0.6}, {1003, 12, 0.3}, {1245, 40, 0.7}, {1450, 40, 0.8},
       {1665, 50, 1.0}},
  }};
  return bands;
}

std::optional<SpectrumGrid> shared_uniform_grid(std::span<const NamedCurve> curves) {
  std::optional<SpectrumGrid> grid;
  for (const auto& c : curves) {
    SpectrumGrid g;
    try {
      g = infer_grid(c.curve);
    } catch (const ValidationError&) {
      return std::nullopt;
    }
    if (grid && !(*grid == g)) return std::nullopt;
    grid = g;
  }
  return grid;
}

}  // namespace

void SkinBasis::validate() const {
  if (components.size() != kSkinComponentCount) {
    throw ValidationError("skin basis needs exactly 7 components, got " +
                          std::to_string(components.size()));
  }
  for (std::size_t k = 0; k < components.size(); ++k) {
    require_same_grid(components.front().grid(), components[k].grid(), "skin basis components");
    const double area = trapezoid_auc(components[k]);
    if (std::abs(area - 1.0) > 1e-9) {
      throw ValidationError("skin component '" + std::string(kSkinComponents[k]) +
                            "' is not AUC-normalized");
    }
  }
}

SkinBasis load_basis(std::span<const NamedCurve> curves, const SpectrumGrid& target) {
  std::vector<const NamedCurve*> ordered;
  for (const auto name : kSkinComponents) {
    const auto it = std::find_if(curves.begin(), curves.end(),
                                 [&](const NamedCurve& c) { return c.name == name; });
    if (it == curves.end()) {
      throw ValidationError("missing skin component '" + std::string(name) + "'");
    }
    ordered.push_back(&*it);
  }

  const auto shared = shared_uniform_grid(curves);
  SkinBasis basis;
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    const NamedCurve& c = *ordered[k];
    Spectrum s;
    try {
      s = shared ? to_spectrum(c.curve) : resample_linear(c.curve, target);
      basis.components.push_back(auc_normalize(s));
    } catch (const ValidationError& e) {
      throw ValidationError("skin component '" + c.name + "': " + e.what());
    }
  }
  basis.validate();
  return basis;
}

SkinBasis load_basis_dir(const std::filesystem::path& dir, const SpectrumGrid& target) {
  std::vector<NamedCurve> curves;
  for (const auto name : kSkinComponents) {
    const auto path = dir / (std::string(name) + ".csv");
    if (!std::filesystem::exists(path)) {
      throw ValidationError("missing skin component file " + path.string());
    }
    curves.push_back({std::string(name), read_spectrum_csv(path)});
  }
  return load_basis(curves, target);
}

void write_basis_dir(const std::filesystem::path& dir, const SkinBasis& basis) {
  basis.validate();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (std::size_t k = 0; k < kSkinComponentCount; ++k) {
    write_spectrum_csv(dir / (std::string(kSkinComponents[k]) + ".csv"), basis.components[k]);
  }
}

SkinBasis standin_basis(const SpectrumGrid& grid) {
  SkinBasis basis;
  for (const auto& bands : standin_bands()) {
    Spectrum s(grid);
    for (const auto& b : bands) {
      const double center = std::clamp(b.center, grid.start(), grid.end());
      s += pseudo_voigt(grid, PeakParams::from_fwhm(center, b.fwhm, 0.5, b.amplitude));
    }
    basis.components.push_back(auc_normalize(s));
  }
  basis.validate();
  return basis;
}

Spectrum mix_components(const SkinBasis& basis, std::span<const double> weights) {
  if (weights.size() != basis.components.size()) {
    throw ValidationError("weight count does not match the number of components");
  }
  Spectrum out(basis.grid());
  auto values = out.mutable_values();
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const auto& c = basis.components[k];
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += weights[k] * c[i];
  }
  return out;
}

SkinSample gen_skin(const SkinBasis& basis, RngStream& stream) {
  SkinSample sample;
  for (double& w : sample.weights) w = stream.uniform(0.0, 1.0);
  sample.spectrum = mix_components(basis, sample.weights);
  return sample;
}

std::vector<SkinExample> gen_skin_testset(const SkinBasis& basis, std::size_t count,
                                          const RngStream& stream,
                                          std::span<const DarkStats> dark_sets,
                                          const DatasetOptions& options) {
  basis.validate();
  if (count < 1) throw ValidationError("skin test set count must be >= 1");
  if (dark_sets.empty()) throw ValidationError("no dark stats supplied");
  options.ranges.validate();
  for (const auto& d : dark_sets) {
    d.validate();
    require_same_grid(basis.grid(), d.grid, "skin basis vs dark stats");
  }

  std::vector<SkinExample> out(count);
  parallel_for(count, [&](std::size_t i) {
    RngStream rng = stream.substream(i);
    const ScaleTargets targets = options.ranges.sample(rng);
    const std::size_t dark_id = select_dark(dark_sets, rng);
    int retries = 0;
    SkinSample sample = gen_skin(basis, rng);
    while (!(sample.spectrum.max() > 0.0)) {
      if (++retries > options.max_raman_retries) {
        throw FlatRamanError("could not draw a non-flat skin spectrum");
      }
      sample = gen_skin(basis, rng);
    }
    const Spectrum fluor = gen_fluorescence(basis.grid(), rng, options.fluor);
    SkinExample ex;
    ex.example = assemble_example(sample.spectrum, fluor, targets, dark_sets[dark_id], rng,
                                  options.mode);
    ex.example.dark_id = dark_id;
    ex.example.raman_retries = retries;
    ex.weights = sample.weights;
    out[i] = std::move(ex);
  });
  return out;
}

}  // namespace ramanforge
