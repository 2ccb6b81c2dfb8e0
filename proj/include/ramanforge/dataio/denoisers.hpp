#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ramanforge/classical/modpoly.hpp"
#include "ramanforge/classical/savgol.hpp"
#include "ramanforge/classical/wavelet.hpp"
#include "ramanforge/evalkit/protocols.hpp"

namespace ramanforge {

/// `key=value` pairs of one denoiser stage, e.g. "m=5,d=2".
using StageOptions = std::map<std::string, std::string>;

SGConfig sg_config_from(const StageOptions& opts);
WaveletConfig wavelet_config_from(const StageOptions& opts);
ModPolyConfig modpoly_config_from(const StageOptions& opts);

/// Runs `argv` with `--in <batch> --out <batch>` appended and returns the
/// output spectra. Throws ExternalToolError on spawn failure, nonzero exit,
/// unreadable output or an output whose shape differs from the input.
std::vector<Spectrum> run_external(const std::vector<std::string>& argv,
                                   std::span<const Spectrum> input);

Denoiser external_denoiser(std::vector<std::string> argv);

/// Builds a denoiser from a spec string. Stages are joined with '+' and
/// applied left to right:
///   identity | oracle | oracle-clean | oracle-pure
///   sg[:m=5,d=2] | wavelet[:family=db4,levels=4,rule=soft,scale=1]
///   modpoly[:low=3,high=6,iters=100,tol=1e-6] | external:<command line>
/// `oracle` is the pure Raman target. An external stage must come last since
/// its command line may itself contain '+'.
Denoiser make_denoiser(const std::string& spec);

}  // namespace ramanforge
