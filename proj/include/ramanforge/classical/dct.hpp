#pragma once

#include <span>
#include <vector>

namespace ramanforge {

/// Orthonormal DCT-II. Throws ValidationError on empty input.
std::vector<double> dct(std::span<const double> x);

/// Orthonormal DCT-III, the exact inverse of dct().
std::vector<double> idct(std::span<const double> coeffs);

}  // namespace ramanforge
