#include "ramanforge/classical/dct.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "ramanforge/errors.hpp"

namespace ramanforge {

namespace {

// FFTW planning is not thread-safe; execution with new arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, fftw_r2r_kind kind) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, static_cast<int>(kind));
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    double* in = fftw_alloc_real(static_cast<std::size_t>(n));
    double* out = fftw_alloc_real(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_r2r_1d(n, in, out, kind, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

std::vector<double> dct(std::span<const double> x) {
  if (x.empty()) throw ValidationError("DCT of an empty array");
  const int n = static_cast<int>(x.size());
  std::vector<double> in(x.begin(), x.end());
  std::vector<double> out(x.size());
  fftw_execute_r2r(plan_cache().get(n, FFTW_REDFT10), in.data(), out.data());
  // FFTW's REDFT10 is 2 * sum x_j cos(pi k (2j+1) / 2N).
  const double dc = std::sqrt(1.0 / (4.0 * n));
  const double ac = std::sqrt(1.0 / (2.0 * n));
  out[0] *= dc;
  for (std::size_t k = 1; k < out.size(); ++k) out[k] *= ac;
  return out;
}

std::vector<double> idct(std::span<const double> coeffs) {
  if (coeffs.empty()) throw ValidationError("IDCT of an empty array");
  const int n = static_cast<int>(coeffs.size());
  std::vector<double> in(coeffs.begin(), coeffs.end());
  in[0] *= std::sqrt(1.0 / n);
  const double ac = std::sqrt(1.0 / (2.0 * n));
  for (std::size_t k = 1; k < in.size(); ++k) in[k] *= ac;
  std::vector<double> out(coeffs.size());
  // REDFT01 is X_0 + 2 sum_{k>=1} X_k cos(pi k (2j+1) / 2N).
  fftw_execute_r2r(plan_cache().get(n, FFTW_REDFT01), in.data(), out.data());
  return out;
}

}  // namespace ramanforge
