#include "ramanforge/rng.hpp"

#include <cmath>

#include "ramanforge/errors.hpp"

namespace ramanforge {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

RngStream::Engine seeded_engine(std::uint64_t root, std::uint64_t index) {
  std::uint64_t state = mix64(root ^ mix64(index + kGolden));
  std::uint32_t words[8];
  for (auto& w : words) {
    state += kGolden;
    w = static_cast<std::uint32_t>(mix64(state) >> 32);
  }
  std::seed_seq seq(std::begin(words), std::end(words));
  return RngStream::Engine(seq);
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

RngStream::RngStream(std::uint64_t root_seed, std::uint64_t stream_index)
    : root_seed_(root_seed),
      stream_index_(stream_index),
      engine_(seeded_engine(root_seed, stream_index)) {}

void RngStream::reset() { engine_ = seeded_engine(root_seed_, stream_index_); }

RngStream RngStream::substream(std::uint64_t i) const {
  return RngStream(root_seed_, mix64(stream_index_ * kGolden + mix64(i + 1)));
}

double RngStream::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double RngStream::uniform_open_closed() { return 1.0 - uniform(0.0, 1.0); }

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

double sample_gaussian(RngStream& stream, double mean, double variance) {
  if (variance < 0.0 || std::isnan(variance)) {
    throw ValidationError("negative variance passed to Gaussian sampler");
  }
  if (variance == 0.0) return mean;
  std::normal_distribution<double> dist(0.0, 1.0);
  return mean + std::sqrt(variance) * dist(stream.engine());
}

std::int64_t sample_poisson(RngStream& stream, double rate) {
  if (rate < 0.0 || std::isnan(rate)) {
    throw ValidationError("negative rate passed to Poisson sampler");
  }
  if (rate == 0.0) return 0;
  std::poisson_distribution<std::int64_t> dist(rate);
  return dist(stream.engine());
}

}  // namespace ramanforge
