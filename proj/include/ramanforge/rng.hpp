#pragma once

#include <cstdint>
#include <random>

namespace ramanforge {

/// Deterministic random stream identified by (root_seed, stream_index).
///
/// The engine state is derived from both numbers through a counter-based
/// mixer, so a stream depends only on its identity and never on which other
/// streams were created or in what order. Parallel workers each own one.
class RngStream {
 public:
  using Engine = std::mt19937_64;

  RngStream(std::uint64_t root_seed, std::uint64_t stream_index);

  std::uint64_t root_seed() const { return root_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  /// Rewinds to the first draw.
  void reset();

  /// Child stream for item `i`; its index mixes this stream's index with `i`.
  RngStream substream(std::uint64_t i) const;

  Engine& engine() { return engine_; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform on (0, 1].
  double uniform_open_closed();
  /// Uniform integer on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t root_seed_;
  std::uint64_t stream_index_;
  Engine engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Draw from N(mean, variance); variance 0 returns mean exactly.
/// Throws ValidationError on negative variance.
double sample_gaussian(RngStream& stream, double mean, double variance);

/// Poisson count with the given rate; rate 0 returns 0.
/// Throws ValidationError on a negative rate.
std::int64_t sample_poisson(RngStream& stream, double rate);

}  // namespace ramanforge
