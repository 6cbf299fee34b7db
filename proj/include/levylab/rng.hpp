#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include <boost/random/normal_distribution.hpp>

namespace levylab {

class Rng;

/// Identifies a reproducible random stream. Identical (seed, stream_id)
/// pairs reproduce identical draws; distinct stream ids seed independent engines.
struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  [[nodiscard]] Rng engine(std::uint64_t substream = 0) const;

  /// A child stream, used to give each experiment of a run its own ids.
  [[nodiscard]] RandomStream child(std::uint64_t k) const {
    return {seed, stream_id * 0x9E3779B97F4A7C15ull + k + 1};
  }

  friend bool operator==(const RandomStream&, const RandomStream&) = default;
};

/// 64-bit Mersenne twister seeded through seed_seq from (seed, stream, substream).
/// Both the engine and seed_seq are fully specified by the standard, and the
/// Boost normal sampler is header code, so draws are platform independent.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0) {
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(substream), hi(substream)};
    engine_.seed(seq);
  }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() { return normal_(engine_); }

 private:
  static std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
  static std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_{0.0, 1.0};
};

inline Rng RandomStream::engine(std::uint64_t substream) const { return Rng(seed, stream_id, substream); }

}  // namespace levylab
