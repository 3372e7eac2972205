#pragma once

#include <cstdint>
#include <limits>

namespace bergman {

/// Tags separating the random streams used by one replica.
enum class StreamPhase : std::uint64_t {
  bernoulli = 1,
  positions = 2,
  moduli = 3,
  conjecture = 4,
  oracle = 5,
};

/// Counter-based generator: output k is splitmix64(key + k * golden), with the
/// key derived from (seed, replica, phase). Streams for different replicas or
/// phases never share state, and each stream is reproducible on its own.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t replica, StreamPhase phase);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1).
  double uniform();

  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace bergman
