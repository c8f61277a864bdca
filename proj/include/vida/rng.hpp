// SPDX-License-Identifier: Apache-2.0
#ifndef VIDA_RNG_HPP
#define VIDA_RNG_HPP

#include <cstdint>
#include <string_view>

namespace vida {

// Deterministic random stream built on the splitmix64 finalizer.
// Every distribution is hand rolled so the sequence produced by a given
// seed is identical on every platform and toolchain; nothing here calls
// into <random>.
//
// uniform01 is virtual so tests can substitute a scripted sequence and
// replay a hand-computed trace through the engine.
class RandomStream {
public:
  RandomStream() : state_(0) {}
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}
  virtual ~RandomStream() = default;

  // Next raw 64-bit word.
  std::uint64_t next_u64();

  // Uniform double in [0, 1), 53 bits of precision.
  virtual double uniform01();

  // True with probability p. p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform double in [lo, hi).
  double uniform_range(double lo, double hi);

  // Uniform integer in [0, n). n must be >= 1.
  int uniform_int(int n);

  // Normal deviate via Box-Muller; one deviate per call, no caching, so
  // the draw count per sampled value is fixed.
  double normal(double mean, double sd);

  // Normal deviate restricted to [lo, hi] by rejection. Falls back to
  // clamping the mean after 1000 rejected draws or when sd <= 0.
  double truncated_normal(double mean, double sd, double lo, double hi);

  // Poisson deviate via Knuth's product method. mean <= 0 yields 0.
  int poisson(double mean);

private:
  std::uint64_t state_;
};

// Stateless mix of two words into a well-spread 64-bit value. Used to
// derive child seeds; mix_seed(a, b) is a pure function so any worker can
// compute any replication's seed without coordination.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// FNV-1a over bytes; pins area identifiers to stable 64-bit hashes.
std::uint64_t fnv1a64(std::string_view text);

} // namespace vida

#endif
