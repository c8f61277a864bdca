// SPDX-License-Identifier: Apache-2.0
#include "vida/rng.hpp"

#include <algorithm>
#include <cmath>

namespace vida {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

} // namespace

std::uint64_t RandomStream::next_u64() {
  state_ += kGamma;
  return splitmix_finalize(state_);
}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_range(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

int RandomStream::uniform_int(int n) {
  int v = static_cast<int>(uniform01() * n);
  return std::min(v, n - 1);
}

double RandomStream::normal(double mean, double sd) {
  // u in (0, 1] keeps the log finite.
  double u = 1.0 - uniform01();
  double v = uniform01();
  double r = std::sqrt(-2.0 * std::log(u));
  return mean + sd * r * std::cos(2.0 * M_PI * v);
}

double RandomStream::truncated_normal(double mean, double sd, double lo,
                                      double hi) {
  if (sd <= 0.0) return std::clamp(mean, lo, hi);
  for (int i = 0; i < 1000; ++i) {
    double x = normal(mean, sd);
    if (x >= lo && x <= hi) return x;
  }
  return std::clamp(mean, lo, hi);
}

int RandomStream::poisson(double mean) {
  if (mean <= 0.0) return 0;
  double limit = std::exp(-mean);
  double product = uniform01();
  int k = 0;
  while (product > limit) {
    product *= uniform01();
    ++k;
  }
  return k;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix_finalize(a + kGamma * (b + 1));
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

} // namespace vida
