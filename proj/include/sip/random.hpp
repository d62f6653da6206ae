#pragma once

#include <cstdint>
#include <random>

#include "sip/clopen.hpp"
#include "sip/ordinal.hpp"

namespace sip {

/// Seeded generator used by every randomized campaign; all draws go
/// through this so a seed fully determines a run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Random ordinal with exponents < exp_bound, coefficients in [1, max_coef]
/// and at most max_terms terms (possibly zero when allow_zero).
Ordinal random_ordinal(Rng& rng, unsigned exp_bound, unsigned max_coef, unsigned max_terms,
                       bool allow_zero = true);

/// Uniform-ish ordinal in [0, bound) drawn from the CNF shapes below bound.
Ordinal random_below(Rng& rng, const Ordinal& bound, unsigned max_coef = 6);

/// Random clopen subset of [1, delta] with at most max_intervals intervals.
ClopenSet random_clopen(Rng& rng, const Ordinal& delta, unsigned max_intervals);

}  // namespace sip
