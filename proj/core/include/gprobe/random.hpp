#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace gprobe {

// Random streams are implemented here rather than with <random> distributions,
// whose output is implementation-defined; artifacts must be byte-stable across
// standard libraries.

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Expands a root seed into an independent stage seed identified by a label.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label) noexcept;

/// Stateless draw: a uniform double in [0,1) that depends only on
/// (seed, counter). Lets callers index randomness by position.
double counter_uniform(std::uint64_t seed, std::uint64_t counter) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  /// Uniform in [0,1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept;
  /// Standard normal via Box-Muller.
  double normal() noexcept;

  template <class T>
  void shuffle(std::vector<T>& items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace gprobe
