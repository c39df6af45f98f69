#pragma once

#include <cstdint>
#include <utility>
#include <vector>
#include <random>

namespace fssc {

// Seeded PRNG behind every shuffle in this library. std::mt19937_64 and the
// rejection-sampled bounded draw below are both pinned by the C++ standard
// (unlike std::shuffle / std::uniform_int_distribution), so a given seed
// produces the same split on every platform and toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Unbiased uniform draw from [0, bound); bound must be >= 1.
  std::uint64_t next_below(std::uint64_t bound);

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    if (items.size() < 2) return;
    for (std::size_t i = items.size() - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(next_below(i + 1));
      std::swap(items[i], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fssc
