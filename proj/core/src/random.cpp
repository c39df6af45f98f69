#include "fssc/random.hpp"

#include <limits>

#include "fssc/errors.hpp"

namespace fssc {

std::uint64_t Rng::next_below(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("Rng::next_below: bound must be >= 1");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  // Largest r for which r % bound is still unbiased.
  const std::uint64_t overhang = (kMax % bound + 1) % bound;
  const std::uint64_t accept_max = kMax - overhang;
  std::uint64_t r = engine_();
  while (r > accept_max) r = engine_();
  return r % bound;
}

}  // namespace fssc
