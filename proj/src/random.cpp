#include "paev/random.hpp"

namespace paev {

std::uint64_t mix64(std::uint64_t seed_base, std::uint64_t index) noexcept {
  std::uint64_t z = seed_base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace paev
