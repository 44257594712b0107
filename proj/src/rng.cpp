#include "lifeaup/rng.hpp"

#include "lifeaup/errors.hpp"

namespace lifeaup {

std::uint64_t RngStream::uniform_int(std::uint64_t n) {
  if (n == 0) throw ContractError("uniform_int: empty range");
  // Lemire's multiply-shift with rejection of the biased low region.
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace lifeaup
