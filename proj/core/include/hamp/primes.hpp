#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace hamp {

/// Deterministic Miller-Rabin for the full 64-bit range.
bool isPrime(std::uint64_t n);

/// All primes in [lo, hi], ascending (segmented sieve).
std::vector<std::uint64_t> primesInRange(std::uint64_t lo, std::uint64_t hi);

/// A rational prime. Construction rejects composites with std::invalid_argument.
class Prime {
 public:
  explicit Prime(std::uint64_t p);

  std::uint64_t value() const noexcept { return value_; }
  operator std::uint64_t() const noexcept { return value_; }

  friend bool operator==(Prime, Prime) = default;
  friend auto operator<=>(Prime, Prime) = default;

 private:
  std::uint64_t value_;
};

}  // namespace hamp
