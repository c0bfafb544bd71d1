#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

/// Complete splitting of rational primes in the field cut out by a monic
/// integer polynomial, and empirical densities of the split primes.
namespace hamp::splitting {

class IntPoly {
 public:
  /// Coefficients from the constant term upward. Trailing zeros are trimmed;
  /// the zero polynomial and constants are rejected.
  explicit IntPoly(std::vector<mpz_class> coeffs);

  /// Parses signed integer-coefficient monomials in x joined by + and -, for
  /// example "x^3-2", "2*x^2 - 3x + 1". Throws std::invalid_argument.
  static IntPoly parse(std::string_view text);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
  bool isMonic() const { return coeffs_.back() == 1; }

  /// Coefficients reduced into [0, p).
  std::vector<std::uint64_t> reduce(std::uint64_t p) const;
  std::uint64_t evaluateMod(std::uint64_t x, std::uint64_t p) const;

  /// Canonical ASCII form, e.g. "x^3 - 2".
  std::string toString() const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  std::vector<mpz_class> coeffs_;
};

struct SplitResult {
  bool splits = false;
  /// p divides disc(f): f mod p has a repeated factor. Such primes never split.
  bool badPrime = false;

  explicit operator bool() const noexcept { return splits; }
};

/// True iff f is a product of deg f distinct linear factors mod p, decided by
/// gcd(x^p - x, f) over F_p. Throws std::invalid_argument for non-monic f or
/// composite p.
SplitResult splitsCompletely(const IntPoly& f, std::uint64_t p);

/// Ascending split primes in [lo, hi]; the scan is chunked across threads.
/// Throws std::invalid_argument when lo > hi.
std::vector<std::uint64_t> splitPrimesIn(const IntPoly& f, std::uint64_t lo, std::uint64_t hi);

struct DensityResult {
  std::uint64_t splitCount = 0;
  std::uint64_t primeCount = 0;
  mpq_class density;
};

/// (#split primes <= limit) / (#primes <= limit); limit >= 100.
DensityResult empiricalDensity(const IntPoly& f, std::uint64_t limit);

}  // namespace hamp::splitting
