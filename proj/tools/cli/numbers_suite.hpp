#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hamp/numbers.hpp"

/// Seeded property sweeps over Q(i): denominator laws and the commutator
/// certifier. Shared by the denom-check command and the test suites.
namespace hamp::cli::suites {

struct SuiteOutcome {
  explicit SuiteOutcome(std::string suiteName) : name(std::move(suiteName)) {}

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string firstFailure;

  bool pass() const noexcept { return cases > 0 && failures == 0; }
  void record(bool ok, const std::string& witness);
};

/// Deterministic generator of Gaussian numbers and matrices with small
/// numerators and denominators drawn from a fixed pool of Gaussian integers.
class GaussSampler {
 public:
  explicit GaussSampler(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  numbers::GaussInt integer(std::int64_t bound);
  numbers::GaussInt unit();
  numbers::GaussRat rational();
  numbers::GaussRat nonzeroRational();
  /// Rational with zero imaginary part.
  numbers::GaussRat realRational();
  numbers::Mat2 matrix();
  /// Gaussian-integer matrix with unit determinant.
  numbers::Mat2 unimodular();
  /// Determinant exactly 1, rational entries.
  numbers::Mat2 special();

 private:
  std::mt19937_64 rng_;
};

/// Submultiplicativity (elements over Q and Q(i), matrices), unimodular
/// invariance, SL2 inverse equality, the product formula and the
/// archimedean lower bound, each on `samples` seeded cases.
std::vector<SuiteOutcome> denominatorSuites(std::size_t samples, std::uint64_t seed);

/// On seeded bounded-denominator pairs with archBound set to the true largest
/// squared entry modulus of the commutator: no nonzero commutator passes the
/// D * archBound < 1 gate, and pairs built to commute are certified.
std::vector<SuiteOutcome> commutatorSuites(std::size_t pairs, std::uint64_t seed);

}  // namespace hamp::cli::suites
