#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli/report.hpp"
#include "hamp/amplifier.hpp"
#include "hamp/orbits.hpp"

namespace hamp::cli {

/// Invalid command parameters; reported on stderr with a usage exit code.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kMaxHeckePrime = 13;
inline constexpr int kMaxHeckeRadius = 8;
inline constexpr int kMaxOrbitJ = 4;

struct VerifyHeckeConfig {
  std::vector<std::uint64_t> primes{2, 3, 5, 7, 11};
  int maxRadius = 8;
};

struct SplitDensityConfig {
  std::string poly = "x^2+1";
  std::uint64_t limit = 1000000;
  std::optional<mpq_class> expected;
  mpq_class tolerance{1, 50};
};

struct DenomCheckConfig {
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
};

struct OrbitCheckConfig {
  orbits::OrbitKind kind = orbits::OrbitKind::SL2;
  std::uint64_t index = 1;
  std::vector<std::uint64_t> primes{2, 3, 5};
  int maxJ = 3;
};

struct AmplifierConfig {
  std::vector<std::uint64_t> Qs{50, 100, 200, 400};
  std::string poly = "x^2+1";
  std::string spectrum = "trivial";
  std::uint64_t seed = 42;
  orbits::OrbitKind orbit = orbits::OrbitKind::SL2;
  std::uint64_t index = 1;
  mpq_class c0 = amplifier::defaultC0();
  std::size_t floorTrials = 1000;
};

/// Each command validates its config (UsageError), runs its suite and returns
/// a report whose verdicts decide the exit status.
Report verifyHecke(const VerifyHeckeConfig& config);
Report splitDensity(const SplitDensityConfig& config);
Report denomCheck(const DenomCheckConfig& config);
Report orbitCheck(const OrbitCheckConfig& config);
Report amplifierSweep(const AmplifierConfig& config);

/// "2,3,5" -> {2, 3, 5}. Throws UsageError.
std::vector<std::uint64_t> parseList(const std::string& text);
/// "1/6", "0.5" or "3" as an exact rational. Throws UsageError.
mpq_class parseRational(const std::string& text);
orbits::OrbitKind parseOrbit(const std::string& text);

}  // namespace hamp::cli
