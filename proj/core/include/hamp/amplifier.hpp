#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamp/hecke.hpp"
#include "hamp/orbits.hpp"
#include "hamp/primes.hpp"
#include "hamp/splitting.hpp"

/// The amplifier: at each split prime pick tau_p or tau_{p^2} by the size of
/// its eigenvalue, then build tau = (sum z_p h_p)(sum z_p h_p)^* - tau_1(1) delta
/// and measure its eigenvalue, sup norm, spectral defect and orbit intersections.
namespace hamp::amplifier {

/// Threshold constant c0 in |lambda| >= c0 sqrt(#supp h). The minimax of the
/// two normalized eigenvalues tends to sqrt(2) - 1 as p grows, so 2/5 is safe
/// for every prime.
const mpq_class& defaultC0();

class AmplifierError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpectrumModel {
  enum class Kind { Trivial, TemperedRandom, Explicit };

  Kind kind = Kind::Trivial;
  std::uint64_t seed = 0;
  std::map<std::uint64_t, mpq_class> values;

  /// lambda_p = p(p+1), the constant function.
  static SpectrumModel trivial();
  /// lambda_p uniform on [-3p, 3p], a dyadic rational with 32 random bits drawn
  /// from (seed, p) alone.
  static SpectrumModel tempered(std::uint64_t seed);
  static SpectrumModel explicitValues(std::map<std::uint64_t, mpq_class> values);

  /// Throws std::invalid_argument for a prime missing from an explicit model.
  mpq_class lambdaP(Prime p) const;
  std::string name() const;
};

struct LocalChoice {
  std::uint64_t prime = 0;
  int j = 1;             // chosen operator tau_{p^j}
  mpq_class lambdaP;     // eigenvalue of tau_p
  mpq_class lambda;      // eigenvalue of the chosen operator
  hecke::Phase phase = hecke::Phase::Plus;
  int ell = 2;           // support exponent: #supp ~ p^ell

  hecke::LocalHeckeElement element() const;
  mpz_class supportSize() const;
};

/// tau_p when |lambda_p| >= c0 sqrt(p(p+1)), otherwise tau_{p^2}.
LocalChoice pickLocal(Prime p, const mpq_class& lambdaP, const mpq_class& c0 = defaultC0());

/// lambda^2 >= c0^2 #supp, evaluated exactly.
bool meetsGuarantee(const LocalChoice& choice, const mpq_class& c0 = defaultC0());

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AmplifierReport {
  std::uint64_t Q = 0;
  int ell = 0;
  std::vector<std::uint64_t> candidatePrimes;  // split primes in [Q, 2Q]
  std::vector<std::uint64_t> primesUsed;
  mpq_class lambda;  // eigenvalue of tau on the amplified spectrum
  mpz_class tau1AtIdentity;
  mpz_class cTau;
  mpz_class normInf;
  mpz_class intersectionCount;
  std::optional<mpq_class> ratioIntersections;  // normInf * intersections / lambda
  std::optional<mpq_class> ratioPositivity;     // cTau / lambda
  std::optional<double> normalizedLambda;       // lambda log^2 Q / Q^(2+ell)
  std::optional<double> normalizedNormInf;      // normInf / Q^(ell-1)
  std::optional<double> normalizedPositivity;   // ratioPositivity Q^(1+ell/2) / log Q
  std::vector<Verdict> verdicts;
  std::optional<std::string> error;

  bool allPass() const;
};

struct Amplifier {
  std::vector<LocalChoice> choices;
  hecke::GlobalHeckeElement tau1;
  hecke::GlobalHeckeElement tau;
  AmplifierReport report;
};

/// Assembles tau from already chosen local operators and fills every report
/// field. Q only feeds the normalized quantities (0 skips them). A
/// non-positive eigenvalue is recorded in report.error, not thrown.
Amplifier assembleAmplifier(std::vector<LocalChoice> choices, const orbits::OrbitModel& orbit, std::uint64_t Q = 0,
                            const mpq_class& c0 = defaultC0());

/// Picks the split primes of f in [Q, 2Q], keeps the majority support exponent
/// (ties go to ell = 2) and assembles. Requires Q >= 11 and at least two split
/// primes; throws AmplifierError otherwise.
Amplifier buildAmplifier(std::uint64_t Q, const splitting::IntPoly& f, const SpectrumModel& spectrum,
                         const orbits::OrbitModel& orbit, const mpq_class& c0 = defaultC0());

/// Eigenvalues for which every chosen operator acts by 0. Exact when all
/// choices use tau_p; nullopt otherwise (the root of the quadratic is irrational).
std::optional<hecke::Spectra<mpq_class>> exactZeroSystem(std::span<const LocalChoice> choices);
hecke::Spectra<long double> realZeroSystem(std::span<const LocalChoice> choices);

/// Eigenvalue sequences that realize the chosen lambda_p at every prime.
hecke::Spectra<mpq_class> amplifiedSpectra(std::span<const LocalChoice> choices);

struct FloorCheck {
  bool pass = true;
  std::size_t trials = 0;
  mpq_class floor;    // -cTau
  mpq_class minimum;  // smallest spectral value seen

  explicit operator bool() const noexcept { return pass; }
};

/// Evaluates tau on `trials` random eigenvalue systems (lambda_p uniform on
/// [-2p(p+1), 2p(p+1)], dyadic) and checks every value is >= -cTau.
FloorCheck verifySpectralFloor(const hecke::GlobalHeckeElement& tau, const mpz_class& cTau, std::size_t trials,
                               std::uint64_t seed);

/// One report per Q, built independently (in parallel) and returned in order.
std::vector<AmplifierReport> scalingSweep(std::span<const std::uint64_t> Qs, const splitting::IntPoly& f,
                                          const SpectrumModel& spectrum, const orbits::OrbitModel& orbit,
                                          const mpq_class& c0 = defaultC0());

}  // namespace hamp::amplifier
