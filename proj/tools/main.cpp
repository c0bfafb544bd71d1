#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>

#include "cli/commands.hpp"

namespace {

using namespace hamp::cli;

enum Exit { kOk = 0, kVerdictFailed = 1, kUsage = 2, kInternal = 3 };

int emit(const Report& report, const std::string& out, std::chrono::steady_clock::time_point start) {
  const std::string text = report.dump();
  if (out.empty()) {
    std::cout << text;
  } else {
    writeAtomically(out, text);
  }
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << report.checks().size() << " checks, wall time " << elapsed << " s\n";
  if (auto failed = report.firstFailure()) {
    std::cerr << "FAILED: " << failed->name << (failed->detail.empty() ? "" : " (" + failed->detail + ")") << "\n";
    return kVerdictFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hecke amplifier toolkit: exact verification of tree convolution, amplifier bounds, "
               "orbit counts, denominators and prime splitting"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string out;
  std::string primes = "2,3,5,7,11";
  std::string orbitPrimes = "2,3,5";
  int maxRadius = 8;
  int orbitRadius = 6;
  std::string poly = "x^2+1";
  std::uint64_t limit = 1000000;
  std::optional<std::string> expected;
  std::string tolerance = "1/50";
  std::string Qs = "50,100,200,400";
  std::string spectrum = "trivial";
  std::string orbit = "sl2";
  std::uint64_t index = 1;
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  std::string c0 = "2/5";

  auto* hecke = app.add_subcommand("verify-hecke", "Check the Hecke identities and algebra laws by tree counting");
  hecke->add_option("--primes", primes, "Comma-separated primes (<= 13)")->capture_default_str();
  hecke->add_option("--max-radius", maxRadius, "Largest even radius (<= 8)")->capture_default_str();

  auto* split = app.add_subcommand("split-density", "Density of primes splitting completely for a monic polynomial");
  split->add_option("--poly", poly, "Monic integer polynomial in x")->capture_default_str();
  split->add_option("--limit", limit, "Count primes up to this bound (>= 100)")->capture_default_str();
  split->add_option("--expected", expected, "Expected density, e.g. 1/6");
  split->add_option("--tolerance", tolerance, "Allowed deviation from --expected")->capture_default_str();

  auto* denom = app.add_subcommand("denom-check", "Denominator laws and the commutator certifier over Q(i)");
  denom->add_option("--samples", samples, "Seeded cases per law")->capture_default_str();
  denom->add_option("--seed", seed, "Random seed")->capture_default_str();

  auto* orbitCmd = app.add_subcommand("orbit-check", "One-sided intersection counts: closed form against enumeration");
  orbitCmd->add_option("--orbit", orbit, "sl2 or torus")->check(CLI::IsMember({"sl2", "torus"}))->capture_default_str();
  orbitCmd->add_option("--index", index, "Finite-index multiplier C")->capture_default_str();
  orbitCmd->add_option("--primes", orbitPrimes, "Comma-separated primes")->capture_default_str();
  orbitCmd->add_option("--max-radius", orbitRadius, "Largest even support radius 2j (<= 8)")->capture_default_str();

  auto* amp = app.add_subcommand("amplifier", "Build global amplifiers over a Q sweep and check their bounds");
  amp->add_option("--Q", Qs, "Comma-separated ascending Q values (>= 11)")->capture_default_str();
  amp->add_option("--poly", poly, "Monic integer polynomial selecting split primes")->capture_default_str();
  amp->add_option("--spectrum", spectrum, "trivial or tempered")->check(CLI::IsMember({"trivial", "tempered"}))->capture_default_str();
  amp->add_option("--seed", seed, "Seed for tempered eigenvalues and floor trials")->capture_default_str();
  amp->add_option("--orbit", orbit, "sl2 or torus")->check(CLI::IsMember({"sl2", "torus"}))->capture_default_str();
  amp->add_option("--index", index, "Finite-index multiplier C")->capture_default_str();
  amp->add_option("--samples", samples, "Random eigenvalue systems per spectral floor check (0 skips)")->capture_default_str();
  amp->add_option("--c0", c0, "Threshold constant of the tau_p / tau_p^2 choice")->capture_default_str();

  for (auto* sub : {hecke, split, denom, orbitCmd, amp}) {
    sub->add_option("--out", out, "Write the report here instead of stdout");
  }

  CLI11_PARSE(app, argc, argv);
  const auto start = std::chrono::steady_clock::now();

  try {
    if (hecke->parsed()) {
      return emit(verifyHecke({parseList(primes), maxRadius}), out, start);
    }
    if (split->parsed()) {
      SplitDensityConfig config{poly, limit, std::nullopt, parseRational(tolerance)};
      if (expected) config.expected = parseRational(*expected);
      return emit(splitDensity(config), out, start);
    }
    if (denom->parsed()) {
      return emit(denomCheck({samples, seed}), out, start);
    }
    if (orbitCmd->parsed()) {
      if (orbitRadius % 2 != 0) throw UsageError("max-radius must be even");
      return emit(orbitCheck({parseOrbit(orbit), index, parseList(orbitPrimes), orbitRadius / 2}), out, start);
    }
    if (amp->parsed()) {
      AmplifierConfig config;
      config.Qs = parseList(Qs);
      config.poly = poly;
      config.spectrum = spectrum;
      config.seed = seed;
      config.orbit = parseOrbit(orbit);
      config.index = index;
      config.c0 = parseRational(c0);
      config.floorTrials = samples;
      return emit(amplifierSweep(config), out, start);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
