#include "cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <future>
#include <sstream>

#include "cli/numbers_suite.hpp"
#include "hamp/hecke.hpp"
#include "hamp/primes.hpp"
#include "hamp/splitting.hpp"
#include "hamp/tree.hpp"

namespace hamp::cli {
namespace {

Json numberList(const std::vector<std::uint64_t>& values) {
  Json out = Json::array();
  for (auto v : values) out.push_back(v);
  return out;
}

Prime requirePrime(std::uint64_t p) {
  if (!isPrime(p)) throw UsageError(std::to_string(p) + " is not prime");
  return Prime(p);
}

std::string prefix(std::uint64_t p) { return "p=" + std::to_string(p) + "/"; }

mpz_class pow(std::uint64_t p, unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), e);
  return out;
}

Json localJson(const hecke::LocalHeckeElement& f) {
  Json out = Json::object();
  for (const auto& [r, c] : f.coeffs()) out[std::to_string(r)] = c.get_str();
  return out;
}

std::uint64_t rootCount(const splitting::IntPoly& f, std::uint64_t p) {
  std::uint64_t roots = 0;
  for (std::uint64_t x = 0; x < p; ++x) roots += f.evaluateMod(x, p) == 0 ? 1 : 0;
  return roots;
}

splitting::IntPoly parsePoly(const std::string& text) {
  try {
    auto f = splitting::IntPoly::parse(text);
    if (!f.isMonic()) throw UsageError("polynomial must be monic: " + text);
    return f;
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

std::vector<std::uint64_t> parseList(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw UsageError("not a non-negative integer: '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

mpq_class parseRational(const std::string& text) {
  try {
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
      mpq_class q(text, 10);
      if (q.get_den() == 0) throw UsageError("zero denominator");
      q.canonicalize();
      return q;
    }
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
    mpq_class q(mpz_class(digits, 10), den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw UsageError("not a rational number: '" + text + "'");
  }
}

orbits::OrbitKind parseOrbit(const std::string& text) {
  if (text == "sl2") return orbits::OrbitKind::SL2;
  if (text == "torus") return orbits::OrbitKind::Multiplicative;
  throw UsageError("orbit must be sl2 or torus, got '" + text + "'");
}

Report verifyHecke(const VerifyHeckeConfig& config) {
  if (config.primes.empty()) throw UsageError("no primes given");
  if (config.maxRadius < 2 || config.maxRadius > kMaxHeckeRadius || config.maxRadius % 2 != 0) {
    throw UsageError("max-radius must be even and in [2, " + std::to_string(kMaxHeckeRadius) + "]");
  }
  for (auto p : config.primes) {
    requirePrime(p);
    if (p > kMaxHeckePrime) throw UsageError("prime " + std::to_string(p) + " exceeds the cap " + std::to_string(kMaxHeckePrime));
  }

  Report report("verify-hecke");
  report.config() = Json{{"primes", numberList(config.primes)}, {"maxRadius", config.maxRadius}};
  Json perPrime = Json::object();

  for (auto value : config.primes) {
    const Prime p(value);
    const std::string tag = prefix(value);
    const mpz_class q(static_cast<unsigned long>(value));
    Json entry = Json::object();

    const auto tp = hecke::basic(p, 1);
    const auto square = hecke::convolve(tp, tp);
    const hecke::LocalHeckeElement expected2(p, {{0, q * (q + 1)}, {2, q - 1}, {4, 1}});
    entry["tauP*tauP"] = localJson(square);
    report.check(tag + "identity-deg2", square == expected2, "p(p+1) + (p-1) tau_p + tau_p^2");

    if (config.maxRadius >= 4) {
      const auto tp2 = hecke::basic(p, 2);
      const auto square2 = hecke::convolve(tp2, tp2);
      const hecke::LocalHeckeElement expected4(
          p, {{0, pow(value, 3) * (q + 1)}, {2, q * q * (q - 1)}, {4, q * (q - 1)}, {6, q - 1}, {8, 1}});
      entry["tauP2*tauP2"] = localJson(square2);
      report.check(tag + "identity-deg4", square2 == expected4,
                   "p^3(p+1) + p^2(p-1) tau_p + p(p-1) tau_p^2 + (p-1) tau_p^3 + tau_p^4");

      bool commutes = true, massOk = true;
      std::size_t pairs = 0;
      for (int a = 2; a <= config.maxRadius; a += 2) {
        for (int b = a; b <= config.maxRadius; b += 2) {
          const auto f = hecke::basic(p, a / 2), g = hecke::basic(p, b / 2);
          const auto fg = hecke::convolve(f, g);
          commutes = commutes && fg == hecke::convolve(g, f);
          massOk = massOk && fg.totalMass() == f.totalMass() * g.totalMass();
          ++pairs;
        }
      }
      report.check(tag + "commutativity", commutes, std::to_string(pairs) + " basic pairs");
      report.check(tag + "mass-multiplicativity", massOk, std::to_string(pairs) + " basic pairs");

      const auto left = hecke::convolve(square, tp2);
      const auto right = hecke::convolve(tp, hecke::convolve(tp, tp2));
      report.check(tag + "associativity", left == right, "(tau_p tau_p) tau_p^2 = tau_p (tau_p tau_p^2)");

      bool consistent = true;
      for (const mpq_class& seed : {mpq_class(1), mpq_class(0), mpq_class(-3, 2), mpq_class(q * (q + 1))}) {
        const auto s = hecke::eigenvalueSequence<mpq_class>(p, seed, 4);
        const mpq_class lhs = s.at(2) * s.at(2);
        consistent = consistent && lhs == hecke::spectralValue(square2, s);
      }
      report.check(tag + "eigenvalue-consistency", consistent, "lambda_p^2^2 = spectral value of tau_p^2 * tau_p^2");
    }

    // the closed-form path count against a walk over the sphere
    const int walk = std::min(config.maxRadius, 4);
    bool agrees = true;
    for (int a = 0; a <= walk; a += 2) {
      for (int b = 0; b <= walk; b += 2) {
        for (int r = 0; r <= std::min(a + b, walk); r += 2) {
          const auto y = tree::canonicalVertex(p, r);
          agrees = agrees && tree::convolutionCount(p, a, b, r) == tree::countByEnumeration(y, a, b);
        }
      }
    }
    report.check(tag + "path-count-enumeration", agrees, "radii <= " + std::to_string(walk));
    perPrime[std::to_string(value)] = entry;
  }
  report.results()["products"] = perPrime;
  return report;
}

Report splitDensity(const SplitDensityConfig& config) {
  const auto f = parsePoly(config.poly);
  if (config.limit < 100) throw UsageError("limit must be at least 100");
  if (config.tolerance < 0) throw UsageError("tolerance must be non-negative");

  Report report("split-density");
  report.config() = Json{{"poly", f.toString()}, {"limit", config.limit}};
  if (config.expected) {
    report.config()["expected"] = exact(*config.expected);
    report.config()["tolerance"] = exact(config.tolerance);
  }

  const auto result = splitting::empiricalDensity(f, config.limit);
  report.results() = Json{{"splitCount", result.splitCount},
                          {"primeCount", result.primeCount},
                          {"density", exact(result.density)},
                          {"densityDecimal", decimal(result.density, 6)}};

  std::uint64_t disagreements = 0, checked = 0;
  for (auto p : primesInRange(2, 500)) {
    const bool byRoots = rootCount(f, p) == static_cast<std::uint64_t>(f.degree());
    disagreements += splitting::splitsCompletely(f, p).splits != byRoots ? 1 : 0;
    ++checked;
  }
  report.check("root-count-agreement", disagreements == 0,
               std::to_string(checked) + " primes <= 500, " + std::to_string(disagreements) + " disagreements");
  if (config.expected) {
    const mpq_class gap = abs(result.density - *config.expected);
    report.check("density-within-tolerance", gap <= config.tolerance, "|density - expected| = " + decimal(gap, 6));
  }
  return report;
}

Report denomCheck(const DenomCheckConfig& config) {
  if (config.samples == 0) throw UsageError("samples must be positive");
  Report report("denom-check");
  report.config() = Json{{"samples", config.samples}, {"seed", config.seed}, {"field", "Q(i)"}};

  Json suites = Json::array();
  auto add = [&](const suites::SuiteOutcome& s) {
    suites.push_back(Json{{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}});
    report.check(s.name, s.pass(),
                 s.failures == 0 ? std::to_string(s.cases) + " cases" : "first failure: " + s.firstFailure);
  };
  for (const auto& s : suites::denominatorSuites(config.samples, config.seed)) add(s);
  for (const auto& s : suites::commutatorSuites(config.samples, config.seed ^ 0x9e3779b97f4a7c15ULL)) add(s);
  report.results()["suites"] = suites;
  return report;
}

Report orbitCheck(const OrbitCheckConfig& config) {
  if (config.primes.empty()) throw UsageError("no primes given");
  if (config.maxJ < 1 || config.maxJ > kMaxOrbitJ) throw UsageError("max-radius/2 must be in [1, " + std::to_string(kMaxOrbitJ) + "]");
  for (auto p : config.primes) requirePrime(p);
  if (config.index < 1) throw UsageError("index must be at least 1");

  const orbits::OrbitModel model(config.kind, config.index);
  Report report("orbit-check");
  report.config() = Json{{"orbit", orbits::toString(config.kind)},
                         {"index", config.index},
                         {"primes", numberList(config.primes)},
                         {"maxJ", config.maxJ}};

  Json rows = Json::array();
  for (auto value : config.primes) {
    const Prime p(value);
    const std::uint64_t expected = config.kind == orbits::OrbitKind::SL2 ? 0 : 2 * config.index;
    for (int j = 1; j <= config.maxJ; ++j) {
      const auto closed = orbits::orbitIntersectOneSided(model, p, j);
      std::uint64_t brute = 0;
      try {
        brute = orbits::bruteForceIntersect(model, p, j, 2 * j);
      } catch (const std::length_error& e) {
        throw UsageError("ball too large to enumerate at p=" + std::to_string(value) + ", j=" + std::to_string(j));
      }
      rows.push_back(Json{{"p", value}, {"j", j}, {"closedForm", closed}, {"bruteForce", brute}});
      report.check(prefix(value) + "j=" + std::to_string(j), closed == brute && closed == expected,
                   "closed form " + std::to_string(closed) + ", enumeration " + std::to_string(brute));
    }
  }
  report.results()["intersections"] = rows;
  return report;
}

Report amplifierSweep(const AmplifierConfig& config) {
  if (config.Qs.empty()) throw UsageError("no Q values given");
  if (!std::is_sorted(config.Qs.begin(), config.Qs.end()) ||
      std::adjacent_find(config.Qs.begin(), config.Qs.end()) != config.Qs.end()) {
    throw UsageError("Q values must be strictly ascending");
  }
  if (config.Qs.front() < 11) throw UsageError("Q must be at least 11");
  if (config.index < 1) throw UsageError("index must be at least 1");
  if (config.c0 <= 0) throw UsageError("c0 must be positive");
  const auto f = parsePoly(config.poly);

  amplifier::SpectrumModel spectrum;
  if (config.spectrum == "trivial") {
    spectrum = amplifier::SpectrumModel::trivial();
  } else if (config.spectrum == "tempered") {
    spectrum = amplifier::SpectrumModel::tempered(config.seed);
  } else {
    throw UsageError("spectrum must be trivial or tempered, got '" + config.spectrum + "'");
  }
  const orbits::OrbitModel orbit(config.orbit, config.index);

  Report report("amplifier");
  report.config() = Json{{"Q", numberList(config.Qs)},
                         {"poly", f.toString()},
                         {"spectrum", spectrum.name()},
                         {"seed", config.seed},
                         {"orbit", orbits::toString(config.orbit)},
                         {"index", config.index},
                         {"c0", exact(config.c0)},
                         {"floorTrials", config.floorTrials}};
  if (spectrum.kind == amplifier::SpectrumModel::Kind::TemperedRandom) {
    report.config()["temperedRange"] = "lambda_p uniform on [-3p, 3p], 32-bit dyadic; a modeling choice";
  }

  std::vector<amplifier::Amplifier> built;
  try {
    std::vector<std::future<amplifier::Amplifier>> pending;
    for (auto Q : config.Qs) {
      pending.push_back(std::async(std::launch::async, [&, Q] { return amplifier::buildAmplifier(Q, f, spectrum, orbit, config.c0); }));
    }
    for (auto& p : pending) built.push_back(p.get());
  } catch (const amplifier::AmplifierError& e) {
    throw UsageError(e.what());
  }

  Json sweep = Json::array();
  for (std::size_t i = 0; i < built.size(); ++i) {
    const auto& amp = built[i];
    const auto& r = amp.report;
    const std::string tag = "Q=" + std::to_string(r.Q) + "/";
    Json choices = Json::array();
    for (const auto& c : amp.choices) {
      choices.push_back(Json{{"p", c.prime},
                             {"j", c.j},
                             {"lambdaP", exact(c.lambdaP)},
                             {"lambda", exact(c.lambda)},
                             {"phase", hecke::sign(c.phase)}});
    }
    Json row{{"Q", r.Q},
             {"ell", r.ell},
             {"candidatePrimes", numberList(r.candidatePrimes)},
             {"primesUsed", numberList(r.primesUsed)},
             {"choices", choices},
             {"Lambda", exact(r.lambda)},
             {"LambdaDecimal", decimal(r.lambda.get_d())},
             {"tau1AtIdentity", r.tau1AtIdentity.get_str()},
             {"cTau", r.cTau.get_str()},
             {"normInf", r.normInf.get_str()},
             {"intersectionCount", r.intersectionCount.get_str()}};
    if (r.ratioIntersections) row["ratioIntersections"] = decimal(*r.ratioIntersections, 15);
    if (r.ratioPositivity) row["ratioPositivity"] = decimal(*r.ratioPositivity, 15);
    if (r.normalizedLambda) row["normalizedLambda"] = decimal(*r.normalizedLambda);
    if (r.normalizedNormInf) row["normalizedNormInf"] = decimal(*r.normalizedNormInf);
    if (r.normalizedPositivity) row["normalizedPositivity"] = decimal(*r.normalizedPositivity);
    if (r.error) row["error"] = *r.error;
    for (const auto& v : r.verdicts) report.check(tag + v.name, v.pass, v.detail);

    if (config.floorTrials > 0) {
      const auto floor = amplifier::verifySpectralFloor(amp.tau, r.cTau, config.floorTrials, config.seed + i);
      row["spectralFloor"] = Json{{"trials", floor.trials}, {"floor", exact(floor.floor)}, {"minimum", decimal(floor.minimum.get_d())}};
      report.check(tag + "spectral-floor", floor.pass, std::to_string(floor.trials) + " random eigenvalue systems");
    }
    sweep.push_back(row);
  }
  report.results()["sweep"] = sweep;

  if (built.size() >= 2) {
    bool positivityDecreasing = true, intersectionsTrend = true, complete = true;
    double lamLo = 0, lamHi = 0, normLo = 0, normHi = 0;
    for (std::size_t i = 0; i < built.size(); ++i) {
      const auto& r = built[i].report;
      if (!r.ratioPositivity || !r.ratioIntersections || !r.normalizedLambda || !r.normalizedNormInf) {
        complete = false;
        continue;
      }
      lamLo = i == 0 ? *r.normalizedLambda : std::min(lamLo, *r.normalizedLambda);
      lamHi = i == 0 ? *r.normalizedLambda : std::max(lamHi, *r.normalizedLambda);
      normLo = i == 0 ? *r.normalizedNormInf : std::min(normLo, *r.normalizedNormInf);
      normHi = i == 0 ? *r.normalizedNormInf : std::max(normHi, *r.normalizedNormInf);
      if (i == 0) continue;
      const auto& prev = built[i - 1].report;
      if (!prev.ratioPositivity || !prev.ratioIntersections) continue;
      positivityDecreasing = positivityDecreasing && *r.ratioPositivity < *prev.ratioPositivity;
      intersectionsTrend = intersectionsTrend && (config.orbit == orbits::OrbitKind::SL2
                                                      ? *r.ratioIntersections == 0
                                                      : *r.ratioIntersections < *prev.ratioIntersections);
    }
    const auto& first = built.front().report;
    report.check("sweep/positivity-ratio-decreasing", complete && positivityDecreasing, "cTau/Lambda strictly decreasing in Q");
    report.check("sweep/positivity-ratio-at-most-one", complete && first.ratioPositivity && *first.ratioPositivity <= 1,
                 "cTau/Lambda <= 1 at the smallest Q");
    report.check(config.orbit == orbits::OrbitKind::SL2 ? "sweep/intersection-ratio-zero" : "sweep/intersection-ratio-decreasing",
                 complete && intersectionsTrend, "normInf * intersections / Lambda");
    report.check("sweep/normalized-lambda-band", complete && lamLo > 0 && lamHi <= 4 * lamLo,
                 "Lambda log^2 Q / Q^(2+ell) in [" + decimal(lamLo, 4) + ", " + decimal(lamHi, 4) + "]");
    report.check("sweep/normalized-norminf-band", complete && normLo > 0 && normHi <= 4 * normLo,
                 "normInf / Q^(ell-1) in [" + decimal(normLo, 4) + ", " + decimal(normHi, 4) + "]");
  }
  return report;
}

}  // namespace hamp::cli
