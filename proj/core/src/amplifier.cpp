#include "hamp/amplifier.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include "hamp/tree.hpp"

namespace hamp::amplifier {
namespace {

mpz_class toMpz(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

// lo + (hi - lo) * u / 2^32 with u the top 32 bits of one draw
mpq_class dyadicUniform(std::mt19937_64& rng, const mpq_class& lo, const mpq_class& hi) {
  const std::uint64_t u = rng() >> 32;
  mpq_class t(toMpz(u), mpz_class(1) << 32);
  t.canonicalize();
  mpq_class out = lo + (hi - lo) * t;
  out.canonicalize();
  return out;
}

double log(std::uint64_t q) { return std::log(static_cast<double>(q)); }

Verdict verdict(std::string name, bool pass, std::string detail = {}) {
  return Verdict{std::move(name), pass, std::move(detail)};
}

}  // namespace

const mpq_class& defaultC0() {
  static const mpq_class c0(2, 5);
  return c0;
}

SpectrumModel SpectrumModel::trivial() { return SpectrumModel{}; }

SpectrumModel SpectrumModel::tempered(std::uint64_t seed) {
  SpectrumModel out;
  out.kind = Kind::TemperedRandom;
  out.seed = seed;
  return out;
}

SpectrumModel SpectrumModel::explicitValues(std::map<std::uint64_t, mpq_class> values) {
  SpectrumModel out;
  out.kind = Kind::Explicit;
  out.values = std::move(values);
  return out;
}

mpq_class SpectrumModel::lambdaP(Prime p) const {
  const mpz_class q = toMpz(p.value());
  switch (kind) {
    case Kind::Trivial: return mpq_class(q * (q + 1));
    case Kind::TemperedRandom: {
      std::seed_seq sequence{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                             static_cast<std::uint32_t>(p.value()), static_cast<std::uint32_t>(p.value() >> 32)};
      std::mt19937_64 rng(sequence);
      return dyadicUniform(rng, mpq_class(-3 * q), mpq_class(3 * q));
    }
    case Kind::Explicit: {
      auto it = values.find(p.value());
      if (it == values.end()) throw std::invalid_argument("no explicit eigenvalue for p = " + q.get_str());
      return it->second;
    }
  }
  return 0;
}

std::string SpectrumModel::name() const {
  switch (kind) {
    case Kind::Trivial: return "trivial";
    case Kind::TemperedRandom: return "tempered";
    case Kind::Explicit: return "explicit";
  }
  return "?";
}

hecke::LocalHeckeElement LocalChoice::element() const { return hecke::basic(Prime(prime), j); }

mpz_class LocalChoice::supportSize() const { return tree::sphereSize(Prime(prime), 2 * j); }

LocalChoice pickLocal(Prime p, const mpq_class& lambdaP, const mpq_class& c0) {
  const auto sequence = hecke::eigenvalueSequence<mpq_class>(p, lambdaP, 2);
  const mpz_class s1 = tree::sphereSize(p, 2);

  LocalChoice out;
  out.prime = p.value();
  out.lambdaP = lambdaP;
  // |lambda_p| >= c0 sqrt(s1)  <=>  lambda_p^2 >= c0^2 s1
  if (lambdaP * lambdaP >= c0 * c0 * s1) {
    out.j = 1;
    out.lambda = lambdaP;
  } else {
    out.j = 2;
    out.lambda = sequence.at(2);
  }
  out.ell = 2 * out.j;
  out.phase = out.lambda < 0 ? hecke::Phase::Minus : hecke::Phase::Plus;
  return out;
}

bool meetsGuarantee(const LocalChoice& choice, const mpq_class& c0) {
  return choice.lambda * choice.lambda >= c0 * c0 * choice.supportSize();
}

bool AmplifierReport::allPass() const {
  return !error && std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

hecke::Spectra<mpq_class> amplifiedSpectra(std::span<const LocalChoice> choices) {
  hecke::Spectra<mpq_class> out;
  for (const auto& c : choices) {
    out.emplace(c.prime, hecke::eigenvalueSequence<mpq_class>(Prime(c.prime), c.lambdaP, 2 * c.j));
  }
  return out;
}

std::optional<hecke::Spectra<mpq_class>> exactZeroSystem(std::span<const LocalChoice> choices) {
  hecke::Spectra<mpq_class> out;
  for (const auto& c : choices) {
    if (c.j != 1) return std::nullopt;
    out.emplace(c.prime, hecke::eigenvalueSequence<mpq_class>(Prime(c.prime), mpq_class(0), 2));
  }
  return out;
}

hecke::Spectra<long double> realZeroSystem(std::span<const LocalChoice> choices) {
  hecke::Spectra<long double> out;
  for (const auto& c : choices) {
    const auto p = static_cast<long double>(c.prime);
    long double lambdaP = 0;
    if (c.j == 2) {
      // lambda_{p^2} = lambda_p^2 - (p-1) lambda_p - p(p+1) = 0
      lambdaP = ((p - 1) + std::sqrt((p - 1) * (p - 1) + 4 * p * (p + 1))) / 2;
    }
    out.emplace(c.prime, hecke::eigenvalueSequence<long double>(Prime(c.prime), lambdaP, 2 * c.j));
  }
  return out;
}

Amplifier assembleAmplifier(std::vector<LocalChoice> choices, const orbits::OrbitModel& orbit, std::uint64_t Q,
                            const mpq_class& c0) {
  if (choices.empty()) throw AmplifierError("cannot assemble an amplifier from no primes");
  std::sort(choices.begin(), choices.end(), [](const LocalChoice& a, const LocalChoice& b) { return a.prime < b.prime; });

  Amplifier out;
  std::vector<hecke::PhasedLocal> parts;
  for (const auto& c : choices) parts.push_back({c.element(), c.phase});
  out.tau1 = hecke::globalAssemble(parts);
  out.tau = hecke::subtractIdentity(out.tau1);
  out.choices = choices;

  AmplifierReport& r = out.report;
  r.Q = Q;
  r.ell = choices.front().ell;
  for (const auto& c : choices) r.primesUsed.push_back(c.prime);
  r.tau1AtIdentity = out.tau1.identityValue();
  // tau_1 is a sum of squares in the Hecke algebra, so c(tau) = tau_1(1)
  r.cTau = r.tau1AtIdentity;
  r.normInf = hecke::normInf(out.tau);
  r.intersectionCount = orbits::countGlobalIntersections(orbit, out.tau);
  r.lambda = hecke::spectralValue(out.tau, amplifiedSpectra(choices));

  mpq_class sumAbs = 0;
  mpz_class supportTotal = 0;
  mpz_class localMax = 0;
  bool guarantee = true;
  for (const auto& c : choices) {
    sumAbs += abs(c.lambda);
    supportTotal += c.supportSize();
    localMax = std::max(localMax, hecke::offOriginMax(hecke::convolve(c.element(), c.element())));
    guarantee = guarantee && meetsGuarantee(c, c0);
  }
  const mpz_class crossBound = choices.size() >= 2 ? mpz_class(2) : mpz_class(0);
  const mpz_class expectedNormInf = std::max(crossBound, localMax);

  r.verdicts.push_back(verdict("pick-guarantee", guarantee, "|lambda| >= c0 sqrt(#supp h_p) at every prime"));
  r.verdicts.push_back(verdict("ctau-is-support-total", r.cTau == supportTotal,
                               "tau_1(1) = sum_p #supp h_p = " + supportTotal.get_str()));
  r.verdicts.push_back(verdict("lambda-exactness", r.lambda + mpq_class(r.cTau) == sumAbs * sumAbs,
                               "Lambda + c(tau) = (sum_p |lambda_p|)^2"));
  r.verdicts.push_back(verdict("norminf-decomposition", r.normInf == expectedNormInf,
                               "expected " + expectedNormInf.get_str()));

  const mpz_class nP = static_cast<unsigned long>(choices.size());
  if (orbit.kind() == orbits::OrbitKind::SL2) {
    r.verdicts.push_back(verdict("sl2-avoidance", r.intersectionCount == 0, "SL2-type orbits miss one-sided supports"));
  } else {
    const mpz_class cIndex = static_cast<unsigned long>(orbit.indexMultiplier());
    const mpz_class bound = 4 * cIndex * cIndex * nP * nP;
    r.verdicts.push_back(verdict("intersection-bound", r.intersectionCount <= bound, "<= 4 C^2 #P^2 = " + bound.get_str()));
  }

  const bool positive = r.lambda > 0;
  r.verdicts.push_back(verdict("lambda-positive", positive, "Lambda = " + r.lambda.get_str()));
  if (!positive) {
    r.error = "non-positive amplified eigenvalue " + r.lambda.get_str();
    return out;
  }

  r.ratioIntersections = mpq_class(r.normInf * r.intersectionCount) / r.lambda;
  r.ratioPositivity = mpq_class(r.cTau) / r.lambda;
  r.ratioIntersections->canonicalize();
  r.ratioPositivity->canonicalize();

  if (Q >= 2) {
    const double q = static_cast<double>(Q);
    const double logQ = log(Q);
    r.normalizedLambda = r.lambda.get_d() * logQ * logQ / std::pow(q, 2.0 + r.ell);
    r.normalizedNormInf = r.normInf.get_d() / std::pow(q, r.ell - 1.0);
    r.normalizedPositivity = r.ratioPositivity->get_d() * std::pow(q, 1.0 + r.ell / 2.0) / logQ;
  }
  return out;
}

Amplifier buildAmplifier(std::uint64_t Q, const splitting::IntPoly& f, const SpectrumModel& spectrum,
                         const orbits::OrbitModel& orbit, const mpq_class& c0) {
  if (Q < 11) throw AmplifierError("Q must be at least 11");
  const auto candidates = splitting::splitPrimesIn(f, Q, 2 * Q);
  if (candidates.empty()) throw AmplifierError("no split primes in [" + std::to_string(Q) + ", " + std::to_string(2 * Q) + "]");
  if (candidates.size() < 2) throw AmplifierError("need at least two split primes in [Q, 2Q]");

  std::vector<LocalChoice> all;
  for (std::uint64_t p : candidates) all.push_back(pickLocal(Prime(p), spectrum.lambdaP(Prime(p)), c0));

  const auto small = std::count_if(all.begin(), all.end(), [](const LocalChoice& c) { return c.ell == 2; });
  const int keep = small * 2 >= static_cast<std::ptrdiff_t>(all.size()) ? 2 : 4;
  std::vector<LocalChoice> kept;
  std::copy_if(all.begin(), all.end(), std::back_inserter(kept), [keep](const LocalChoice& c) { return c.ell == keep; });

  Amplifier out = assembleAmplifier(std::move(kept), orbit, Q, c0);
  out.report.candidatePrimes = candidates;
  return out;
}

FloorCheck verifySpectralFloor(const hecke::GlobalHeckeElement& tau, const mpz_class& cTau, std::size_t trials,
                               std::uint64_t seed) {
  FloorCheck out;
  out.trials = trials;
  out.floor = -mpq_class(cTau);
  std::mt19937_64 rng(seed);
  const auto primes = tau.primes();
  bool first = true;
  for (std::size_t t = 0; t < trials; ++t) {
    hecke::Spectra<mpq_class> system;
    for (std::uint64_t p : primes) {
      const mpz_class q = toMpz(p);
      const mpq_class bound(2 * q * (q + 1));
      const int maxJ = std::max(1, tau.maxRadius(p) / 2);
      system.emplace(p, hecke::eigenvalueSequence<mpq_class>(Prime(p), dyadicUniform(rng, -bound, bound), maxJ));
    }
    const mpq_class value = hecke::spectralValue(tau, system);
    if (first || value < out.minimum) out.minimum = value;
    first = false;
    if (value < out.floor) out.pass = false;
  }
  return out;
}

std::vector<AmplifierReport> scalingSweep(std::span<const std::uint64_t> Qs, const splitting::IntPoly& f,
                                          const SpectrumModel& spectrum, const orbits::OrbitModel& orbit,
                                          const mpq_class& c0) {
  if (!std::is_sorted(Qs.begin(), Qs.end())) throw std::invalid_argument("Q values must be ascending");
  std::vector<std::future<AmplifierReport>> pending;
  for (std::uint64_t Q : Qs) {
    pending.push_back(std::async(std::launch::async, [Q, &f, &spectrum, &orbit, &c0] {
      return buildAmplifier(Q, f, spectrum, orbit, c0).report;
    }));
  }
  std::vector<AmplifierReport> out;
  for (auto& p : pending) out.push_back(p.get());
  return out;
}

}  // namespace hamp::amplifier
