#include "cli/numbers_suite.hpp"

#include <algorithm>
#include <array>

namespace hamp::cli::suites {
namespace {

using numbers::BaseField;
using numbers::GaussInt;
using numbers::GaussRat;
using numbers::Mat2;

const std::array<GaussInt, 8>& denominatorPool() {
  static const std::array<GaussInt, 8> pool{GaussInt(1),     GaussInt(1, 1), GaussInt(2),  GaussInt(2, 1),
                                            GaussInt(1, -2), GaussInt(3),    GaussInt(5), GaussInt(3, 2)};
  return pool;
}

mpq_class maxEntryNorm(const Mat2& m) {
  mpq_class best = 0;
  for (const auto& e : m.entries()) best = std::max(best, e.normSquared());
  return best;
}

}  // namespace

void SuiteOutcome::record(bool ok, const std::string& witness) {
  ++cases;
  if (!ok && failures++ == 0) firstFailure = witness;
}

std::int64_t GaussSampler::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng_() % span);
}

GaussInt GaussSampler::integer(std::int64_t bound) {
  return GaussInt(mpz_class(static_cast<long>(uniform(-bound, bound))), mpz_class(static_cast<long>(uniform(-bound, bound))));
}

GaussInt GaussSampler::unit() {
  static const std::array<GaussInt, 4> units{GaussInt(1), GaussInt(-1), GaussInt(0, 1), GaussInt(0, -1)};
  return units[static_cast<std::size_t>(uniform(0, 3))];
}

GaussRat GaussSampler::rational() {
  const auto& pool = denominatorPool();
  GaussInt den(1);
  const auto factors = uniform(0, 3);
  for (std::int64_t k = 0; k < factors; ++k) den = den * pool[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(pool.size()) - 1))];
  return GaussRat(integer(20)) / GaussRat(den);
}

GaussRat GaussSampler::nonzeroRational() {
  GaussRat x;
  do x = rational();
  while (x.isZero());
  return x;
}

GaussRat GaussSampler::realRational() {
  static const std::array<long, 8> dens{1, 2, 3, 4, 6, 9, 10, 25};
  return GaussRat(mpq_class(static_cast<long>(uniform(-40, 40)), dens[static_cast<std::size_t>(uniform(0, 7))]));
}

Mat2 GaussSampler::matrix() { return Mat2(rational(), rational(), rational(), rational()); }

Mat2 GaussSampler::unimodular() {
  const GaussRat zero, one(mpq_class(1));
  Mat2 k(GaussRat(unit()), zero, zero, one);
  for (int step = 0; step < 3; ++step) {
    const GaussRat t(integer(4));
    k = k * (step % 2 == 0 ? Mat2(one, t, zero, one) : Mat2(one, zero, t, one));
  }
  return k;
}

Mat2 GaussSampler::special() {
  const GaussRat zero, one(mpq_class(1));
  Mat2 m = Mat2::identity();
  for (int step = 0; step < 3; ++step) {
    const GaussRat t = rational();
    m = m * (step % 2 == 0 ? Mat2(one, t, zero, one) : Mat2(one, zero, t, one));
  }
  return m;
}

std::vector<SuiteOutcome> denominatorSuites(std::size_t samples, std::uint64_t seed) {
  GaussSampler draw(seed);
  SuiteOutcome sumElem{"sum-submultiplicative"}, prodElem{"product-submultiplicative"};
  SuiteOutcome sumRat{"sum-submultiplicative-over-q"}, prodRat{"product-submultiplicative-over-q"};
  SuiteOutcome sumMat{"matrix-sum-submultiplicative"}, prodMat{"matrix-product-submultiplicative"};
  SuiteOutcome unimodular{"unimodular-invariance"}, inverse{"sl2-inverse-equality"};
  SuiteOutcome product{"product-formula"}, arch{"archimedean-lower-bound"};

  for (std::size_t i = 0; i < samples; ++i) {
    const GaussRat x = draw.nonzeroRational(), y = draw.nonzeroRational();
    const mpz_class dx = numbers::denom(x), dy = numbers::denom(y);
    const std::string pair = x.toString() + " , " + y.toString();
    sumElem.record(numbers::denom(x + y) <= dx * dy, pair);
    prodElem.record(numbers::denom(x * y) <= dx * dy, pair);

    const GaussRat u = draw.realRational(), w = draw.realRational();
    const mpz_class du = numbers::denom(u, BaseField::Rationals), dw = numbers::denom(w, BaseField::Rationals);
    const std::string realPair = u.toString() + " , " + w.toString();
    sumRat.record(numbers::denom(u + w, BaseField::Rationals) <= du * dw, realPair);
    prodRat.record(numbers::denom(u * w, BaseField::Rationals) <= du * dw, realPair);

    const Mat2 a = draw.matrix(), b = draw.matrix();
    const mpz_class da = numbers::denomMat(a), db = numbers::denomMat(b);
    sumMat.record(numbers::denomMat(a + b) <= da * db, a.toString() + " , " + b.toString());
    prodMat.record(numbers::denomMat(a * b) <= da * db, a.toString() + " , " + b.toString());

    const Mat2 k = draw.unimodular();
    unimodular.record(numbers::denomMat(a * k) == da && numbers::denomMat(k * a) == da, a.toString() + " , " + k.toString());

    const Mat2 s = draw.special();
    inverse.record(numbers::denomMat(s.inverse()) == numbers::denomMat(s), s.toString());

    product.record(numbers::productFormulaCheck(x) == 1, x.toString());
    arch.record(mpq_class(dx) * x.normSquared() >= 1, x.toString());
  }
  return {sumElem, prodElem, sumRat, prodRat, sumMat, prodMat, unimodular, inverse, product, arch};
}

std::vector<SuiteOutcome> commutatorSuites(std::size_t pairs, std::uint64_t seed) {
  GaussSampler draw(seed);
  SuiteOutcome gate{"no-false-forcing"}, commuting{"commuting-pairs-certified"};
  for (std::size_t i = 0; i < pairs; ++i) {
    const Mat2 a = draw.matrix(), b = draw.matrix();
    const Mat2 c = numbers::commutator(a, b);
    const std::string witness = a.toString() + " , " + b.toString();
    if (!c.isZero()) {
      const mpq_class bound = maxEntryNorm(c);
      const bool gateOpen = mpq_class(numbers::denomMat(c)) * bound < 1;
      bool verdictOk = false;
      try {
        verdictOk = numbers::certifyCommuting(a, b, bound) == numbers::CommutingVerdict::NotForced;
      } catch (const std::exception&) {
        verdictOk = false;
      }
      gate.record(!gateOpen && verdictOk, witness);
    }

    // s I + t a commutes with a
    const GaussRat s = draw.rational(), t = draw.rational();
    const GaussRat zero;
    const Mat2 partner = Mat2(s, zero, zero, s) + Mat2(t, zero, zero, t) * a;
    const auto verdict = numbers::certifyCommuting(a, partner, mpq_class(1, 10));
    commuting.record(verdict != numbers::CommutingVerdict::NotForced, a.toString() + " , " + partner.toString());
  }
  return {gate, commuting};
}

}  // namespace hamp::cli::suites
