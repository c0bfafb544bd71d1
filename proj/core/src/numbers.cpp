#include "hamp/numbers.hpp"

#include <algorithm>
#include <map>

namespace hamp::numbers {
namespace {

// round(a / b) for b > 0, ties toward +infinity
mpz_class roundDiv(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_class twice = 2 * a + b;
  mpz_class denom2 = 2 * b;
  mpz_fdiv_q(out.get_mpz_t(), twice.get_mpz_t(), denom2.get_mpz_t());
  return out;
}

GaussInt canonicalAssociate(const GaussInt& z) {
  if (z.norm() == 2) return {1, 1};
  GaussInt w = z;
  for (int turn = 0; turn < 4; ++turn) {
    if (w.re > 0 && w.re >= abs(w.im)) return w;
    w = GaussInt(-w.im, w.re);  // multiply by i
  }
  return z;
}

mpz_class pow(const mpz_class& base, unsigned long exponent) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

int multiplicity(GaussInt n, const GaussInt& pi) {
  int count = 0;
  GaussInt q;
  while (dividesExactly(pi, n, &q)) {
    n = q;
    ++count;
  }
  return count;
}

int rationalValuation(mpz_class n, const mpz_class& p) {
  int count = 0;
  while (n != 0 && mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++count;
  }
  return count;
}

// Places of Q(i) that can carry a nonzero valuation of some entry.
std::vector<GaussPrime> placesDividing(const mpz_class& n) {
  std::vector<GaussPrime> out;
  if (n == 0 || abs(n) == 1) return out;
  for (const auto& [p, e] : factorInteger(n)) {
    for (auto& v : placesAbove(p)) out.push_back(std::move(v));
  }
  return out;
}

std::string rationalToString(const mpq_class& q) { return q.get_str(); }

}  // namespace

std::string GaussInt::toString() const { return GaussRat(*this).toString(); }

bool dividesExactly(const GaussInt& d, const GaussInt& n, GaussInt* quotient) {
  if (d.isZero()) return false;
  const mpz_class nd = d.norm();
  const GaussInt t = n * d.conj();
  if (!mpz_divisible_p(t.re.get_mpz_t(), nd.get_mpz_t()) || !mpz_divisible_p(t.im.get_mpz_t(), nd.get_mpz_t())) {
    return false;
  }
  if (quotient) *quotient = GaussInt(t.re / nd, t.im / nd);
  return true;
}

GaussInt gcd(GaussInt a, GaussInt b) {
  while (!b.isZero()) {
    const mpz_class nb = b.norm();
    const GaussInt t = a * b.conj();
    const GaussInt q(roundDiv(t.re, nb), roundDiv(t.im, nb));
    GaussInt r = a - q * b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

GaussRat::GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
  re.canonicalize();
  im.canonicalize();
}

mpz_class GaussRat::commonDenominator() const {
  mpz_class out;
  mpz_lcm(out.get_mpz_t(), re.get_den_mpz_t(), im.get_den_mpz_t());
  return out;
}

GaussRat operator/(const GaussRat& a, const GaussRat& b) {
  if (b.isZero()) throw std::domain_error("division by zero in Q(i)");
  const mpq_class n = b.normSquared();
  const GaussRat t = a * b.conj();
  return {t.re / n, t.im / n};
}

std::string GaussRat::toString() const {
  if (im == 0) return rationalToString(re);
  std::string imag = (im == 1) ? "i" : (im == -1) ? "-i" : rationalToString(im) + "i";
  if (re == 0) return imag;
  if (imag.front() != '-') imag = "+" + imag;
  return rationalToString(re) + imag;
}

std::vector<GaussPrime> placesAbove(const mpz_class& p) {
  if (p == 2) return {GaussPrime{{1, 1}, 2, 2}};
  const mpz_class residue = p % 4;
  if (residue == 3) return {GaussPrime{{p, 0}, p * p, p}};
  if (residue != 1) throw std::invalid_argument("not an odd prime or 2: " + p.get_str());

  // x^2 = -1 mod p from a non-residue c: x = c^((p-1)/4)
  const mpz_class exponent = (p - 1) / 4;
  mpz_class x;
  for (mpz_class c = 2;; ++c) {
    mpz_powm(x.get_mpz_t(), c.get_mpz_t(), exponent.get_mpz_t(), p.get_mpz_t());
    if ((x * x + 1) % p == 0) break;
  }
  const GaussInt pi = canonicalAssociate(gcd(GaussInt(p, 0), GaussInt(x, 1)));
  const GaussInt other = canonicalAssociate(pi.conj());
  std::vector<GaussPrime> out{GaussPrime{pi, p, p}, GaussPrime{other, p, p}};
  std::sort(out.begin(), out.end(), [](const GaussPrime& a, const GaussPrime& b) {
    return a.generator.im > b.generator.im;
  });
  return out;
}

GaussInt GaussFactorization::product() const {
  GaussInt out = unit;
  for (const auto& [v, e] : factors) {
    for (int k = 0; k < e; ++k) out = out * v.generator;
  }
  return out;
}

std::vector<std::pair<mpz_class, int>> factorInteger(const mpz_class& n) {
  if (n == 0) throw std::invalid_argument("cannot factor 0");
  mpz_class rest = abs(n);
  std::vector<std::pair<mpz_class, int>> out;
  bool restIsPrime = false;
  auto strip = [&](const mpz_class& d) {
    int e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) {
      rest /= d;
      ++e;
    }
    if (e > 0) {
      out.emplace_back(d, e);
      restIsPrime = mpz_probab_prime_p(rest.get_mpz_t(), 30) > 0;
    }
  };
  strip(2);
  strip(3);
  restIsPrime = restIsPrime || mpz_probab_prime_p(rest.get_mpz_t(), 30) > 0;
  for (mpz_class d = 5; !restIsPrime && d * d <= rest; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (rest > 1) out.emplace_back(rest, 1);
  return out;
}

GaussFactorization gaussianFactor(const GaussInt& z) {
  if (z.isZero()) throw std::invalid_argument("cannot factor 0 in Z[i]");
  GaussFactorization out;
  GaussInt rest = z;
  for (const auto& [p, e] : factorInteger(z.norm())) {
    for (const auto& v : placesAbove(p)) {
      int count = 0;
      GaussInt q;
      while (dividesExactly(v.generator, rest, &q)) {
        rest = q;
        ++count;
      }
      if (count > 0) out.factors.emplace_back(v, count);
    }
  }
  out.unit = rest;
  return out;
}

int valuation(const GaussRat& x, const GaussPrime& v) {
  if (x.isZero()) throw std::invalid_argument("valuation of 0 is infinite");
  const mpz_class d = x.commonDenominator();
  const GaussInt numerator(mpz_class(x.re * d), mpz_class(x.im * d));
  return multiplicity(numerator, v.generator) - multiplicity(GaussInt(d, 0), v.generator);
}

mpz_class denomLocal(const GaussRat& x, const GaussPrime& v) {
  if (x.isZero()) return 1;
  const int ord = valuation(x, v);
  return ord >= 0 ? mpz_class(1) : pow(v.residueSize, static_cast<unsigned long>(-ord));
}

mpz_class denomLocal(const mpq_class& x, const mpz_class& p) {
  if (x == 0) return 1;
  return pow(p, static_cast<unsigned long>(rationalValuation(x.get_den(), p)));
}

mpz_class denom(const GaussRat& x, BaseField field) {
  if (field == BaseField::Rationals) {
    if (x.im != 0) throw std::invalid_argument("element is not rational: " + x.toString());
    return x.re.get_den();
  }
  mpz_class out = 1;
  for (const auto& v : placesDividing(x.commonDenominator())) out *= denomLocal(x, v);
  return out;
}

Mat2 Mat2::inverse() const {
  const GaussRat d = det();
  if (d.isZero()) throw std::domain_error("singular matrix");
  Mat2 out = adjugate();
  for (auto& e : out.e_) e = e / d;
  return out;
}

bool Mat2::isZero() const {
  return std::all_of(e_.begin(), e_.end(), [](const GaussRat& x) { return x.isZero(); });
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 out;
  for (std::size_t i = 0; i < 4; ++i) out.e_[i] = a.e_[i] + b.e_[i];
  return out;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 out;
  for (std::size_t i = 0; i < 4; ++i) out.e_[i] = a.e_[i] - b.e_[i];
  return out;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
  }
  return out;
}

std::string Mat2::toString() const {
  return "[[" + e_[0].toString() + ", " + e_[1].toString() + "], [" + e_[2].toString() + ", " + e_[3].toString() +
         "]]";
}

mpz_class denomMat(const Mat2& m, BaseField field) {
  mpz_class common = 1;
  for (const auto& e : m.entries()) {
    if (field == BaseField::Rationals && e.im != 0) {
      throw std::invalid_argument("matrix is not rational: " + m.toString());
    }
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), e.commonDenominator().get_mpz_t());
  }
  if (field == BaseField::Rationals) return common;  // lcm of entry denominators

  mpz_class out = 1;
  for (const auto& v : placesDividing(common)) {
    mpz_class worst = 1;
    for (const auto& e : m.entries()) worst = std::max(worst, denomLocal(e, v));
    out *= worst;
  }
  return out;
}

mpq_class productFormulaCheck(const GaussRat& x) {
  if (x.isZero()) throw std::invalid_argument("product formula needs x != 0");
  const mpz_class d = x.commonDenominator();
  const GaussInt numerator(mpz_class(x.re * d), mpz_class(x.im * d));

  std::map<std::pair<mpz_class, mpz_class>, GaussPrime> places;
  auto collect = [&](const GaussPrime& v) { places.emplace(std::pair(v.generator.re, v.generator.im), v); };
  for (const auto& [v, e] : gaussianFactor(numerator).factors) collect(v);
  for (const auto& v : placesDividing(d)) collect(v);

  mpq_class out = x.normSquared();
  for (const auto& [key, v] : places) {
    const int ord = valuation(x, v);
    const mpz_class scale = pow(v.residueSize, static_cast<unsigned long>(std::abs(ord)));
    // |x|_v = q_v^(-ord)
    if (ord > 0) out /= scale;
    if (ord < 0) out *= scale;
  }
  out.canonicalize();
  return out;
}

Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }

const char* toString(CommutingVerdict v) {
  switch (v) {
    case CommutingVerdict::ForcedZero: return "ForcedZero";
    case CommutingVerdict::IsZero: return "IsZero";
    case CommutingVerdict::NotForced: return "NotForced";
  }
  return "?";
}

CommutingVerdict certifyCommuting(const Mat2& a, const Mat2& b, const mpq_class& archBound) {
  if (archBound <= 0) throw std::invalid_argument("archBound must be positive");
  const Mat2 c = commutator(a, b);
  for (const auto& e : c.entries()) {
    if (e.normSquared() > archBound) {
      throw ArchBoundViolation("commutator entry " + e.toString() + " exceeds the asserted archimedean bound " +
                               archBound.get_str());
    }
  }
  if (denomMat(c) * archBound < 1) {
    if (!c.isZero()) throw std::logic_error("product formula violated by " + c.toString());
    return CommutingVerdict::ForcedZero;
  }
  return c.isZero() ? CommutingVerdict::IsZero : CommutingVerdict::NotForced;
}

}  // namespace hamp::numbers
