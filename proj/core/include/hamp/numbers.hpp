#pragma once

#include <gmpxx.h>

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

/// Exact arithmetic over Q and Q(i): Gaussian integers and rationals, 2x2
/// matrices, place-by-place denominators and the product formula.
namespace hamp::numbers {

struct GaussInt {
  mpz_class re = 0;
  mpz_class im = 0;

  GaussInt() = default;
  GaussInt(mpz_class r, mpz_class i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool isZero() const { return re == 0 && im == 0; }
  bool isUnit() const { return norm() == 1; }
  mpz_class norm() const { return re * re + im * im; }
  GaussInt conj() const { return {re, -im}; }

  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }

  std::string toString() const;
};

/// True iff d divides n in Z[i]; on success *quotient receives n / d.
bool dividesExactly(const GaussInt& d, const GaussInt& n, GaussInt* quotient = nullptr);

/// Euclidean gcd in Z[i] (any associate).
GaussInt gcd(GaussInt a, GaussInt b);

/// An element of Q(i); rationals are kept canonical by GMP.
struct GaussRat {
  mpq_class re = 0;
  mpq_class im = 0;

  GaussRat() = default;
  GaussRat(mpq_class r, mpq_class i = 0);
  GaussRat(const GaussInt& z) : GaussRat(mpq_class(z.re), mpq_class(z.im)) {}

  bool isZero() const { return re == 0 && im == 0; }
  /// Squared complex modulus, the normalized absolute value at the complex place.
  mpq_class normSquared() const { return re * re + im * im; }
  GaussRat conj() const { return {re, -im}; }
  /// Positive lcm of the denominators of re and im.
  mpz_class commonDenominator() const;

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  /// Throws std::domain_error on division by zero.
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b);
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }

  std::string toString() const;
};

/// A finite place of Q(i), identified by a canonical prime of Z[i]: the
/// associate with re > 0 and re >= |im|, except that the ramified prime is
/// written 1+i.
struct GaussPrime {
  GaussInt generator;
  mpz_class residueSize;  // q_v
  mpz_class rationalPrime;

  friend bool operator==(const GaussPrime& a, const GaussPrime& b) { return a.generator == b.generator; }
};

/// Canonical primes of Z[i] above the rational prime p.
std::vector<GaussPrime> placesAbove(const mpz_class& p);

struct GaussFactorization {
  GaussInt unit;
  std::vector<std::pair<GaussPrime, int>> factors;  // ordered by (norm, generator)

  GaussInt product() const;
};

/// Throws std::invalid_argument for z = 0.
GaussFactorization gaussianFactor(const GaussInt& z);

/// Trial-division factorization of |n| > 0 into ascending prime powers.
std::vector<std::pair<mpz_class, int>> factorInteger(const mpz_class& n);

/// ord_v(x) for x != 0.
int valuation(const GaussRat& x, const GaussPrime& v);

enum class BaseField { Rationals, GaussianRationals };

/// max(|x|_v, 1) = q_v^max(-ord_v x, 0); 1 for x = 0.
mpz_class denomLocal(const GaussRat& x, const GaussPrime& v);
/// Same over Q at the rational prime p; x must be rational.
mpz_class denomLocal(const mpq_class& x, const mpz_class& p);

/// Product of the local denominators over all finite places of the field.
/// Over Q the element must have zero imaginary part (std::invalid_argument).
mpz_class denom(const GaussRat& x, BaseField field = BaseField::GaussianRationals);

class Mat2 {
 public:
  Mat2() = default;
  Mat2(GaussRat a, GaussRat b, GaussRat c, GaussRat d) : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  static Mat2 identity() { return Mat2(mpq_class(1), mpq_class(0), mpq_class(0), mpq_class(1)); }

  const GaussRat& operator()(int row, int col) const { return e_[static_cast<std::size_t>(2 * row + col)]; }
  GaussRat& operator()(int row, int col) { return e_[static_cast<std::size_t>(2 * row + col)]; }
  const std::array<GaussRat, 4>& entries() const noexcept { return e_; }

  GaussRat det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
  Mat2 adjugate() const { return Mat2(e_[3], -e_[1], -e_[2], e_[0]); }
  /// Throws std::domain_error when singular.
  Mat2 inverse() const;
  bool isZero() const;

  friend Mat2 operator+(const Mat2& a, const Mat2& b);
  friend Mat2 operator-(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend bool operator==(const Mat2& a, const Mat2& b) { return a.e_ == b.e_; }

  std::string toString() const;

 private:
  std::array<GaussRat, 4> e_{};
};

/// Product over places of the largest local denominator among the entries
/// (the denominator of the fractional ideal the entries generate).
mpz_class denomMat(const Mat2& m, BaseField field = BaseField::GaussianRationals);

/// |x|_inf^2 times the product of all finite |x|_v, exactly. Equals 1 for
/// every x != 0. Throws std::invalid_argument for x = 0.
mpq_class productFormulaCheck(const GaussRat& x);

/// ab - ba.
Mat2 commutator(const Mat2& a, const Mat2& b);

enum class CommutingVerdict { ForcedZero, IsZero, NotForced };

const char* toString(CommutingVerdict v);

/// Raised when the asserted archimedean bound is not met by the commutator.
class ArchBoundViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// With D = denomMat([a, b]) and every entry satisfying |e|^2 <= archBound,
/// D * archBound < 1 leaves no room for a nonzero entry (product formula), so
/// the commutator is forced to vanish.
CommutingVerdict certifyCommuting(const Mat2& a, const Mat2& b, const mpq_class& archBound);

}  // namespace hamp::numbers
