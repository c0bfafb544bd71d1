#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hamp/primes.hpp"

/// The spherical Hecke algebra of SL2(Q_p) and its restricted product over
/// several primes. Elements are finitely supported integer combinations of
/// double-coset indicators, indexed by even radius.
namespace hamp::hecke {

/// Largest input radius for which structure constants are tabulated.
inline constexpr int kMaxCachedRadius = 8;

class LocalHeckeElement {
 public:
  /// Zero coefficients are dropped; odd or negative radii are rejected.
  LocalHeckeElement(Prime p, std::map<int, mpz_class> coeffs);

  static LocalHeckeElement identity(Prime p);
  /// Indicator of the sphere of radius 2j; j >= 1 (use identity() for j = 0).
  static LocalHeckeElement basic(Prime p, int j);

  Prime prime() const noexcept { return prime_; }
  const std::map<int, mpz_class>& coeffs() const noexcept { return coeffs_; }
  mpz_class coefficient(int radius) const;
  bool isZero() const noexcept { return coeffs_.empty(); }
  int maxRadius() const noexcept;

  /// Number of cosets carrying a nonzero value.
  mpz_class supportSize() const;
  /// Sum of all values: sum of coefficient * sphere size.
  mpz_class totalMass() const;

  /// Every double coset K a K is closed under inversion, so the adjoint
  /// (f*(g) = conj f(g^-1)) of an integer element is the element itself.
  LocalHeckeElement adjoint() const { return *this; }

  LocalHeckeElement& operator+=(const LocalHeckeElement& other);
  LocalHeckeElement& operator*=(const mpz_class& scalar);
  friend LocalHeckeElement operator+(LocalHeckeElement a, const LocalHeckeElement& b) { return a += b; }
  friend LocalHeckeElement operator*(const mpz_class& s, LocalHeckeElement a) { return a *= s; }
  friend bool operator==(const LocalHeckeElement&, const LocalHeckeElement&) = default;

 private:
  Prime prime_;
  std::map<int, mpz_class> coeffs_;
};

inline LocalHeckeElement identity(Prime p) { return LocalHeckeElement::identity(p); }
inline LocalHeckeElement basic(Prime p, int j) { return LocalHeckeElement::basic(p, j); }

/// Structure constant: coefficient of the radius-r indicator in the product of
/// the radius-a and radius-b indicators. Tabulated once per prime for
/// a, b <= kMaxCachedRadius; larger radii throw std::out_of_range. The cache
/// is safe for concurrent use.
const mpz_class& structureConstant(Prime p, int a, int b, int r);

LocalHeckeElement convolve(const LocalHeckeElement& f, const LocalHeckeElement& g);

/// max |coefficient| over positive radii.
mpz_class offOriginMax(const LocalHeckeElement& f);

/// A point of the restricted product: prime -> positive even radius. The empty
/// map is the identity coset.
using SupportPoint = std::map<std::uint64_t, int>;

class GlobalHeckeElement {
 public:
  GlobalHeckeElement() = default;

  static GlobalHeckeElement delta();
  static GlobalHeckeElement embed(const LocalHeckeElement& f);

  /// Adds c at the point; zero results are erased.
  void add(const SupportPoint& point, const mpz_class& c);

  const std::map<SupportPoint, mpz_class>& coeffs() const noexcept { return coeffs_; }
  mpz_class coefficient(const SupportPoint& point) const;
  /// The value at the identity coset.
  mpz_class identityValue() const { return coefficient({}); }
  bool isZero() const noexcept { return coeffs_.empty(); }
  std::vector<std::uint64_t> primes() const;
  /// Largest radius attached to prime p anywhere in the support.
  int maxRadius(std::uint64_t p) const;

  GlobalHeckeElement adjoint() const { return *this; }

  friend bool operator==(const GlobalHeckeElement&, const GlobalHeckeElement&) = default;

 private:
  std::map<SupportPoint, mpz_class> coeffs_;
};

enum class Phase : int { Plus = 1, Minus = -1 };

inline int sign(Phase z) noexcept { return static_cast<int>(z); }

struct PhasedLocal {
  LocalHeckeElement element;
  Phase phase = Phase::Plus;
};

/// Expands (sum_p z_p h_p) * (sum_p z_p h_p)^* in the SupportPoint basis.
/// Throws std::invalid_argument on a repeated prime.
GlobalHeckeElement globalAssemble(std::span<const PhasedLocal> parts);

/// t - t(1) delta.
GlobalHeckeElement subtractIdentity(const GlobalHeckeElement& t);

/// max |coefficient| over nonempty support points.
mpz_class normInf(const GlobalHeckeElement& t);

/// lambda_{p^0} = 1, lambda_p, lambda_{p^2}, ... for a Hecke eigenvector.
/// Scalar is mpq_class (exact) or long double.
template <class Scalar>
class EigenvalueSequence {
 public:
  EigenvalueSequence(Prime p, std::vector<Scalar> values) : prime_(p), values_(std::move(values)) {}

  Prime prime() const noexcept { return prime_; }
  int maxJ() const noexcept { return static_cast<int>(values_.size()) - 1; }
  /// Eigenvalue of the radius-2j indicator. Throws std::out_of_range past maxJ.
  const Scalar& at(int j) const { return values_.at(static_cast<std::size_t>(j)); }
  const std::vector<Scalar>& values() const noexcept { return values_; }

 private:
  Prime prime_;
  std::vector<Scalar> values_;
};

template <class Scalar>
using Spectra = std::map<std::uint64_t, EigenvalueSequence<Scalar>>;

/// Extends lambda_p to lambda_{p^j}, j <= maxJ, using
/// lambda_p lambda_{p^j} = sum_r c(2, 2j, r) lambda_{p^{r/2}}, whose top
/// coefficient is 1.
template <class Scalar>
EigenvalueSequence<Scalar> eigenvalueSequence(Prime p, const Scalar& lambdaP, int maxJ);

template <class Scalar>
Scalar spectralValue(const LocalHeckeElement& f, const EigenvalueSequence<Scalar>& s);

/// Throws std::invalid_argument when a prime of the support has no sequence.
template <class Scalar>
Scalar spectralValue(const GlobalHeckeElement& f, const Spectra<Scalar>& spectra);

extern template EigenvalueSequence<mpq_class> eigenvalueSequence(Prime, const mpq_class&, int);
extern template EigenvalueSequence<long double> eigenvalueSequence(Prime, const long double&, int);
extern template mpq_class spectralValue(const LocalHeckeElement&, const EigenvalueSequence<mpq_class>&);
extern template long double spectralValue(const LocalHeckeElement&, const EigenvalueSequence<long double>&);
extern template mpq_class spectralValue(const GlobalHeckeElement&, const Spectra<mpq_class>&);
extern template long double spectralValue(const GlobalHeckeElement&, const Spectra<long double>&);

}  // namespace hamp::hecke
