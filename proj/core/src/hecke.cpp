#include "hamp/hecke.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "hamp/tree.hpp"

namespace hamp::hecke {
namespace {

constexpr int kSlots = kMaxCachedRadius / 2 + 1;

// c[a/2][b/2][r/2] for a, b <= kMaxCachedRadius.
struct ConstantTable {
  std::vector<mpz_class> values;

  explicit ConstantTable(Prime p) : values(kSlots * kSlots * (2 * kSlots - 1)) {
    for (int a = 0; a < kSlots; ++a) {
      for (int b = 0; b < kSlots; ++b) {
        for (int r = 0; r <= a + b; ++r) {
          values[index(a, b, r)] = tree::convolutionCount(p, 2 * a, 2 * b, 2 * r);
        }
      }
    }
  }

  static std::size_t index(int a, int b, int r) {
    return static_cast<std::size_t>((a * kSlots + b) * (2 * kSlots - 1) + r);
  }
};

class ConstantCache {
 public:
  const ConstantTable& forPrime(Prime p) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = tables_.find(p.value()); it != tables_.end()) return *it->second;
    }
    auto table = std::make_unique<ConstantTable>(p);
    std::unique_lock lock(mutex_);
    auto [it, inserted] = tables_.try_emplace(p.value(), std::move(table));
    return *it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::uint64_t, std::unique_ptr<const ConstantTable>> tables_;
};

ConstantCache& cache() {
  static ConstantCache instance;
  return instance;
}

const mpz_class kZero = 0;

template <class Scalar>
Scalar fromInteger(const mpz_class& z);

template <>
mpq_class fromInteger<mpq_class>(const mpz_class& z) {
  return mpq_class(z);
}

template <>
long double fromInteger<long double>(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<long double>(z.get_si());
  return static_cast<long double>(z.get_d());
}

}  // namespace

LocalHeckeElement::LocalHeckeElement(Prime p, std::map<int, mpz_class> coeffs) : prime_(p) {
  for (auto& [radius, c] : coeffs) {
    if (radius < 0 || radius % 2 != 0) {
      throw std::invalid_argument("Hecke radius must be even and non-negative: " + std::to_string(radius));
    }
    if (c != 0) coeffs_.emplace(radius, std::move(c));
  }
}

LocalHeckeElement LocalHeckeElement::identity(Prime p) { return LocalHeckeElement(p, {{0, 1}}); }

LocalHeckeElement LocalHeckeElement::basic(Prime p, int j) {
  if (j < 1) throw std::invalid_argument("basic operators need j >= 1; use identity() for j = 0");
  return LocalHeckeElement(p, {{2 * j, 1}});
}

mpz_class LocalHeckeElement::coefficient(int radius) const {
  auto it = coeffs_.find(radius);
  return it == coeffs_.end() ? mpz_class(0) : it->second;
}

int LocalHeckeElement::maxRadius() const noexcept { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

mpz_class LocalHeckeElement::supportSize() const {
  mpz_class total = 0;
  for (const auto& [radius, c] : coeffs_) total += tree::sphereSize(prime_, radius);
  return total;
}

mpz_class LocalHeckeElement::totalMass() const {
  mpz_class total = 0;
  for (const auto& [radius, c] : coeffs_) total += c * tree::sphereSize(prime_, radius);
  return total;
}

LocalHeckeElement& LocalHeckeElement::operator+=(const LocalHeckeElement& other) {
  if (other.prime_ != prime_) throw std::invalid_argument("Hecke elements over different primes");
  for (const auto& [radius, c] : other.coeffs_) {
    mpz_class& slot = coeffs_[radius];
    slot += c;
    if (slot == 0) coeffs_.erase(radius);
  }
  return *this;
}

LocalHeckeElement& LocalHeckeElement::operator*=(const mpz_class& scalar) {
  if (scalar == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [radius, c] : coeffs_) c *= scalar;
  return *this;
}

const mpz_class& structureConstant(Prime p, int a, int b, int r) {
  if (a < 0 || b < 0 || r < 0 || a % 2 || b % 2 || r % 2) {
    throw std::invalid_argument("structure constants are indexed by even radii");
  }
  if (a > kMaxCachedRadius || b > kMaxCachedRadius) {
    throw std::out_of_range("structure constants are tabulated up to radius " + std::to_string(kMaxCachedRadius));
  }
  if (r > a + b) return kZero;
  return cache().forPrime(p).values[ConstantTable::index(a / 2, b / 2, r / 2)];
}

LocalHeckeElement convolve(const LocalHeckeElement& f, const LocalHeckeElement& g) {
  if (f.prime() != g.prime()) throw std::invalid_argument("cannot convolve Hecke elements over different primes");
  std::map<int, mpz_class> out;
  for (const auto& [a, fa] : f.coeffs()) {
    for (const auto& [b, gb] : g.coeffs()) {
      const mpz_class weight = fa * gb;
      for (int r = std::abs(a - b); r <= a + b; r += 2) {
        const mpz_class& c = structureConstant(f.prime(), a, b, r);
        if (c != 0) out[r] += weight * c;
      }
    }
  }
  return LocalHeckeElement(f.prime(), std::move(out));
}

mpz_class offOriginMax(const LocalHeckeElement& f) {
  mpz_class best = 0;
  for (const auto& [radius, c] : f.coeffs()) {
    if (radius > 0) best = std::max<mpz_class>(best, abs(c));
  }
  return best;
}

GlobalHeckeElement GlobalHeckeElement::delta() {
  GlobalHeckeElement out;
  out.add({}, 1);
  return out;
}

GlobalHeckeElement GlobalHeckeElement::embed(const LocalHeckeElement& f) {
  GlobalHeckeElement out;
  for (const auto& [radius, c] : f.coeffs()) {
    SupportPoint point;
    if (radius > 0) point.emplace(f.prime().value(), radius);
    out.add(point, c);
  }
  return out;
}

void GlobalHeckeElement::add(const SupportPoint& point, const mpz_class& c) {
  for (const auto& [p, radius] : point) {
    if (radius <= 0 || radius % 2 != 0) throw std::invalid_argument("support point radii must be positive and even");
  }
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(point, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

mpz_class GlobalHeckeElement::coefficient(const SupportPoint& point) const {
  auto it = coeffs_.find(point);
  return it == coeffs_.end() ? mpz_class(0) : it->second;
}

std::vector<std::uint64_t> GlobalHeckeElement::primes() const {
  std::vector<std::uint64_t> out;
  for (const auto& [point, c] : coeffs_) {
    for (const auto& [p, radius] : point) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int GlobalHeckeElement::maxRadius(std::uint64_t p) const {
  int best = 0;
  for (const auto& [point, c] : coeffs_) {
    if (auto it = point.find(p); it != point.end()) best = std::max(best, it->second);
  }
  return best;
}

GlobalHeckeElement globalAssemble(std::span<const PhasedLocal> parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t k = i + 1; k < parts.size(); ++k) {
      if (parts[i].element.prime() == parts[k].element.prime()) {
        throw std::invalid_argument("duplicate prime " + std::to_string(parts[i].element.prime().value()));
      }
    }
  }

  GlobalHeckeElement out;
  for (const auto& part : parts) {
    // z_p^2 = 1 for real phases
    const auto square = convolve(part.element, part.element.adjoint());
    const auto embedded = GlobalHeckeElement::embed(square);
    for (const auto& [point, c] : embedded.coeffs()) out.add(point, c);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (i == k) continue;
      // G_p and G_q commute, so h_p * h_q^* is supported on the product of supports.
      const auto& left = parts[i];
      const auto right = parts[k].element.adjoint();
      const int phase = sign(left.phase) * sign(parts[k].phase);
      for (const auto& [a, ca] : left.element.coeffs()) {
        for (const auto& [b, cb] : right.coeffs()) {
          SupportPoint point;
          if (a > 0) point.emplace(left.element.prime().value(), a);
          if (b > 0) point.emplace(right.prime().value(), b);
          out.add(point, phase * ca * cb);
        }
      }
    }
  }
  return out;
}

GlobalHeckeElement subtractIdentity(const GlobalHeckeElement& t) {
  GlobalHeckeElement out = t;
  out.add({}, -t.identityValue());
  return out;
}

mpz_class normInf(const GlobalHeckeElement& t) {
  mpz_class best = 0;
  for (const auto& [point, c] : t.coeffs()) {
    if (!point.empty()) best = std::max<mpz_class>(best, abs(c));
  }
  return best;
}

template <class Scalar>
EigenvalueSequence<Scalar> eigenvalueSequence(Prime p, const Scalar& lambdaP, int maxJ) {
  if (maxJ < 1) throw std::invalid_argument("maxJ must be at least 1");
  if (2 * (maxJ - 1) > kMaxCachedRadius) {
    throw std::out_of_range("eigenvalue recursion limited to maxJ <= " + std::to_string(kMaxCachedRadius / 2 + 1));
  }
  Scalar seed = lambdaP;
  if constexpr (std::is_same_v<Scalar, mpq_class>) seed.canonicalize();
  std::vector<Scalar> lambda;
  lambda.reserve(static_cast<std::size_t>(maxJ) + 1);
  lambda.push_back(Scalar(1));
  lambda.push_back(seed);
  for (int j = 1; j < maxJ; ++j) {
    // tau_p * tau_{p^j} = sum_{r <= 2j} c_r tau_{p^{r/2}} + tau_{p^{j+1}}
    Scalar next = seed * lambda[static_cast<std::size_t>(j)];
    for (int r = 2 * j - 2; r <= 2 * j; r += 2) {
      if (r < 0) continue;
      next -= fromInteger<Scalar>(structureConstant(p, 2, 2 * j, r)) * lambda[static_cast<std::size_t>(r / 2)];
    }
    lambda.push_back(std::move(next));
  }
  return EigenvalueSequence<Scalar>(p, std::move(lambda));
}

template <class Scalar>
Scalar spectralValue(const LocalHeckeElement& f, const EigenvalueSequence<Scalar>& s) {
  if (f.prime() != s.prime()) throw std::invalid_argument("eigenvalue sequence is for a different prime");
  Scalar total(0);
  for (const auto& [radius, c] : f.coeffs()) {
    if (radius / 2 > s.maxJ()) throw std::out_of_range("eigenvalue sequence too short for radius " + std::to_string(radius));
    total += fromInteger<Scalar>(c) * s.at(radius / 2);
  }
  return total;
}

template <class Scalar>
Scalar spectralValue(const GlobalHeckeElement& f, const Spectra<Scalar>& spectra) {
  Scalar total(0);
  for (const auto& [point, c] : f.coeffs()) {
    Scalar term = fromInteger<Scalar>(c);
    for (const auto& [p, radius] : point) {
      auto it = spectra.find(p);
      if (it == spectra.end()) throw std::invalid_argument("no eigenvalues for prime " + std::to_string(p));
      if (radius / 2 > it->second.maxJ()) {
        throw std::out_of_range("eigenvalue sequence too short for prime " + std::to_string(p));
      }
      term *= it->second.at(radius / 2);
    }
    total += term;
  }
  return total;
}

template EigenvalueSequence<mpq_class> eigenvalueSequence(Prime, const mpq_class&, int);
template EigenvalueSequence<long double> eigenvalueSequence(Prime, const long double&, int);
template mpq_class spectralValue(const LocalHeckeElement&, const EigenvalueSequence<mpq_class>&);
template long double spectralValue(const LocalHeckeElement&, const EigenvalueSequence<long double>&);
template mpq_class spectralValue(const GlobalHeckeElement&, const Spectra<mpq_class>&);
template long double spectralValue(const GlobalHeckeElement&, const Spectra<long double>&);

}  // namespace hamp::hecke
