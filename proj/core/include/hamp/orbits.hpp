#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "hamp/hecke.hpp"
#include "hamp/primes.hpp"
#include "hamp/tree.hpp"

/// Orbits of small subgroups in a product of two trees (the split place
/// G_{p,1} = SL2(Q_p) x SL2(Q_p) modulo its maximal compact), and how often
/// they meet the support of one-sided Hecke operators.
namespace hamp::orbits {

enum class OrbitKind {
  Multiplicative,  // finite index in a split torus: a product of apartments
  SL2,             // finite index in a conjugate of SL2 over the real subfield: the diagonal
};

const char* toString(OrbitKind kind);

/// A root-fixing tree automorphism that relabels the first digit so that 0
/// goes to imageOfZero and 1 to imageOfOne (the remaining digits keep their
/// relative order). Models conjugation by an element of the maximal compact.
struct RootTranslate {
  std::uint32_t imageOfZero = 0;
  std::uint32_t imageOfOne = 1;

  tree::TreeVertex apply(const tree::TreeVertex& v) const;
};

class OrbitModel {
 public:
  /// indexMultiplier >= 1 and translates.size() <= indexMultiplier, else
  /// std::invalid_argument. Cosets without a listed translate use the identity.
  OrbitModel(OrbitKind kind, std::uint64_t indexMultiplier = 1, std::vector<RootTranslate> translates = {});

  OrbitKind kind() const noexcept { return kind_; }
  std::uint64_t indexMultiplier() const noexcept { return index_; }
  const std::vector<RootTranslate>& translates() const noexcept { return translates_; }
  RootTranslate translateFor(std::uint64_t coset) const;

 private:
  OrbitKind kind_;
  std::uint64_t index_;
  std::vector<RootTranslate> translates_;
};

/// A point of the tree pair at one prime.
struct LocalPoint {
  tree::TreeVertex left;
  tree::TreeVertex right;

  friend bool operator==(const LocalPoint&, const LocalPoint&) = default;
  friend auto operator<=>(const LocalPoint&, const LocalPoint&) = default;
};

/// A point of the product over several primes (distinct keys).
using ProductPoint = std::map<std::uint64_t, LocalPoint>;

/// {(v, o) : d(v, o) = 2j}, j >= 1.
std::vector<LocalPoint> oneSidedSupport(Prime p, int j);

/// Closed form: 0 for SL2 type, 2 C for multiplicative type.
std::uint64_t orbitIntersectOneSided(const OrbitModel& model, Prime p, int j);

/// Enumerates the orbit inside the ball of the given radius and counts its
/// points in the one-sided support (j = 0 means the identity coset (o, o)).
/// Requires ballRadius >= 2j.
std::uint64_t bruteForceIntersect(const OrbitModel& model, Prime p, int j, int ballRadius);

/// Sum over support points of tau of the product over the primes involved of
/// the per-prime intersection count at that radius. The identity point, if
/// present, counts once.
mpz_class countGlobalIntersections(const OrbitModel& model, const hecke::GlobalHeckeElement& tau);

}  // namespace hamp::orbits
