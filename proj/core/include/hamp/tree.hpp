#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hamp/primes.hpp"

/// Combinatorial model of the Bruhat-Tits tree of SL2(Q_p).
///
/// A vertex is a no-backtrack word read from the root: the first digit lies in
/// [0, p] (one of the p+1 neighbours of the root), every later digit in
/// [0, p-1]. Word length is the distance to the root, and two vertices are
/// adjacent exactly when one word extends the other by a single digit. The root
/// plays the role of the identity coset of SL2(Z_p).
namespace hamp::tree {

inline constexpr int kMaxMaterializedRadius = 8;
inline constexpr std::uint64_t kMaxMaterializedPrime = 13;
inline constexpr std::uint64_t kMaxMaterializedVertices = std::uint64_t{1} << 22;

class TreeVertex {
 public:
  /// The root.
  explicit TreeVertex(Prime p);
  /// Throws std::invalid_argument when a digit is out of range.
  TreeVertex(Prime p, std::vector<std::uint32_t> word);

  Prime prime() const noexcept { return prime_; }
  std::span<const std::uint32_t> word() const noexcept { return word_; }
  int depth() const noexcept { return static_cast<int>(word_.size()); }
  bool isRoot() const noexcept { return word_.empty(); }

  /// Number of admissible digits at position `index` (p+1 first, then p).
  std::uint32_t digitRange(std::size_t index) const noexcept;

  TreeVertex child(std::uint32_t digit) const;
  std::vector<TreeVertex> neighbors() const;

  /// Replaces *this by the lexicographic successor among vertices of the same
  /// depth. Returns false (leaving the vertex unchanged) after the last one.
  bool advanceWithinSphere() noexcept;

  /// "o" for the root, otherwise dot-separated digits.
  std::string toString() const;

  friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
  friend auto operator<=>(const TreeVertex&, const TreeVertex&) = default;

 private:
  Prime prime_;
  std::vector<std::uint32_t> word_;
};

/// The vertex 0^r, used as the canonical point at distance r.
TreeVertex canonicalVertex(Prime p, int r);

/// (p+1) p^(r-1) for r >= 1, 1 for r = 0.
mpz_class sphereSize(Prime p, int r);

/// All vertices at distance exactly r from the root, in lexicographic order.
/// Materialization is capped (radius, prime and vertex count); larger spheres
/// must be walked with forEachInSphere. Throws std::length_error past the cap.
std::vector<TreeVertex> sphere(Prime p, int r);

/// Streams the sphere of radius r without materializing it.
template <class Visitor>
void forEachInSphere(Prime p, int r, Visitor&& visit) {
  TreeVertex v = canonicalVertex(p, r);
  do {
    visit(static_cast<const TreeVertex&>(v));
  } while (v.advanceWithinSphere());
}

template <class Visitor>
void forEachInBall(Prime p, int radius, Visitor&& visit) {
  for (int r = 0; r <= radius; ++r) forEachInSphere(p, r, visit);
}

/// |v| + |w| - 2 |lcp(v, w)|. Throws std::invalid_argument on mismatched primes.
int distance(const TreeVertex& v, const TreeVertex& w);

/// #{z : d(o, z) = a, d(z, y) = b} with y at distance r from the root, any
/// parity. Computed by classifying z according to its common prefix with y.
mpz_class pathCount(Prime p, int a, int b, int r);

/// pathCount restricted to the even radii of the determinant-one group.
/// Rejects odd arguments and r > a + b with std::invalid_argument.
mpz_class convolutionCount(Prime p, int a, int b, int r);

/// Brute-force counterpart: walks the sphere of radius a and tests d(z, y) = b.
std::uint64_t countByEnumeration(const TreeVertex& y, int a, int b);

}  // namespace hamp::tree
