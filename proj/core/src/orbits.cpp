#include "hamp/orbits.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace hamp::orbits {
namespace {

using tree::TreeVertex;

void validateTranslate(const RootTranslate& t, Prime p) {
  if (t.imageOfZero == t.imageOfOne || t.imageOfZero > p.value() || t.imageOfOne > p.value()) {
    throw std::invalid_argument("root translate digits must be distinct and at most p");
  }
}

// Vertices of the apartment through the root with ends starting at digits a, b.
std::vector<TreeVertex> apartmentInBall(Prime p, std::uint32_t a, std::uint32_t b, int ballRadius) {
  std::vector<TreeVertex> out{TreeVertex(p)};
  for (std::uint32_t first : {a, b}) {
    std::vector<std::uint32_t> word{first};
    for (int depth = 1; depth <= ballRadius; ++depth) {
      out.emplace_back(p, word);
      word.push_back(0);
    }
  }
  return out;
}

}  // namespace

const char* toString(OrbitKind kind) { return kind == OrbitKind::SL2 ? "sl2" : "torus"; }

TreeVertex RootTranslate::apply(const TreeVertex& v) const {
  if (v.isRoot()) return v;
  const Prime p = v.prime();
  validateTranslate(*this, p);
  // permutation of [0, p]: 0 -> imageOfZero, 1 -> imageOfOne, rest ascending
  std::vector<std::uint32_t> image(p.value() + 1);
  image[0] = imageOfZero;
  image[1] = imageOfOne;
  std::uint32_t next = 0;
  for (std::size_t d = 2; d < image.size(); ++d) {
    while (next == imageOfZero || next == imageOfOne) ++next;
    image[d] = next++;
  }
  std::vector<std::uint32_t> word(v.word().begin(), v.word().end());
  word[0] = image[word[0]];
  return TreeVertex(p, std::move(word));
}

OrbitModel::OrbitModel(OrbitKind kind, std::uint64_t indexMultiplier, std::vector<RootTranslate> translates)
    : kind_(kind), index_(indexMultiplier), translates_(std::move(translates)) {
  if (index_ < 1) throw std::invalid_argument("index multiplier must be at least 1");
  if (translates_.size() > index_) throw std::invalid_argument("more translates than cosets");
  for (const auto& t : translates_) {
    if (t.imageOfZero == t.imageOfOne) throw std::invalid_argument("root translate digits must be distinct");
  }
}

RootTranslate OrbitModel::translateFor(std::uint64_t coset) const {
  return coset < translates_.size() ? translates_[coset] : RootTranslate{};
}

std::vector<LocalPoint> oneSidedSupport(Prime p, int j) {
  if (j < 1) throw std::invalid_argument("one-sided support needs j >= 1");
  std::vector<LocalPoint> out;
  const TreeVertex root(p);
  tree::forEachInSphere(p, 2 * j, [&](const TreeVertex& v) { out.push_back({v, root}); });
  return out;
}

std::uint64_t orbitIntersectOneSided(const OrbitModel& model, Prime p, int j) {
  if (j < 1) throw std::invalid_argument("one-sided operators need j >= 1");
  for (const auto& t : model.translates()) validateTranslate(t, p);
  // The diagonal meets {(v, o)} only at (o, o); an apartment through o meets
  // each sphere about o in its two points at that distance.
  return model.kind() == OrbitKind::SL2 ? 0 : 2 * model.indexMultiplier();
}

std::uint64_t bruteForceIntersect(const OrbitModel& model, Prime p, int j, int ballRadius) {
  if (j < 0) throw std::invalid_argument("j must be non-negative");
  if (ballRadius < 2 * j) throw std::invalid_argument("ball radius must be at least 2j");

  std::set<LocalPoint> target;
  if (j == 0) {
    target.insert({TreeVertex(p), TreeVertex(p)});
  } else {
    for (auto& point : oneSidedSupport(p, j)) target.insert(std::move(point));
  }

  std::uint64_t count = 0;
  for (std::uint64_t coset = 0; coset < model.indexMultiplier(); ++coset) {
    const RootTranslate t = model.translateFor(coset);
    validateTranslate(t, p);
    if (model.kind() == OrbitKind::Multiplicative) {
      const auto apartment = apartmentInBall(p, t.imageOfZero, t.imageOfOne, ballRadius);
      for (const auto& left : apartment) {
        for (const auto& right : apartment) count += target.count({left, right});
      }
    } else {
      tree::forEachInBall(p, ballRadius, [&](const TreeVertex& v) { count += target.count({v, t.apply(v)}); });
    }
  }
  return count;
}

mpz_class countGlobalIntersections(const OrbitModel& model, const hecke::GlobalHeckeElement& tau) {
  mpz_class total = 0;
  for (const auto& [point, c] : tau.coeffs()) {
    mpz_class term = 1;
    for (const auto& [p, radius] : point) {
      term *= static_cast<unsigned long>(orbitIntersectOneSided(model, Prime(p), radius / 2));
      if (term == 0) break;
    }
    total += term;
  }
  return total;
}

}  // namespace hamp::orbits
