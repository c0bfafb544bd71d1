#include "hamp/tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hamp::tree {
namespace {

mpz_class power(std::uint64_t base, int exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, static_cast<unsigned long>(exponent));
  return out;
}

void requireNonnegative(int r, const char* what) {
  if (r < 0) throw std::invalid_argument(std::string(what) + " must be non-negative");
}

}  // namespace

TreeVertex::TreeVertex(Prime p) : prime_(p) {}

TreeVertex::TreeVertex(Prime p, std::vector<std::uint32_t> word) : prime_(p), word_(std::move(word)) {
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (word_[i] >= digitRange(i)) {
      throw std::invalid_argument("digit " + std::to_string(word_[i]) + " out of range at position " +
                                  std::to_string(i));
    }
  }
}

std::uint32_t TreeVertex::digitRange(std::size_t index) const noexcept {
  const auto p = static_cast<std::uint32_t>(prime_.value());
  return index == 0 ? p + 1 : p;
}

TreeVertex TreeVertex::child(std::uint32_t digit) const {
  auto word = word_;
  word.push_back(digit);
  return TreeVertex(prime_, std::move(word));
}

std::vector<TreeVertex> TreeVertex::neighbors() const {
  std::vector<TreeVertex> out;
  if (!isRoot()) out.emplace_back(prime_, std::vector<std::uint32_t>(word_.begin(), word_.end() - 1));
  const std::uint32_t range = digitRange(word_.size());
  for (std::uint32_t d = 0; d < range; ++d) out.push_back(child(d));
  return out;
}

bool TreeVertex::advanceWithinSphere() noexcept {
  for (std::size_t i = word_.size(); i-- > 0;) {
    if (word_[i] + 1 < digitRange(i)) {
      ++word_[i];
      std::fill(word_.begin() + static_cast<std::ptrdiff_t>(i) + 1, word_.end(), 0);
      return true;
    }
  }
  return false;
}

std::string TreeVertex::toString() const {
  if (word_.empty()) return "o";
  std::string out;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(word_[i]);
  }
  return out;
}

TreeVertex canonicalVertex(Prime p, int r) {
  requireNonnegative(r, "radius");
  return TreeVertex(p, std::vector<std::uint32_t>(static_cast<std::size_t>(r), 0));
}

mpz_class sphereSize(Prime p, int r) {
  requireNonnegative(r, "radius");
  if (r == 0) return 1;
  return mpz_class(p.value() + 1) * power(p.value(), r - 1);
}

std::vector<TreeVertex> sphere(Prime p, int r) {
  const mpz_class size = sphereSize(p, r);
  if (r > kMaxMaterializedRadius || p.value() > kMaxMaterializedPrime || size > kMaxMaterializedVertices) {
    throw std::length_error("sphere too large to materialize; use forEachInSphere");
  }
  std::vector<TreeVertex> out;
  out.reserve(size.get_ui());
  forEachInSphere(p, r, [&](const TreeVertex& v) { out.push_back(v); });
  return out;
}

int distance(const TreeVertex& v, const TreeVertex& w) {
  if (v.prime() != w.prime()) throw std::invalid_argument("vertices live in trees of different primes");
  const auto a = v.word();
  const auto b = w.word();
  const auto mismatch = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
  const auto common = static_cast<int>(mismatch.first - a.begin());
  return v.depth() + w.depth() - 2 * common;
}

mpz_class pathCount(Prime p, int a, int b, int r) {
  requireNonnegative(a, "a");
  requireNonnegative(b, "b");
  requireNonnegative(r, "r");
  const std::uint64_t q = p.value();
  mpz_class total = 0;
  // k is the length of the common prefix of z and y = 0^r.
  for (int k = 0; k <= std::min(a, r); ++k) {
    if (k == a) {
      // z is a prefix of y
      if (r - a == b) total += 1;
    } else if (k == r) {
      // z extends y
      if (a - r == b) total += (r == 0) ? sphereSize(p, a) : power(q, a - r);
    } else if (a + r - 2 * k == b) {
      // z leaves y after k digits
      const std::uint64_t branches = (k == 0) ? q : q - 1;
      total += mpz_class(branches) * power(q, a - k - 1);
    }
  }
  return total;
}

mpz_class convolutionCount(Prime p, int a, int b, int r) {
  if (a % 2 != 0 || b % 2 != 0 || r % 2 != 0) {
    throw std::invalid_argument("Hecke radii must be even");
  }
  if (r > a + b) throw std::invalid_argument("r exceeds a + b");
  return pathCount(p, a, b, r);
}

std::uint64_t countByEnumeration(const TreeVertex& y, int a, int b) {
  std::uint64_t count = 0;
  forEachInSphere(y.prime(), a, [&](const TreeVertex& z) {
    if (distance(z, y) == b) ++count;
  });
  return count;
}

}  // namespace hamp::tree
