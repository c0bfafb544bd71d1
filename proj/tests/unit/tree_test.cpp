#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "hamp/tree.hpp"

using namespace hamp;
using namespace hamp::tree;

namespace {

TreeVertex randomVertex(Prime p, int depth, std::mt19937_64& rng) {
  std::vector<std::uint32_t> word;
  for (int i = 0; i < depth; ++i) word.push_back(static_cast<std::uint32_t>(rng() % (i == 0 ? p + 1 : p)));
  return TreeVertex(p, word);
}

// Explicit ball with adjacency lists, distances by breadth-first search.
class ExplicitBall {
 public:
  ExplicitBall(Prime p, int radius) {
    forEachInBall(p, radius, [&](const TreeVertex& v) {
      index_.emplace(v, vertices_.size());
      vertices_.push_back(v);
    });
    adjacency_.resize(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const auto& v = vertices_[i];
      if (v.isRoot()) continue;
      std::vector<std::uint32_t> parent(v.word().begin(), v.word().end() - 1);
      const std::size_t j = index_.at(TreeVertex(p, parent));
      adjacency_[i].push_back(j);
      adjacency_[j].push_back(i);
    }
  }

  std::size_t size() const { return vertices_.size(); }
  const TreeVertex& at(std::size_t i) const { return vertices_[i]; }

  std::vector<int> distancesFrom(std::size_t source) const {
    std::vector<int> dist(vertices_.size(), -1);
    std::deque<std::size_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto w : adjacency_[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return dist;
  }

 private:
  std::vector<TreeVertex> vertices_;
  std::map<TreeVertex, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

// Path counts from exhaustive enumeration of explicit balls (p, a, b, r, count).
struct FrozenCount {
  std::uint64_t p;
  int a, b, r;
  unsigned long count;
};

const std::vector<FrozenCount>& frozenCounts() {
  static const std::vector<FrozenCount> table{
      {2, 0, 0, 0, 1},   {2, 0, 2, 2, 1},  {2, 0, 4, 4, 1},  {2, 2, 0, 2, 1},  {2, 2, 2, 0, 6},   {2, 2, 2, 2, 1},
      {2, 2, 2, 4, 1},   {2, 2, 4, 2, 4},  {2, 2, 4, 4, 1},  {2, 2, 4, 6, 1},  {2, 4, 0, 4, 1},   {2, 4, 2, 2, 4},
      {2, 4, 2, 4, 1},   {2, 4, 2, 6, 1},  {2, 4, 4, 0, 24}, {2, 4, 4, 2, 4},  {2, 4, 4, 4, 2},   {2, 4, 4, 6, 1},
      {2, 4, 4, 8, 1},   {3, 2, 2, 0, 12}, {3, 2, 2, 2, 2},  {3, 2, 2, 4, 1},  {3, 2, 4, 2, 9},   {3, 2, 4, 4, 2},
      {3, 2, 4, 6, 1},   {3, 4, 2, 2, 9},  {3, 4, 2, 4, 2},  {3, 4, 2, 6, 1},  {3, 4, 4, 0, 108}, {3, 4, 4, 2, 18},
      {3, 4, 4, 4, 6},   {3, 4, 4, 6, 2},  {3, 4, 4, 8, 1},  {5, 2, 2, 0, 30}, {5, 2, 2, 2, 4},   {5, 2, 2, 4, 1},
      {5, 2, 4, 2, 25},  {5, 2, 4, 4, 4},  {5, 2, 4, 6, 1},  {5, 4, 4, 0, 750}, {5, 4, 4, 2, 100}, {5, 4, 4, 4, 20},
      {5, 4, 4, 6, 4},   {5, 4, 4, 8, 1},
  };
  return table;
}

}  // namespace

TEST(TreeVertex, RootAndWords) {
  const Prime p(3);
  const TreeVertex root(p);
  EXPECT_TRUE(root.isRoot());
  EXPECT_EQ(root.toString(), "o");
  EXPECT_EQ(root.neighbors().size(), 4u);
  const TreeVertex v(p, {3, 0, 2});
  EXPECT_EQ(v.depth(), 3);
  EXPECT_EQ(v.toString(), "3.0.2");
  EXPECT_EQ(v.neighbors().size(), 4u);
  EXPECT_THROW(TreeVertex(p, {4}), std::invalid_argument);
  EXPECT_THROW(TreeVertex(p, {0, 3}), std::invalid_argument);
  EXPECT_THROW(Prime(4), std::invalid_argument);
}

TEST(TreeVertex, NeighborsAreAtDistanceOne) {
  const Prime p(5);
  const TreeVertex v(p, {5, 1});
  for (const auto& w : v.neighbors()) EXPECT_EQ(distance(v, w), 1);
}

TEST(Sphere, SmallExamples) {
  EXPECT_EQ(sphere(Prime(2), 0).size(), 1u);
  EXPECT_TRUE(sphere(Prime(2), 0).front().isRoot());
  EXPECT_EQ(sphere(Prime(2), 1).size(), 3u);
  EXPECT_EQ(sphere(Prime(2), 2).size(), 6u);
  EXPECT_EQ(sphere(Prime(3), 4).size(), 108u);
}

TEST(Sphere, FrozenSizes) {
  const std::vector<unsigned long> two{1, 3, 6, 12, 24}, three{1, 4, 12, 36, 108};
  for (int r = 0; r <= 4; ++r) {
    EXPECT_EQ(sphereSize(Prime(2), r), two[static_cast<std::size_t>(r)]);
    EXPECT_EQ(sphereSize(Prime(3), r), three[static_cast<std::size_t>(r)]);
  }
}

TEST(Sphere, EnumerationMatchesClosedForm) {
  for (auto p : primesInRange(2, 11)) {
    for (int r = 0; r <= 8; ++r) {
      std::uint64_t count = 0;
      forEachInSphere(Prime(p), r, [&](const TreeVertex&) { ++count; });
      EXPECT_EQ(sphereSize(Prime(p), r), count) << "p=" << p << " r=" << r;
    }
  }
}

TEST(Sphere, EveryVertexHasTheRightDepthAndIsDistinct) {
  const auto s = sphere(Prime(3), 5);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  std::set<TreeVertex> distinct(s.begin(), s.end());
  EXPECT_EQ(distinct.size(), s.size());
  for (const auto& v : s) EXPECT_EQ(distance(v, TreeVertex(Prime(3))), 5);
}

TEST(Sphere, MaterializationCap) {
  EXPECT_THROW(sphere(Prime(17), 2), std::length_error);
  EXPECT_THROW(sphere(Prime(2), 9), std::length_error);
  EXPECT_THROW(sphere(Prime(13), 8), std::length_error);
  std::uint64_t streamed = 0;
  forEachInSphere(Prime(17), 3, [&](const TreeVertex&) { ++streamed; });
  EXPECT_EQ(sphereSize(Prime(17), 3), streamed);
}

TEST(Distance, Examples) {
  const Prime p(2);
  const TreeVertex o(p);
  EXPECT_EQ(distance(o, o), 0);
  EXPECT_EQ(distance(TreeVertex(p, {0}), TreeVertex(p, {1})), 2);
  EXPECT_EQ(distance(TreeVertex(p, {0, 1, 1}), TreeVertex(p, {0, 1, 0, 0})), 3);
  EXPECT_THROW(distance(TreeVertex(Prime(2)), TreeVertex(Prime(3))), std::invalid_argument);
}

TEST(Distance, MatchesBreadthFirstSearch) {
  std::mt19937_64 rng(20240611);
  for (std::uint64_t value : {2u, 3u, 5u}) {
    const Prime p(value);
    const ExplicitBall ball(p, 8);
    for (int source = 0; source < 20; ++source) {
      const std::size_t i = rng() % ball.size();
      const auto dist = ball.distancesFrom(i);
      for (int target = 0; target < 10; ++target) {
        const std::size_t j = rng() % ball.size();
        ASSERT_EQ(distance(ball.at(i), ball.at(j)), dist[j]) << ball.at(i).toString() << " " << ball.at(j).toString();
      }
    }
  }
}

TEST(Distance, MetricAxioms) {
  std::mt19937_64 rng(7);
  const Prime p(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto u = randomVertex(p, static_cast<int>(rng() % 7), rng);
    const auto v = randomVertex(p, static_cast<int>(rng() % 7), rng);
    const auto w = randomVertex(p, static_cast<int>(rng() % 7), rng);
    EXPECT_EQ(distance(u, v), distance(v, u));
    EXPECT_LE(distance(u, w), distance(u, v) + distance(v, w));
    EXPECT_EQ(distance(u, v) == 0, u == v);
  }
}

TEST(ConvolutionCount, IdentityBlockCoefficients) {
  for (auto value : {2ul, 3ul, 5ul, 7ul, 11ul}) {
    const Prime p(value);
    EXPECT_EQ(convolutionCount(p, 2, 2, 0), value * (value + 1));
    EXPECT_EQ(convolutionCount(p, 2, 2, 2), value - 1);
    EXPECT_EQ(convolutionCount(p, 2, 2, 4), 1);
  }
  EXPECT_EQ(convolutionCount(Prime(2), 4, 2, 6), 1);
}

TEST(ConvolutionCount, FrozenEnumerationTable) {
  std::set<std::tuple<std::uint64_t, int, int, int>> listed;
  for (const auto& e : frozenCounts()) {
    EXPECT_EQ(convolutionCount(Prime(e.p), e.a, e.b, e.r), e.count) << e.p << " " << e.a << " " << e.b << " " << e.r;
    listed.emplace(e.p, e.a, e.b, e.r);
  }
  // every p = 2 entry with a, b <= 4 not in the table is zero
  for (int a = 0; a <= 4; a += 2) {
    for (int b = 0; b <= 4; b += 2) {
      for (int r = 0; r <= a + b; r += 2) {
        if (!listed.count({2, a, b, r})) EXPECT_EQ(convolutionCount(Prime(2), a, b, r), 0) << a << " " << b << " " << r;
      }
    }
  }
}

TEST(ConvolutionCount, AgreesWithEnumeration) {
  for (auto value : {2ul, 3ul, 5ul}) {
    const Prime p(value);
    for (int a = 0; a <= 6; a += 2) {
      for (int b = 0; b <= 6; b += 2) {
        for (int r = 0; r <= a + b && r <= 8; r += 2) {
          EXPECT_EQ(convolutionCount(p, a, b, r), countByEnumeration(canonicalVertex(p, r), a, b));
        }
      }
    }
  }
}

TEST(ConvolutionCount, IndependentOfTheChosenVertex) {
  std::mt19937_64 rng(99);
  for (auto value : {2ul, 3ul}) {
    const Prime p(value);
    for (int a = 2; a <= 4; a += 2) {
      for (int b = 2; b <= 4; b += 2) {
        for (int r = 0; r <= a + b; r += 2) {
          for (int k = 0; k < 5; ++k) {
            EXPECT_EQ(convolutionCount(p, a, b, r), countByEnumeration(randomVertex(p, r, rng), a, b));
          }
        }
      }
    }
  }
}

TEST(ConvolutionCount, MassConservation) {
  for (auto value : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
    const Prime p(value);
    for (int a = 0; a <= 8; a += 2) {
      for (int b = 0; b <= 8; b += 2) {
        mpz_class total = 0;
        for (int r = 0; r <= a + b; r += 2) total += convolutionCount(p, a, b, r) * sphereSize(p, r);
        EXPECT_EQ(total, sphereSize(p, a) * sphereSize(p, b));
      }
    }
  }
}

TEST(ConvolutionCount, DoubleCosetSymmetry) {
  for (auto value : {2ul, 3ul, 5ul, 7ul}) {
    const Prime p(value);
    for (int a = 0; a <= 8; a += 2) {
      for (int b = 0; b <= 8; b += 2) {
        for (int r = 0; r <= 8; r += 2) {
          const auto lhs = r <= a + b ? convolutionCount(p, a, b, r) * sphereSize(p, r) : mpz_class(0);
          const auto rhs = a <= r + b ? convolutionCount(p, r, b, a) * sphereSize(p, a) : mpz_class(0);
          EXPECT_EQ(lhs, rhs) << a << " " << b << " " << r;
        }
      }
    }
  }
}

TEST(ConvolutionCount, RejectsOddAndOutOfRange) {
  EXPECT_THROW(convolutionCount(Prime(2), 1, 2, 2), std::invalid_argument);
  EXPECT_THROW(convolutionCount(Prime(2), 2, 3, 2), std::invalid_argument);
  EXPECT_THROW(convolutionCount(Prime(2), 2, 2, 3), std::invalid_argument);
  EXPECT_THROW(convolutionCount(Prime(2), 2, 2, 6), std::invalid_argument);
  EXPECT_EQ(pathCount(Prime(2), 1, 1, 2), 1);
  EXPECT_EQ(pathCount(Prime(3), 1, 1, 0), 4);
}
