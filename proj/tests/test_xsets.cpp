#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pmce/bitset.hpp"
#include "pmce/xsets.hpp"

using namespace pmce;

namespace {

std::multiset<xindex_t> as_set(std::span<const xindex_t> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(XState, InitEmpty) {
  XState xs(64, 4);
  xs.init({});
  EXPECT_EQ(xs.lpx(0), 0u);
  EXPECT_EQ(xs.depth(), 0u);
  EXPECT_TRUE(xs.x_empty());
}

TEST(XState, InitWithRootX) {
  XState xs(64, 4);
  const std::vector<xindex_t> root = {0, 3};
  xs.init(root);
  EXPECT_EQ(xs.lpx(0), 2u);
  EXPECT_EQ(std::vector<xindex_t>(xs.xx_prefix().begin(), xs.xx_prefix().end()), root);
  EXPECT_FALSE(xs.x_empty());
}

TEST(XState, DescendPartitionsPrefix) {
  XState xs(64, 4);
  const std::vector<xindex_t> root = {7, 3, 9, 5};
  xs.init(root);
  const std::set<xindex_t> nv = {3, 5};
  xs.descend(Bitset(64), [&](xindex_t x) { return nv.count(x) > 0; });
  EXPECT_EQ(xs.lpx(1), 2u);
  EXPECT_EQ(as_set(xs.xx_prefix()), (std::multiset<xindex_t>{3, 5}));
  auto all = xs.xx_all();
  EXPECT_EQ(as_set(all.subspan(2, 2)), (std::multiset<xindex_t>{7, 9}));
  // Stable: survivors keep their relative order.
  EXPECT_EQ(all[0], 3u);
  EXPECT_EQ(all[1], 5u);
}

TEST(XState, DescendAllOrNothing) {
  XState xs(64, 4);
  const std::vector<xindex_t> root = {1, 2, 3};
  xs.init(root);
  xs.descend(Bitset(64), [](xindex_t) { return true; });
  EXPECT_EQ(xs.lpx(1), 3u);
  EXPECT_EQ(as_set(xs.xx_prefix()), as_set(root));
  xs.descend(Bitset(64), [](xindex_t) { return false; });
  EXPECT_EQ(xs.lpx(2), 0u);
  EXPECT_TRUE(xs.x_empty());
}

TEST(XState, BacktrackRestoresSet) {
  XState xs(64, 4);
  const std::vector<xindex_t> root = {4, 8, 15, 16, 23, 42};
  xs.init(root);
  xs.descend(Bitset(64), [](xindex_t x) { return x % 2 == 0; });
  const auto level1 = as_set(xs.xx_prefix());
  xs.descend(Bitset(64), [](xindex_t x) { return x > 10; });
  xs.backtrack();
  EXPECT_EQ(as_set(xs.xx_prefix()), level1);
  xs.backtrack();
  EXPECT_EQ(as_set(xs.xx_prefix()), as_set(root));
  EXPECT_THROW(xs.backtrack(), ContractViolation);
}

TEST(XState, DepthOverflowThrows) {
  XState xs(64, 2);
  xs.init({});
  xs.descend(Bitset(64), [](xindex_t) { return false; });
  EXPECT_THROW(xs.descend(Bitset(64), [](xindex_t) { return false; }), ContractViolation);
}

TEST(XState, XEmptyCases) {
  XState xs(64, 3);
  const std::vector<xindex_t> root = {1};
  xs.init(root);
  EXPECT_FALSE(xs.x_empty());  // lpX > 0
  xs.descend(Bitset(64), [](xindex_t) { return false; });
  EXPECT_TRUE(xs.x_empty());
  xs.move_branch_vertex(5);
  EXPECT_FALSE(xs.x_empty());  // X_P nonzero
}

TEST(XState, WorkingXPAccumulatesPerLevel) {
  // K4 on P-local ids {0,1,2,3}: branch on 0, then 1 inside it.
  XState xs(64, 5);
  xs.init({});
  Bitset n0(64);
  for (std::size_t i : {1, 2, 3}) n0.set(i);
  Bitset child(64);
  child.assign_and(xs.xp(), n0);
  xs.descend(child, [](xindex_t) { return false; });
  EXPECT_TRUE(xs.xp().none());
  xs.move_branch_vertex(1);
  Bitset n2(64);
  for (std::size_t i : {0, 1, 3}) n2.set(i);
  child.assign_and(xs.xp(), n2);
  EXPECT_EQ(child.to_vector(), (std::vector<std::size_t>{1}));
  xs.backtrack();
  xs.move_branch_vertex(0);
  EXPECT_EQ(xs.xp().to_vector(), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(xs.xp_at_entry().none());
}

TEST(XState, RandomWalksMatchRecomputation) {
  std::mt19937_64 rng(11);
  for (int walk = 0; walk < 100; ++walk) {
    const std::size_t rootn = rng() % 40;
    std::vector<xindex_t> root(rootn);
    for (std::size_t i = 0; i < rootn; ++i) root[i] = static_cast<xindex_t>(i);
    // Random adjacency between "branch vertices" 0..19 and X members.
    std::vector<std::vector<bool>> adj(20, std::vector<bool>(rootn));
    for (auto& row : adj)
      for (std::size_t i = 0; i < rootn; ++i) row[i] = rng() % 4 != 0;

    XState xs(64, 12);
    xs.init(root);
    std::vector<std::size_t> path;
    for (int step = 0; step < 60; ++step) {
      const bool down = xs.depth() + 1 < xs.max_levels() && (path.empty() || rng() % 3 != 0);
      if (down) {
        const std::size_t v = rng() % 20;
        const auto old = as_set(xs.xx_prefix());
        xs.descend(Bitset(64), [&](xindex_t x) { return adj[v][x]; });
        path.push_back(v);
        std::multiset<xindex_t> displaced(xs.xx_all().begin() + static_cast<std::ptrdiff_t>(xs.lpx(xs.depth())),
                                          xs.xx_all().begin() + static_cast<std::ptrdiff_t>(xs.lpx(xs.depth() - 1)));
        auto merged = as_set(xs.xx_prefix());
        merged.insert(displaced.begin(), displaced.end());
        EXPECT_EQ(merged, old);
      } else if (!path.empty()) {
        xs.backtrack();
        path.pop_back();
      }
      std::multiset<xindex_t> expect;
      for (xindex_t x : root) {
        bool keep = true;
        for (std::size_t v : path) keep = keep && adj[v][x];
        if (keep) expect.insert(x);
      }
      ASSERT_EQ(as_set(xs.xx_prefix()), expect);
      for (std::size_t l = 1; l <= xs.depth(); ++l) EXPECT_LE(xs.lpx(l), xs.lpx(l - 1));
    }
  }
}

TEST(XState, AllocationIsLinearInXPlusQuadraticInLevels) {
  const std::size_t d = 100, delta = 5000;
  XState xs(128, d + 2);
  std::vector<xindex_t> root(delta);
  for (std::size_t i = 0; i < delta; ++i) root[i] = static_cast<xindex_t>(i);
  xs.init(root);
  // One X array plus scratch, and two 128-bit sets per level.
  EXPECT_LE(xs.allocated_bytes(), 2 * delta * sizeof(xindex_t) + (d + 2) * (2 * 16 + sizeof(std::size_t)));
}
