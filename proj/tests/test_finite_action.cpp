#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "canontop/finite_action.hpp"
#include "canontop/finite_group.hpp"

using namespace canontop;

namespace {

std::vector<std::string> fixture_groups() { return {"C1", "C2", "C4", "C6", "D3", "D4", "S3", "Q8", "A4", "S4"}; }

// Union-find over the moves of the stabilizer elements.
std::set<std::set<int>> orbit_oracle(const FiniteAction& a, const std::vector<int>& fixed) {
  std::vector<int> parent(static_cast<std::size_t>(a.points()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (int g = 0; g < a.group()->order(); ++g) {
    bool fixes = std::all_of(fixed.begin(), fixed.end(), [&](int c) { return a.act(g, c) == c; });
    if (!fixes) continue;
    for (int x = 0; x < a.points(); ++x) parent[static_cast<std::size_t>(find(x))] = find(a.act(g, x));
  }
  std::map<int, std::set<int>> classes;
  for (int x = 0; x < a.points(); ++x) classes[find(x)].insert(x);
  std::set<std::set<int>> out;
  for (auto& [r, c] : classes) out.insert(c);
  return out;
}

std::set<std::set<int>> as_set(const std::vector<std::vector<int>>& v) {
  std::set<std::set<int>> out;
  for (const auto& c : v) out.emplace(c.begin(), c.end());
  return out;
}

// Counting fixed tuples per element.
std::uint64_t burnside(const FiniteAction& a, int n) {
  std::uint64_t total = 0;
  for (int g = 0; g < a.group()->order(); ++g) {
    std::uint64_t fix = 0;
    for (int x = 0; x < a.points(); ++x) fix += a.act(g, x) == x;
    std::uint64_t p = 1;
    for (int i = 0; i < n; ++i) p *= fix;
    total += p;
  }
  return total / static_cast<std::uint64_t>(a.group()->order());
}

// Open sets of G are unions of N-cosets; a subset of X is τ-open when it is
// a union of sets U·x with U open, which only needs U ranging over cosets.
bool tau_open_oracle(const FiniteTopGroup& top, const FiniteAction& a, unsigned mask) {
  const auto& g = *top.group();
  unsigned covered = 0;
  for (int h = 0; h < g.order(); ++h)
    for (int x = 0; x < a.points(); ++x) {
      unsigned basic = 0;
      for (int n : top.kernel()) basic |= 1u << a.act(g.mul(h, n), x);
      if ((basic & mask) == basic) covered |= basic;
    }
  return covered == mask;
}

std::vector<int> members(unsigned mask, int points) {
  std::vector<int> out;
  for (int x = 0; x < points; ++x)
    if (mask >> x & 1u) out.push_back(x);
  return out;
}

int power_of(const FiniteGroup& g, int gen, int target) {
  int acc = g.identity();
  for (int k = 0; k < g.order(); ++k, acc = g.mul(acc, gen))
    if (acc == target) return k;
  return -1;
}

// C4 acting on C5 through the squaring automorphism.
FiniteAction c4_on_c5() {
  GroupPtr h = cyclic_group(5).group, g = cyclic_group(4).group;
  std::vector<std::vector<int>> table(4, std::vector<int>(5));
  for (int a = 0; a < 4; ++a) {
    int k = power_of(*g, 1, a);
    for (int x = 0; x < 5; ++x) {
      int y = x;
      for (int i = 0; i < k; ++i) y = h->mul(y, y);
      table[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)] = y;
    }
  }
  return FiniteAction(g, table, h);
}

// C2 acting on C3 by inversion.
FiniteAction c2_on_c3() {
  GroupPtr h = cyclic_group(3).group;
  std::vector<int> inv(3);
  for (int x = 0; x < 3; ++x) inv[static_cast<std::size_t>(x)] = h->inv(x);
  return FiniteAction(cyclic_group(2).group, {{0, 1, 2}, inv}, h);
}

}  // namespace

TEST(FiniteGroup, RejectsBadTables) {
  EXPECT_THROW(FiniteGroup({{0, 1}, {1, 1}}), std::invalid_argument);
  EXPECT_THROW(FiniteGroup({{0, 1}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(FiniteGroup({{0, 2}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(FiniteGroup({}), std::invalid_argument);
  EXPECT_THROW(named_group("X9"), std::invalid_argument);
  EXPECT_NO_THROW(FiniteGroup({{0, 1}, {1, 0}}));
}

TEST(FiniteGroup, NormalSubgroupCounts) {
  std::map<std::string, std::size_t> expected{{"C1", 1}, {"C2", 2}, {"C4", 3}, {"C6", 4}, {"S3", 3},
                                              {"D4", 6}, {"Q8", 6}, {"A4", 3}, {"S4", 4}};
  for (const auto& [name, count] : expected) {
    auto g = named_group(name).group;
    auto ns = normal_subgroups(*g);
    EXPECT_EQ(ns.size(), count) << name;
    for (const auto& n : ns) {
      std::vector<bool> m(static_cast<std::size_t>(g->order()));
      for (int x : n) m[static_cast<std::size_t>(x)] = true;
      EXPECT_TRUE(g->is_normal_subgroup(m));
    }
  }
}

TEST(FiniteGroup, NamedGroupOrders) {
  std::map<std::string, int> expected{{"C5", 5}, {"D5", 10}, {"S4", 24}, {"A5", 60}, {"Q8", 8}};
  for (const auto& [name, order] : expected) EXPECT_EQ(named_group(name).group->order(), order);
}

TEST(FiniteTopGroup, KernelMustBeNormal) {
  auto s3 = named_group("S3").group;
  EXPECT_THROW(FiniteTopGroup(s3, {0, 1}), std::invalid_argument);
  EXPECT_NO_THROW(FiniteTopGroup(s3, {0, 2, 5}));
}

TEST(FiniteAction, RejectsBadTables) {
  auto c2 = cyclic_group(2).group;
  EXPECT_THROW(FiniteAction(c2, {{1, 0}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(FiniteAction(c2, {{0, 1}, {0, 0}}), std::invalid_argument);
  auto c3 = cyclic_group(3).group;
  // Swapping 0 with 1 is not an automorphism of C3.
  EXPECT_THROW(FiniteAction(c2, {{0, 1, 2}, {1, 0, 2}}, c3), std::invalid_argument);
}

TEST(Orbits, Examples) {
  auto s3 = FiniteAction::from_permutations(named_group("S3"));
  EXPECT_EQ(orbits(s3), (std::vector<std::vector<int>>{{0, 1, 2}}));
  std::vector<int> c{0};
  EXPECT_EQ(orbits(s3, c), (std::vector<std::vector<int>>{{0}, {1, 2}}));
  EXPECT_EQ(stabilizer(s3, c).size(), 2u);
  std::vector<int> all{0, 1, 2};
  EXPECT_EQ(stabilizer(s3, all), std::vector<int>{0});
  EXPECT_EQ(stabilizer(s3, {}).size(), 6u);
  FiniteAction trivial(cyclic_group(1).group, {{0, 1, 2, 3}});
  EXPECT_EQ(orbits(trivial).size(), 4u);
}

TEST(Orbits, MatchUnionFindAndOrbitStabilizer) {
  std::mt19937_64 rng(21);
  int cases = 0;
  for (const auto& name : fixture_groups()) {
    auto a = FiniteAction::from_permutations(named_group(name));
    for (int t = 0; t < 120; ++t, ++cases) {
      std::vector<int> fixed;
      for (int x = 0; x < a.points(); ++x)
        if (rng() % 3 == 0) fixed.push_back(x);
      ASSERT_EQ(as_set(orbits(a, fixed)), orbit_oracle(a, fixed));
      auto stab = stabilizer(a, fixed);
      for (int g : stab)
        for (int x : fixed) ASSERT_EQ(a.act(g, x), x);
    }
    for (int x = 0; x < a.points(); ++x) {
      std::set<int> orbit;
      for (int g = 0; g < a.group()->order(); ++g) orbit.insert(a.act(g, x));
      std::vector<int> one{x};
      ASSERT_EQ(orbit.size() * stabilizer(a, one).size(), static_cast<std::size_t>(a.group()->order()));
    }
  }
  EXPECT_GE(cases, 1000);
}

TEST(OrbitCount, Examples) {
  auto s3 = FiniteAction::from_permutations(named_group("S3"));
  EXPECT_EQ(orbit_count_power(s3, 0), 1u);
  EXPECT_EQ(orbit_count_power(s3, 2), 2u);
  FiniteAction trivial(cyclic_group(1).group, {{0, 1, 2}});
  EXPECT_EQ(orbit_count_power(trivial, 2), 9u);
  EXPECT_THROW(orbit_count_power(s3, 20), std::length_error);
  EXPECT_THROW(orbit_count_power(s3, 3, 26), std::length_error);
}

TEST(OrbitCount, MatchesBurnside) {
  for (const auto& name : fixture_groups()) {
    auto a = FiniteAction::from_permutations(named_group(name));
    for (int n = 0; n <= 4; ++n) EXPECT_EQ(orbit_count_power(a, n), burnside(a, n)) << name << " n=" << n;
  }
}

TEST(Tau, Examples) {
  auto pg = named_group("S3");
  auto a = FiniteAction::from_permutations(pg);
  auto disc = FiniteTopGroup::discrete(pg.group);
  std::vector<int> one{1};
  EXPECT_TRUE(tau_is_open(disc, a, one));
  auto indisc = FiniteTopGroup::indiscrete(pg.group);
  std::vector<int> all{0, 1, 2}, two{0, 1};
  EXPECT_TRUE(tau_is_open(indisc, a, all));
  EXPECT_FALSE(tau_is_open(indisc, a, two));

  auto r = check_tau_remark(disc, a);
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(r.discrete && r.hausdorff && r.t1);

  FiniteTopGroup a3(pg.group, {0, 2, 5});
  auto ra = check_tau_remark(a3, a);
  EXPECT_TRUE(ra.all_pass());
  EXPECT_FALSE(ra.t1);
  EXPECT_FALSE(ra.hausdorff);
  EXPECT_FALSE(ra.stabilizers_closed);

  FiniteAction point(pg.group, std::vector<std::vector<int>>(6, std::vector<int>{0}));
  EXPECT_TRUE(check_tau_remark(indisc, point).all_pass());
  std::vector<int> eleven(11);
  std::iota(eleven.begin(), eleven.end(), 0);
  FiniteAction big(cyclic_group(1).group, {eleven});
  EXPECT_THROW(check_tau_remark(FiniteTopGroup::discrete(big.group()), big), std::length_error);
}

TEST(Tau, OpenSetsMatchBasisOracleAndFormTopology) {
  for (const auto& name : fixture_groups()) {
    auto pg = named_group(name);
    auto a = FiniteAction::from_permutations(pg);
    if (a.points() > 6) continue;
    unsigned full = (1u << a.points()) - 1;
    for (const auto& n : normal_subgroups(*pg.group)) {
      FiniteTopGroup top(pg.group, n);
      std::vector<unsigned> open;
      for (unsigned m = 0; m <= full; ++m) {
        bool is = tau_is_open(top, a, members(m, a.points()));
        ASSERT_EQ(is, tau_open_oracle(top, a, m)) << name << " mask " << m;
        if (is) open.push_back(m);
      }
      std::set<unsigned> os(open.begin(), open.end());
      ASSERT_TRUE(os.contains(0) && os.contains(full));
      for (unsigned x : open)
        for (unsigned y : open) ASSERT_TRUE(os.contains(x | y) && os.contains(x & y));
    }
  }
}

TEST(Tau, SeparationClauseOnEveryFixture) {
  for (const auto& name : fixture_groups()) {
    auto pg = named_group(name);
    auto a = FiniteAction::from_permutations(pg);
    if (a.points() > kMaxTauPoints) continue;
    for (const auto& n : normal_subgroups(*pg.group)) {
      FiniteTopGroup top(pg.group, n);
      auto r = check_tau_remark(top, a);
      ASSERT_TRUE(r.all_pass()) << name;
      // T1 holds exactly when N moves no point.
      bool n_trivial_on_x = true;
      for (int g : n)
        for (int x = 0; x < a.points(); ++x) n_trivial_on_x &= a.act(g, x) == x;
      ASSERT_EQ(r.t1, n_trivial_on_x) << name;
      ASSERT_EQ(r.t1, r.hausdorff);
      ASSERT_EQ(r.t1, r.stabilizers_closed);
    }
  }
}

TEST(Lambda, Examples) {
  auto a = c2_on_c3();
  auto indisc = FiniteTopGroup::indiscrete(a.group());
  auto disc = FiniteTopGroup::discrete(a.group());
  std::vector<int> e{0}, all{0, 1, 2};
  EXPECT_FALSE(lambda_is_open(indisc, a, e));
  EXPECT_TRUE(lambda_is_open(indisc, a, all));
  EXPECT_TRUE(lambda_is_open(disc, a, e));
  auto plain = FiniteAction::from_permutations(named_group("S3"));
  EXPECT_THROW(lambda_is_open(disc, plain, e), std::invalid_argument);
}

TEST(Lambda, FormsInversionAndTranslationClosedTopology) {
  for (const auto& a : {c2_on_c3(), c4_on_c5()}) {
    const auto& h = *a.point_group();
    unsigned full = (1u << a.points()) - 1;
    for (const auto& n : normal_subgroups(*a.group())) {
      FiniteTopGroup top(a.group(), n);
      std::set<unsigned> open;
      for (unsigned m = 0; m <= full; ++m) {
        auto s = members(m, a.points());
        if (!lambda_is_open(top, a, s)) continue;
        open.insert(m);
        ASSERT_TRUE(tau_is_open(top, a, s));
      }
      ASSERT_TRUE(open.contains(0) && open.contains(full));
      for (unsigned x : open) {
        for (unsigned y : open) ASSERT_TRUE(open.contains(x | y) && open.contains(x & y));
        unsigned inv = 0;
        for (int p : members(x, a.points())) inv |= 1u << h.inv(p);
        ASSERT_TRUE(open.contains(inv));
        for (int l = 0; l < h.order(); ++l)
          for (int r = 0; r < h.order(); ++r) {
            unsigned t = 0;
            for (int p : members(x, a.points())) t |= 1u << h.mul(h.mul(l, p), r);
            ASSERT_TRUE(open.contains(t));
          }
      }
    }
  }
}
