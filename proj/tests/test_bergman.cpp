#include <gtest/gtest.h>

#include "canontop/bergman.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace canontop;

namespace {

// S3 element indices: 1=(0 1), 2=(0 1 2), 3=(1 2), 4=(0 2), 5=(0 2 1).
GroupPtr s3() { return named_group("S3").group; }

std::vector<int> as_vec(const std::set<int>& s) { return {s.begin(), s.end()}; }

PLHomeo pl(std::initializer_list<std::pair<Rational, Rational>> pts) {
  std::vector<PLHomeo::Breakpoint> v;
  for (const auto& [x, y] : pts) v.push_back({x, y});
  return PLHomeo(v);
}

}  // namespace

TEST(SetSpec, Membership) {
  auto g = s3();
  auto amb = AmbientGroup::finite(g);
  auto s = SetSpec::explicit_subset({1});
  EXPECT_TRUE(set_member(amb, SetSpec::star(s), 0));
  EXPECT_TRUE(set_member(amb, SetSpec::sharp(s), 0));
  EXPECT_FALSE(set_member(amb, s, 0));
  EXPECT_TRUE(set_member(amb, SetSpec::star(SetSpec::explicit_subset({2})), 5));
  EXPECT_FALSE(set_member(amb, SetSpec::sharp(SetSpec::explicit_subset({2})), 5));
  auto conj = SetSpec::conjugated({}, s);
  EXPECT_TRUE(set_member(amb, conj, 4));
  EXPECT_TRUE(set_member(amb, conj, 3));
  EXPECT_FALSE(set_member(amb, conj, 2));
  // Listing the only conjugators that produce (1 2) removes it.
  auto listed = SetSpec::conjugated({{Element(2), SetSpec::explicit_subset({})}, {Element(4), SetSpec::explicit_subset({})}},
                                    s);
  int hits = 0;
  for (int x = 0; x < 6; ++x) hits += set_member(amb, listed, x);
  EXPECT_LE(hits, 2);

  auto homeo = AmbientGroup::homeomorphisms();
  PLHomeo u = pl({{0, 0}, {Rational(1, 2), Rational(1, 4)}, {1, 1}});
  EXPECT_FALSE(set_member(homeo, SetSpec::ball(Rational(1, 10)), u));
  EXPECT_TRUE(set_member(homeo, SetSpec::ball(Rational(3, 10)), u));
  EXPECT_FALSE(set_member(homeo, SetSpec::ball(Rational(1, 4)), u));
  EXPECT_THROW(SetSpec::ball(0), std::invalid_argument);
  EXPECT_THROW(set_member(homeo, s, u), std::invalid_argument);
  EXPECT_THROW(set_member(amb, s, u), std::invalid_argument);
  EXPECT_THROW(set_member(amb, SetSpec::ball(1), 0), std::invalid_argument);
}

TEST(SetSpec, ConjugatedMatchesScanProperty) {
  std::mt19937_64 rng(41);
  auto g = named_group("D4").group;
  auto amb = AmbientGroup::finite(g);
  for (int t = 0; t < 1000; ++t) {
    auto inner = oracle::random_subset(rng, g->order(), 3);
    auto spec = SetSpec::conjugated({}, SetSpec::explicit_subset(inner));
    std::set<int> expect;
    for (int c = 0; c < g->order(); ++c)
      for (int s : inner) expect.insert(g->conjugate(c, s));
    for (int x = 0; x < g->order(); ++x) ASSERT_EQ(set_member(amb, spec, x), expect.contains(x));
  }
}

TEST(QTuple, Resolve) {
  auto d = SetSpec::explicit_subset({1}), e = SetSpec::explicit_subset({2});
  QTuple plain(d);
  EXPECT_EQ(&plain.resolve(Rational(5, 7)), &plain.fallback());
  QTuple t(d, {{Rational(0), e}});
  EXPECT_EQ(&t.resolve(0), &t.exceptions().at(0));
  EXPECT_EQ(&t.resolve(Rational(1, 2)), &t.fallback());
}

TEST(USet, Examples) {
  auto c4 = cyclic_group(4).group;
  QTuple two(SetSpec::explicit_subset({2}));
  EXPECT_EQ(u_set(c4, two, Closure::group), (std::vector<int>{0, 2}));
  EXPECT_TRUE(u_set_member(c4, two, Closure::group, 2).has_value());
  EXPECT_FALSE(u_set_member(c4, two, Closure::group, 1).has_value());
  EXPECT_FALSE(u_set_member(c4, two, Closure::group, 3).has_value());
  auto empty = u_set_member(c4, two, Closure::group, 0);
  ASSERT_TRUE(empty.has_value());
  EXPECT_TRUE(empty->empty());

  auto g = s3();
  QTuple conj(SetSpec::conjugated({}, SetSpec::explicit_subset({1})));
  EXPECT_EQ(u_set(g, conj, Closure::group), (std::vector<int>{0, 1, 2, 3, 4, 5}));
  EXPECT_THROW(u_set(g, QTuple(SetSpec::ball(1)), Closure::group), std::invalid_argument);
}

TEST(USet, ExceptionsBreakInversionSymmetry) {
  auto g = s3();
  QTuple t(SetSpec::explicit_subset({}), {{Rational(0), SetSpec::explicit_subset({1})}, {Rational(1), SetSpec::explicit_subset({3})}});
  auto u = u_set(g, t, Closure::group);
  int ab = g->mul(1, 3);
  EXPECT_TRUE(std::binary_search(u.begin(), u.end(), ab));
  EXPECT_FALSE(std::binary_search(u.begin(), u.end(), g->inv(ab)));
}

TEST(USet, ExceptionsNeedDistinctSlots) {
  // The exception at 0 may be used once; 2 comes from the default slots.
  auto c4 = cyclic_group(4).group;
  QTuple t(SetSpec::explicit_subset({2}), {{Rational(0), SetSpec::explicit_subset({1})}});
  EXPECT_EQ(u_set(c4, t, Closure::semigroup), (std::vector<int>{0, 1, 2, 3}));
  QTuple only(SetSpec::explicit_subset({}), {{Rational(0), SetSpec::explicit_subset({1})}});
  EXPECT_EQ(u_set(c4, only, Closure::semigroup), (std::vector<int>{0, 1}));
  EXPECT_EQ(u_set(c4, only, Closure::group), (std::vector<int>{0, 1, 3}));
}

TEST(USet, MinimalNeighbourhoods) {
  auto c4 = cyclic_group(4).group;
  std::vector<int> e{0}, two{2}, rot{2}, one{1};
  EXPECT_EQ(minimal_nbhd_finite(c4, e, Closure::group), std::vector<int>{0});
  EXPECT_EQ(minimal_nbhd_finite(c4, two, Closure::group), (std::vector<int>{0, 2}));
  EXPECT_EQ(minimal_nbhd_finite(s3(), rot, Closure::group), (std::vector<int>{0, 2, 5}));
  EXPECT_EQ(minimal_nbhd_finite(s3(), one, Closure::group).size(), 6u);
}

TEST(USet, AgreesWithProductEnumeration) {
  std::mt19937_64 rng(42);
  int cases = 0;
  for (const char* name : {"C2", "C3", "C4", "C6", "D3", "D4", "S3", "Q8", "A4"}) {
    auto g = named_group(name).group;
    auto amb = AmbientGroup::finite(g);
    for (int t = 0; t < 60; ++t) {
      QTuple tuple = oracle::random_finite_qtuple(rng, *g);
      auto grp = u_set(g, tuple, Closure::group);
      auto semi = u_set(g, tuple, Closure::semigroup);
      ASSERT_EQ(grp, as_vec(oracle::bounded_products(g, tuple, Closure::group))) << name;
      ASSERT_EQ(semi, as_vec(oracle::bounded_products(g, tuple, Closure::semigroup))) << name;
      ASSERT_TRUE(std::includes(grp.begin(), grp.end(), semi.begin(), semi.end()));
      ASSERT_TRUE(std::binary_search(grp.begin(), grp.end(), g->identity()));
      // A chain read backwards is decreasing, so only constant tuples are
      // guaranteed to give inversion-closed sets.
      if (tuple.exceptions().empty())
        for (int x : grp) ASSERT_TRUE(std::binary_search(grp.begin(), grp.end(), g->inv(x)));
      for (int x = 0; x < g->order(); ++x, ++cases)
        for (Closure c : {Closure::group, Closure::semigroup}) {
          auto w = u_set_member(g, tuple, c, x);
          const auto& set = c == Closure::group ? grp : semi;
          ASSERT_EQ(w.has_value(), std::binary_search(set.begin(), set.end(), x));
          if (w) ASSERT_TRUE(verify_word_witness(amb, tuple, c, *w, x));
        }
    }
  }
  EXPECT_GE(cases, 1000);
}

TEST(USet, MinimalMatchesClosureOracles) {
  std::mt19937_64 rng(43);
  for (const char* name : {"C4", "C6", "D4", "D5", "S3", "Q8", "A4", "S4"}) {
    auto g = named_group(name).group;
    for (int t = 0; t < 150; ++t) {
      auto s = oracle::random_subset(rng, g->order(), 3);
      auto grp = minimal_nbhd_finite(g, s, Closure::group);
      ASSERT_EQ(grp, as_vec(oracle::normal_closure(*g, s))) << name;
      std::vector<bool> mask(static_cast<std::size_t>(g->order()));
      for (int x : grp) mask[static_cast<std::size_t>(x)] = true;
      ASSERT_TRUE(g->is_normal_subgroup(mask));
      ASSERT_EQ(minimal_nbhd_finite(g, s, Closure::semigroup), as_vec(oracle::conjugate_monoid(*g, s))) << name;
    }
  }
}

TEST(WordWitness, Verification) {
  auto g = s3();
  auto amb = AmbientGroup::finite(g);
  QTuple t(SetSpec::explicit_subset({1}), {{Rational(0), SetSpec::explicit_subset({2})}});
  EXPECT_TRUE(verify_word_witness(amb, t, Closure::group, {}, 0));
  EXPECT_FALSE(verify_word_witness(amb, t, Closure::group, {}, 1));
  WordWitness ok{{Rational(-1), 1, FactorMode::plain}, {Rational(0), 2, FactorMode::plain}};
  EXPECT_TRUE(verify_word_witness(amb, t, Closure::semigroup, ok, g->mul(1, 2)));
  WordWitness decreasing{{Rational(0), 2, FactorMode::plain}, {Rational(-1), 1, FactorMode::plain}};
  EXPECT_FALSE(verify_word_witness(amb, t, Closure::group, decreasing, g->mul(2, 1)));
  WordWitness repeated{{Rational(0), 2, FactorMode::plain}, {Rational(0), 2, FactorMode::plain}};
  EXPECT_FALSE(verify_word_witness(amb, t, Closure::group, repeated, g->mul(2, 2)));
  WordWitness inv{{Rational(0), 5, FactorMode::inverse}};
  EXPECT_TRUE(verify_word_witness(amb, t, Closure::group, inv, 5));
  EXPECT_FALSE(verify_word_witness(amb, t, Closure::semigroup, inv, 5));
  WordWitness wrong{{Rational(0), 1, FactorMode::plain}};
  EXPECT_FALSE(verify_word_witness(amb, t, Closure::group, wrong, 1));
  WordWitness bad_id{{Rational(0), 1, FactorMode::identity}};
  EXPECT_FALSE(verify_word_witness(amb, t, Closure::group, bad_id, 1));
}

TEST(WordWitness, HomeomorphismBalls) {
  auto amb = AmbientGroup::homeomorphisms();
  QTuple t(SetSpec::ball(Rational(1, 10)));
  PLHomeo u = pl({{0, 0}, {Rational(1, 2), Rational(11, 20)}, {1, 1}});
  PLHomeo far = pl({{0, 0}, {Rational(1, 2), Rational(3, 4)}, {1, 1}});
  WordWitness w{{Rational(0), u, FactorMode::plain}, {Rational(1), pl_invert(u), FactorMode::inverse}};
  EXPECT_TRUE(verify_word_witness(amb, t, Closure::group, w, PLHomeo::identity()));
  WordWitness twice{{Rational(0), u, FactorMode::plain}, {Rational(1), u, FactorMode::plain}};
  EXPECT_TRUE(verify_word_witness(amb, t, Closure::group, twice, pl_compose(u, u)));
  WordWitness out{{Rational(0), far, FactorMode::plain}};
  EXPECT_FALSE(verify_word_witness(amb, t, Closure::group, out, far));
  EXPECT_FALSE(verify_word_witness(amb, t, Closure::group, twice, 0));
}

TEST(Thg, ElementExamples) {
  auto z = CoeffGroup::integers();
  PLHomeo u = pl({{0, 0}, {Rational(1, 2), Rational(1, 4)}, {1, 1}});
  RationalSum a = RationalSum::single(z, Rational(1, 2), 1);
  std::vector<ThgTerm<PLHomeo>> terms{{a, u}, {RationalSum(z), pl_invert(u)}};
  auto v = thg_element<PLHomeo>(z, terms);
  EXPECT_EQ(v, RationalSum(z, {{Rational(1, 2), 1}, {Rational(1, 4), -1}}));

  std::vector<ThgTerm<PLHomeo>> single{{a, PLHomeo::identity()}};
  EXPECT_TRUE(thg_element<PLHomeo>(z, single).is_zero());
  std::vector<ThgTerm<PLHomeo>> zeros{{RationalSum(z), u}, {RationalSum(z), pl_invert(u)}};
  EXPECT_TRUE(thg_element<PLHomeo>(z, zeros).is_zero());
  std::vector<ThgTerm<PLHomeo>> open{{a, u}};
  EXPECT_THROW(thg_element<PLHomeo>(z, open), std::invalid_argument);
}

TEST(Thg, MatchesDirectExpansionProperty) {
  std::mt19937_64 rng(44);
  auto s3c = CoeffGroup::finite(s3());
  for (int t = 0; t < 1000; ++t) {
    std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    std::vector<ThgTerm<FinPerm>> terms;
    FinPerm prod;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      terms.push_back({gen::nat_sum(rng, s3c, 3, 10), gen::fin_perm(rng, 10)});
      prod = perm_compose(prod, terms.back().u);
    }
    terms.push_back({gen::nat_sum(rng, s3c, 3, 10), perm_invert(prod)});
    // Term by term: the prefix acts on h_i, then the prefix extended by u_i
    // acts on h_i⁻¹.
    NatSum expect(s3c);
    FinPerm prefix;
    for (const auto& term : terms) {
      expect = expect + fs_act(prefix, term.h);
      prefix = perm_compose(prefix, term.u);
      expect = expect + fs_act(prefix, -term.h);
    }
    auto got = thg_element<FinPerm>(s3c, terms);
    ASSERT_EQ(got, expect);

    std::vector<ThgStep<FinPerm>> steps;
    for (std::size_t i = 0; i < terms.size(); ++i) steps.push_back({Rational(static_cast<long>(i)), terms[i].h, terms[i].u});
    NbhdPredicate<FinPerm> any = [](const NatSum&, const Rational&, const FinPerm&) { return true; };
    ASSERT_TRUE(verify_thg_chain<FinPerm>(s3c, steps, any, got).all());
    if (steps.size() > 1) {
      std::swap(steps[0].q, steps[1].q);
      ASSERT_FALSE(verify_thg_chain<FinPerm>(s3c, steps, any, got).chain_increasing);
    }
  }
}
