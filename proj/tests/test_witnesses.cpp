#include <gtest/gtest.h>

#include <algorithm>

#include "canontop/witnesses.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace canontop;

namespace {

std::vector<CoeffGroup> coeff_fixtures() {
  return {CoeffGroup::integers(), CoeffGroup::finite(cyclic_group(2).group), CoeffGroup::finite(named_group("S3").group)};
}

std::vector<Coeff> sample_coeffs(const CoeffGroup& g) {
  if (g.is_integers()) return {1, -1, 5};
  return g.non_identity_elements();
}

long least_n(const Rational& eps) {
  long n = 1;
  while (!(Rational(1, 3 * n) < eps)) ++n;
  return n;
}

bool has_failure(const VerificationReport& r, const std::string& name) {
  auto f = r.failures();
  return std::find(f.begin(), f.end(), name) != f.end();
}

RationalSum expected_total(const CoeffGroup& g, const Coeff& a) {
  RationalSum t(g);
  t.add_term(Rational(1, 3), a);
  t.add_term(Rational(2, 3), g.inverse(a));
  return t;
}

// (η·h)(m) = h(η⁻¹(m)) against h(m) + x(m), checked on a long prefix of ω.
bool pattern_equation_holds(const CantorInstance& inst, const CantorWitness& w) {
  Nat limit = std::max<Nat>(w.eta.horizon(), w.eta.threshold()) + 60;
  for (Nat m = 0; m < limit; ++m) {
    int lhs = pattern_value(w.triple, w.eta.inverse(m));
    int rhs = pattern_value(w.triple, m) ^ (inst.x.at(m) != 0 ? 1 : 0);
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace

TEST(Separation, GridSizes) {
  auto z = CoeffGroup::integers();
  for (long den : {10, 100, 1000, 7, 3}) {
    Rational eps(1, den);
    auto b = build_separation_witness(z, 1, NbhdSpec(eps));
    EXPECT_EQ(b.n, least_n(eps)) << den;
  }
  EXPECT_EQ(build_separation_witness(z, 1, NbhdSpec(Rational(1, 10))).n, 4);
  EXPECT_EQ(build_separation_witness(z, 1, NbhdSpec(Rational(1, 100))).n, 34);
  EXPECT_EQ(build_separation_witness(z, 1, NbhdSpec(Rational(1, 1000))).n, 334);
}

TEST(Separation, ShapeAtOneTenth) {
  auto z = CoeffGroup::integers();
  auto b = build_separation_witness(z, 1, NbhdSpec(Rational(1, 10)));
  RationalSum h(z, {{Rational(1, 3), 1}, {Rational(5, 12), 1}, {Rational(1, 2), 1}, {Rational(7, 12), 1}});
  EXPECT_EQ(b.h, h);
  EXPECT_EQ(b.total, expected_total(z, 1));
  EXPECT_EQ(b.v1 + b.v2, b.total);
}

TEST(Separation, TwoElementGroupTotal) {
  auto c2 = CoeffGroup::finite(cyclic_group(2).group);
  auto b = build_separation_witness(c2, 1, NbhdSpec(Rational(1, 100)));
  EXPECT_EQ(b.total.terms().size(), 2u);
  EXPECT_EQ(b.total.support(), (std::set<Rational>{Rational(1, 3), Rational(2, 3)}));
}

TEST(Separation, RoundTripAllCoefficients) {
  for (const auto& g : coeff_fixtures())
    for (const auto& a : sample_coeffs(g))
      for (long den : {10, 100, 1000}) {
        NbhdSpec spec(Rational(1, den));
        auto b = build_separation_witness(g, a, spec);
        auto rep = verify_separation_witness(b, spec, a);
        EXPECT_TRUE(rep.all_pass()) << g.name() << " a=" << a << " eps=1/" << den;
        EXPECT_EQ(b.total, expected_total(g, a));
      }
}

TEST(Separation, RandomNeighbourhoodSpecs) {
  std::mt19937_64 rng(61);
  auto s3 = CoeffGroup::finite(named_group("S3").group);
  for (int t = 0; t < 60; ++t) {
    Coeff a = sample_coeffs(s3)[static_cast<std::size_t>(gen::uniform(rng, 0, 4))];
    auto radius = [&] { return Rational(1, gen::uniform(rng, 2, 400)); };
    NbhdSpec probe(Rational(1, 2));
    auto pre = build_separation_witness(s3, a, probe);
    RationalSum zero(s3);
    std::map<NbhdSpec::Key, Rational> radii;
    for (long q = 0; q <= 3; ++q) radii[{zero, Rational(q)}] = radius();
    radii[{pre.h, Rational(1)}] = radius();
    radii[{pre.h_prime, Rational(1)}] = radius();
    NbhdSpec spec(radius(), radii);
    auto b = build_separation_witness(s3, a, spec);
    auto rep = verify_separation_witness(b, spec, a);
    ASSERT_TRUE(rep.all_pass()) << t;
  }
}

TEST(Separation, DetectsBrokenBundles) {
  auto z = CoeffGroup::integers();
  NbhdSpec spec(Rational(1, 10));
  auto good = build_separation_witness(z, 1, spec);

  auto moved = good;
  std::vector<PLHomeo::Breakpoint> w{{0, 0}, {Rational(1, 3), Rational(1, 3) + Rational(1, 100)}, {1, 1}};
  moved.u0 = pl_compose(good.u0, PLHomeo(w));
  EXPECT_TRUE(has_failure(verify_separation_witness(moved, spec, 1), "u0-fixed-points"));

  auto coarse = good;
  coarse.n = 3;
  EXPECT_TRUE(has_failure(verify_separation_witness(coarse, spec, 1), "grid"));

  auto wrong_total = good;
  wrong_total.total = expected_total(z, 2);
  EXPECT_FALSE(verify_separation_witness(wrong_total, spec, 1).all_pass());

  auto far = good;
  std::vector<PLHomeo::Breakpoint> big{{0, 0}, {Rational(1, 10), Rational(1, 2)}, {1, 1}};
  far.u1 = PLHomeo(big);
  EXPECT_FALSE(verify_separation_witness(far, spec, 1).all_pass());
}

TEST(Separation, Errors) {
  auto z = CoeffGroup::integers();
  auto c2 = CoeffGroup::finite(cyclic_group(2).group);
  EXPECT_THROW(build_separation_witness(z, 0, NbhdSpec(Rational(1, 10))), std::invalid_argument);
  EXPECT_THROW(build_separation_witness(c2, 2, NbhdSpec(Rational(1, 10))), std::invalid_argument);
  EXPECT_THROW(build_separation_witness(z, 1, NbhdSpec(Rational(1, 10'000'000))), std::range_error);
  EXPECT_THROW(build_separation_witness(z, 1, NbhdSpec(Rational(1, 100)), 100), std::range_error);
  EXPECT_THROW(NbhdSpec(Rational(0)), std::invalid_argument);
  EXPECT_THROW(NbhdSpec(Rational(1), {{{RationalSum(z), Rational(0)}, Rational(-1)}}), std::invalid_argument);
}

TEST(Telescoping, MatchesMapOracle) {
  for (const auto& g : coeff_fixtures())
    for (const auto& a : sample_coeffs(g))
      for (long n = 1; n <= 50; ++n) {
        auto [v1, v2] = telescoping_sums(g, a, n);
        auto total = v1 + v2;
        ASSERT_EQ(total.terms(), oracle::telescoping(g, a, n)) << g.name() << " n=" << n;
        ASSERT_EQ(total, expected_total(g, a));
      }
}

TEST(Cantor, TrivialInstance) {
  CantorInstance inst;
  auto w = cantor_claim_witness(inst);
  EXPECT_TRUE(w.eta.as_fin_perm().has_value());
  EXPECT_TRUE(w.eta.as_fin_perm()->is_identity());
  EXPECT_FALSE(w.triple[0] == w.triple[1] && w.triple[1] == w.triple[2]);
  EXPECT_TRUE(verify_cantor_witness(inst, w).all_pass());
}

TEST(Cantor, SinglePointFlip) {
  CantorInstance inst;
  inst.x.add_term(4, 1);
  auto w = cantor_claim_witness(inst);
  EXPECT_TRUE(verify_cantor_witness(inst, w).all_pass());
  EXPECT_TRUE(pattern_equation_holds(inst, w));
  EXPECT_NE(w.eta(4), 4u);
}

TEST(Cantor, ExtendsGivenInjection) {
  CantorInstance inst;
  inst.alphas[triple_index({0, 0, 1})] = {{5, 8}};
  inst.x.add_term(3, 1);
  auto w = cantor_claim_witness(inst);
  EXPECT_EQ(w.triple, (Triple{0, 0, 1}));
  EXPECT_EQ(w.eta(5), 8u);
  EXPECT_TRUE(verify_cantor_witness(inst, w).all_pass());
  EXPECT_TRUE(pattern_equation_holds(inst, w));

  CantorWitness missing{w.triple, TailShiftPerm()};
  EXPECT_TRUE(has_failure(verify_cantor_witness(inst, missing), "extends-alpha"));
  CantorWitness constant{{0, 0, 0}, w.eta};
  EXPECT_TRUE(has_failure(verify_cantor_witness(inst, constant), "triple"));
}

TEST(Cantor, InvalidInstances) {
  CantorInstance clash;
  clash.alphas[0] = {{1, 4}, {2, 4}};
  EXPECT_THROW(validate_cantor_instance(clash), std::invalid_argument);
  CantorInstance incompatible;
  incompatible.alphas[triple_index({0, 0, 1})] = {{5, 7}};
  EXPECT_THROW(cantor_claim_witness(incompatible), std::invalid_argument);
  CantorInstance overlap;
  overlap.alphas[3] = {{1, 4}};
  overlap.x.add_term(4, 1);
  EXPECT_THROW(validate_cantor_instance(overlap), std::invalid_argument);
  CantorInstance wrong_group;
  wrong_group.x = NatSum(CoeffGroup::integers());
  EXPECT_THROW(validate_cantor_instance(wrong_group), std::invalid_argument);
}

TEST(Cantor, RandomInstancesProperty) {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 1000; ++t) {
    auto inst = random_cantor_instance(rng);
    for (const auto& a : inst.alphas) ASSERT_LE(a.size(), 8u);
    ASSERT_LE(inst.x.terms().size(), 8u);
    auto w = cantor_claim_witness(inst);
    auto rep = verify_cantor_witness(inst, w);
    ASSERT_TRUE(rep.all_pass()) << t;
    ASSERT_TRUE(pattern_equation_holds(inst, w)) << t;
    const auto& alpha = inst.alphas[static_cast<std::size_t>(triple_index(w.triple))];
    for (const auto& [p, q] : alpha) ASSERT_EQ(w.eta(p), q);
  }
}
