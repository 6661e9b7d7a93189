#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "canontop/formal_sum.hpp"
#include "canontop/perm.hpp"
#include "canontop/pl_homeo.hpp"
#include "canontop/rational.hpp"

namespace canontop {

struct ReportClause {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<ReportClause> clauses;

  void add(std::string name, bool pass, std::string detail = {}) {
    clauses.push_back({std::move(name), pass, std::move(detail)});
  }
  bool all_pass() const;
  /// Names of failed clauses, in order.
  std::vector<std::string> failures() const;
};

// ---------------------------------------------------------------------------
// Non-separation on [0,1].

/// Radii of sup-metric balls around id standing for the neighbourhoods
/// U^q_h; unlisted pairs get the default.
class NbhdSpec {
public:
  using Key = std::pair<RationalSum, Rational>;

  /// Throws std::invalid_argument unless every radius is positive.
  explicit NbhdSpec(Rational fallback, std::map<Key, Rational> radii = {});

  Rational radius(const RationalSum& h, const Rational& q) const;
  bool contains(const RationalSum& h, const Rational& q, const PLHomeo& u) const {
    return pl_sup_dist(u, PLHomeo::identity()) < radius(h, q);
  }
  const Rational& fallback() const { return fallback_; }
  const std::map<Key, Rational>& radii() const { return radii_; }

private:
  Rational fallback_;
  std::map<Key, Rational> radii_;
};

struct SeparationBundle {
  long n = 0;
  Rational epsilon;
  RationalSum h{CoeffGroup::integers()}, h_prime{CoeffGroup::integers()};
  PLHomeo u0, u1;              // used with h
  PLHomeo u0_prime, u1_prime;  // used with h'
  RationalSum v1{CoeffGroup::integers()}, v2{CoeffGroup::integers()}, total{CoeffGroup::integers()};
};

inline constexpr long kDefaultDenominatorBudget = 6'000'000;

/// Grid, maps and the two V-elements for the coefficient a. Throws
/// std::invalid_argument if a is the identity or outside the group,
/// std::range_error if 6n would exceed the denominator budget.
SeparationBundle build_separation_witness(const CoeffGroup& coeffs, const Coeff& a, const NbhdSpec& spec,
                                          long denominator_budget = kDefaultDenominatorBudget);

VerificationReport verify_separation_witness(const SeparationBundle& bundle, const NbhdSpec& spec, const Coeff& a);

/// Σ_{k=n}^{2n-1}(a_{k/3n} - a_{(2k+1)/6n}) and Σ_{k=n+1}^{2n}(-a_{k/3n} + a_{(2k-1)/6n}).
std::pair<RationalSum, RationalSum> telescoping_sums(const CoeffGroup& coeffs, const Coeff& a, long n);

// ---------------------------------------------------------------------------
// Pattern flipping on Cantor space. Points of ω are split into A, B, C by residue mod 3.

using Triple = std::array<int, 3>;
using PartialInjection = std::map<Nat, Nat>;

/// Index of triple (i,j,k) in {0,1}³, i most significant.
inline int triple_index(const Triple& t) { return t[0] * 4 + t[1] * 2 + t[2]; }

/// h_{i,j,k}(m): i on A, j on B, k on C.
inline int pattern_value(const Triple& t, Nat m) { return t[m % 3]; }

struct CantorInstance {
  std::array<PartialInjection, 8> alphas;
  NatSum x{CoeffGroup::finite(cyclic_group(2).group)};

  /// Union of all domains and ranges.
  std::set<Nat> touched() const;
};

/// Throws std::invalid_argument when an α is not injective, is incompatible
/// with its pattern, x is not over the 2-element group or meets I.
void validate_cantor_instance(const CantorInstance& inst);

struct CantorWitness {
  Triple triple{};
  TailShiftPerm eta;
};

/// Throws std::invalid_argument on an invalid instance and std::logic_error
/// if no triple qualifies.
CantorWitness cantor_claim_witness(const CantorInstance& inst);

VerificationReport verify_cantor_witness(const CantorInstance& inst, const CantorWitness& w);

/// Random instance with |dom α| ≤ max_domain and |support(x)| ≤ max_support.
CantorInstance random_cantor_instance(std::mt19937_64& rng, int max_domain = 8, int max_support = 8);

}  // namespace canontop
