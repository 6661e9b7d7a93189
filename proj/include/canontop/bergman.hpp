#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "canontop/finite_group.hpp"
#include "canontop/formal_sum.hpp"
#include "canontop/perm.hpp"
#include "canontop/pl_homeo.hpp"
#include "canontop/rational.hpp"

namespace canontop {

/// A group element: an index into a finite group, or a PL homeomorphism.
using Element = std::variant<int, PLHomeo>;

/// The group in which neighbourhood sets live.
class AmbientGroup {
public:
  static AmbientGroup finite(GroupPtr g);
  static AmbientGroup homeomorphisms() { return AmbientGroup(nullptr); }

  bool is_finite() const { return static_cast<bool>(finite_); }
  const GroupPtr& finite_group() const { return finite_; }

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  /// Throws std::invalid_argument when the element is of the other kind.
  void check_kind(const Element& a) const;

private:
  explicit AmbientGroup(GroupPtr g) : finite_(std::move(g)) {}
  GroupPtr finite_;
};

/// A subset of the ambient group with decidable membership.
class SetSpec {
public:
  struct Node;
  struct Explicit {
    std::vector<int> members;
  };
  struct Ball {
    Rational radius;  // open sup-metric ball around the identity
  };
  struct Star {
    std::shared_ptr<const Node> inner;  // S ∪ {e} ∪ S⁻¹
  };
  struct Sharp {
    std::shared_ptr<const Node> inner;  // S ∪ {e}
  };
  struct Conjugated {
    // ⋃ g·S_g·g⁻¹ with S_g listed for finitely many g and `fallback`
    // for every other conjugator.
    std::vector<std::pair<Element, SetSpec>> listed;
    std::shared_ptr<const Node> fallback;
  };

  static SetSpec explicit_subset(std::vector<int> members);
  /// Throws std::invalid_argument unless radius > 0.
  static SetSpec ball(Rational radius);
  static SetSpec star(const SetSpec& inner);
  static SetSpec sharp(const SetSpec& inner);
  static SetSpec conjugated(std::vector<std::pair<Element, SetSpec>> listed, const SetSpec& fallback);

  const Node& node() const { return *node_; }

private:
  explicit SetSpec(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend struct Node;
  friend SetSpec spec_of(const std::shared_ptr<const Node>& n);
};

struct SetSpec::Node {
  std::variant<Explicit, Ball, Star, Sharp, Conjugated> value;
};

SetSpec spec_of(const std::shared_ptr<const SetSpec::Node>& n);

/// Exact membership. For a conjugated union over a finite group the fallback
/// is tried with every unlisted conjugator; over homeomorphisms only the
/// identity conjugator is tried for the fallback (unless listed).
/// Throws std::invalid_argument on a kind mismatch.
bool set_member(const AmbientGroup& group, const SetSpec& spec, const Element& g);

/// Finite representation of a ℚ-indexed tuple (S_q): finitely many
/// exceptions, one default for every other q.
class QTuple {
public:
  explicit QTuple(SetSpec fallback, std::map<Rational, SetSpec> exceptions = {})
      : fallback_(std::move(fallback)), exceptions_(std::move(exceptions)) {}

  const SetSpec& resolve(const Rational& q) const {
    auto it = exceptions_.find(q);
    return it == exceptions_.end() ? fallback_ : it->second;
  }
  const SetSpec& fallback() const { return fallback_; }
  const std::map<Rational, SetSpec>& exceptions() const { return exceptions_; }

private:
  SetSpec fallback_;
  std::map<Rational, SetSpec> exceptions_;
};

/// group: products of S* = S ∪ {e} ∪ S⁻¹; semigroup: products of S^# = S ∪ {e}.
enum class Closure { group, semigroup };

/// How a factor belongs to its closed set.
enum class FactorMode { plain, inverse, identity };

struct WordStep {
  Rational q;
  Element factor;
  FactorMode mode;
};
using WordWitness = std::vector<WordStep>;

/// Every element of U((S_q)) (group) or U'((S_q)) (semigroup), sorted.
/// Throws std::invalid_argument if a set spec is not over the finite group.
std::vector<int> u_set(const GroupPtr& group, const QTuple& tuple, Closure closure);

/// Exact membership in U((S_q)) / U'((S_q)) with a shortest witness word.
std::optional<WordWitness> u_set_member(const GroupPtr& group, const QTuple& tuple, Closure closure, int g);

/// Smallest U-set for the constant tuple given by all conjugates of S: the
/// normal closure for Closure::group, the monoid generated by the
/// conjugates for Closure::semigroup.
std::vector<int> minimal_nbhd_finite(const GroupPtr& group, std::span<const int> subset, Closure closure);

/// Checks that the q's strictly increase, every factor lies in the closure
/// of its resolved set and the ordered product equals `claimed`.
bool verify_word_witness(const AmbientGroup& group, const QTuple& tuple, Closure closure, const WordWitness& witness,
                         const Element& claimed);

// ---------------------------------------------------------------------------
// Basic neighbourhoods of e in T(H(X), G).

template <class U>
struct ActingGroup;

template <>
struct ActingGroup<PLHomeo> {
  using Index = Rational;
  static PLHomeo identity() { return PLHomeo::identity(); }
  static PLHomeo compose(const PLHomeo& a, const PLHomeo& b) { return pl_compose(a, b); }
};

template <>
struct ActingGroup<FinPerm> {
  using Index = Nat;
  static FinPerm identity() { return {}; }
  static FinPerm compose(const FinPerm& a, const FinPerm& b) { return perm_compose(a, b); }
};

template <class U>
struct ThgTerm {
  FormalSum<typename ActingGroup<U>::Index> h;
  U u;
};

/// h₁·u₁(h₁⁻¹) + u₁(h₂·u₂(h₂⁻¹)) + u₁u₂(h₃·u₃(h₃⁻¹)) + …
/// Throws std::invalid_argument unless u₁⋯uₙ = e.
template <class U>
FormalSum<typename ActingGroup<U>::Index> thg_element(const CoeffGroup& coeffs, std::span<const ThgTerm<U>> terms) {
  using G = ActingGroup<U>;
  U product = G::identity();
  for (const auto& t : terms) product = G::compose(product, t.u);
  if (!(product == G::identity())) throw std::invalid_argument("u-product is not the identity");
  FormalSum<typename G::Index> result(coeffs);
  U prefix = G::identity();
  for (const auto& t : terms) {
    auto local = fs_combine(t.h, fs_act(t.u, fs_inverse(t.h)));
    result = fs_combine(result, fs_act(prefix, local));
    prefix = G::compose(prefix, t.u);
  }
  return result;
}

template <class U>
struct ThgStep {
  Rational q;
  FormalSum<typename ActingGroup<U>::Index> h;
  U u;
};

/// Predicate u ∈ U^q_h for a tuple of neighbourhoods of e in G.
template <class U>
using NbhdPredicate =
    std::function<bool(const FormalSum<typename ActingGroup<U>::Index>& h, const Rational& q, const U& u)>;

struct ThgCheck {
  bool chain_increasing = false;
  bool memberships = false;
  bool product_identity = false;
  bool value_matches = false;
  bool all() const { return chain_increasing && memberships && product_identity && value_matches; }
};

/// Re-checks that `claimed` is the element of the basic neighbourhood
/// witnessed by `steps`.
template <class U>
ThgCheck verify_thg_chain(const CoeffGroup& coeffs, std::span<const ThgStep<U>> steps, const NbhdPredicate<U>& in_nbhd,
                          const FormalSum<typename ActingGroup<U>::Index>& claimed) {
  ThgCheck check;
  check.chain_increasing = true;
  check.memberships = true;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0 && !(steps[i - 1].q < steps[i].q)) check.chain_increasing = false;
    if (!in_nbhd(steps[i].h, steps[i].q, steps[i].u)) check.memberships = false;
  }
  std::vector<ThgTerm<U>> terms;
  U product = ActingGroup<U>::identity();
  for (const auto& s : steps) {
    terms.push_back({s.h, s.u});
    product = ActingGroup<U>::compose(product, s.u);
  }
  check.product_identity = product == ActingGroup<U>::identity();
  if (check.product_identity)
    check.value_matches = thg_element<U>(coeffs, std::span<const ThgTerm<U>>(terms)) == claimed;
  return check;
}

}  // namespace canontop
