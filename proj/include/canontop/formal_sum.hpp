#pragma once

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "canontop/finite_action.hpp"
#include "canontop/finite_group.hpp"
#include "canontop/perm.hpp"
#include "canontop/pl_homeo.hpp"
#include "canontop/rational.hpp"

namespace canontop {

/// Coefficient value: an integer for H = ℤ, an element index for a finite H.
using Coeff = BigInt;

/// The coefficient group H of H(X): either ℤ or a finite group table.
class CoeffGroup {
public:
  static CoeffGroup integers() { return CoeffGroup(nullptr); }
  static CoeffGroup finite(GroupPtr g);

  bool is_integers() const { return !finite_; }
  const GroupPtr& finite_group() const { return finite_; }

  Coeff identity() const { return finite_ ? Coeff(finite_->identity()) : Coeff(0); }
  bool is_identity(const Coeff& c) const { return c == identity(); }
  bool contains(const Coeff& c) const { return !finite_ || (c >= 0 && c < finite_->order()); }
  Coeff op(const Coeff& a, const Coeff& b) const {
    if (!finite_) return a + b;
    return Coeff(finite_->mul(static_cast<int>(a.get_si()), static_cast<int>(b.get_si())));
  }
  Coeff inverse(const Coeff& a) const {
    if (!finite_) return -a;
    return Coeff(finite_->inv(static_cast<int>(a.get_si())));
  }
  /// All non-identity elements (finite case only).
  std::vector<Coeff> non_identity_elements() const;
  std::string name() const;
  std::string label(const Coeff& c) const;

  friend bool operator==(const CoeffGroup& a, const CoeffGroup& b) {
    if (a.finite_ == b.finite_) return true;
    return a.finite_ && b.finite_ && *a.finite_ == *b.finite_;
  }

private:
  explicit CoeffGroup(GroupPtr g) : finite_(std::move(g)) {}
  GroupPtr finite_;
};

/// Element of the restricted direct sum H(X) = ⊕ₓ Hₓ: a finite map from
/// indices to non-identity coefficients. Distinct indices commute, so the
/// map form is exact even for non-abelian H; the group operation is written
/// additively to match the usual notation.
template <class Index>
class FormalSum {
public:
  explicit FormalSum(CoeffGroup group) : group_(std::move(group)) {}
  /// Terms are combined left to right, so repeated indices are allowed.
  FormalSum(CoeffGroup group, const std::vector<std::pair<Index, Coeff>>& terms) : group_(std::move(group)) {
    for (const auto& [i, c] : terms) add_term(i, c);
  }
  static FormalSum single(CoeffGroup group, Index index, Coeff c) {
    FormalSum y(std::move(group));
    y.add_term(index, c);
    return y;
  }

  const CoeffGroup& group() const { return group_; }
  const std::map<Index, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff at(const Index& i) const {
    auto it = terms_.find(i);
    return it == terms_.end() ? group_.identity() : it->second;
  }
  std::set<Index> support() const {
    std::set<Index> s;
    for (const auto& [i, c] : terms_) s.insert(i);
    return s;
  }

  /// this := this + c_i (coefficient multiplied on the right at index i).
  void add_term(const Index& i, const Coeff& c) {
    if (!group_.contains(c)) throw std::invalid_argument("coefficient outside " + group_.name());
    auto it = terms_.find(i);
    Coeff v = group_.op(it == terms_.end() ? group_.identity() : it->second, c);
    if (group_.is_identity(v)) {
      if (it != terms_.end()) terms_.erase(it);
    } else if (it == terms_.end()) {
      terms_.emplace(i, std::move(v));
    } else {
      it->second = std::move(v);
    }
  }

  friend bool operator==(const FormalSum& a, const FormalSum& b) {
    return a.group_ == b.group_ && a.terms_ == b.terms_;
  }
  friend bool operator<(const FormalSum& a, const FormalSum& b) { return a.terms_ < b.terms_; }

private:
  CoeffGroup group_;
  std::map<Index, Coeff> terms_;
};

using RationalSum = FormalSum<Rational>;
using NatSum = FormalSum<Nat>;

/// Pointwise product; throws std::invalid_argument when the coefficient
/// groups differ.
template <class Index>
FormalSum<Index> fs_combine(const FormalSum<Index>& a, const FormalSum<Index>& b) {
  if (!(a.group() == b.group())) throw std::invalid_argument("formal sums over different coefficient groups");
  FormalSum<Index> out = a;
  for (const auto& [i, c] : b.terms()) out.add_term(i, c);
  return out;
}

template <class Index>
FormalSum<Index> fs_inverse(const FormalSum<Index>& a) {
  FormalSum<Index> out(a.group());
  for (const auto& [i, c] : a.terms()) out.add_term(i, a.group().inverse(c));
  return out;
}

template <class Index>
FormalSum<Index> operator+(const FormalSum<Index>& a, const FormalSum<Index>& b) {
  return fs_combine(a, b);
}
template <class Index>
FormalSum<Index> operator-(const FormalSum<Index>& a) {
  return fs_inverse(a);
}
template <class Index>
FormalSum<Index> operator-(const FormalSum<Index>& a, const FormalSum<Index>& b) {
  return fs_combine(a, fs_inverse(b));
}

/// Relocates every index through f; f must be injective on the support.
template <class Index, class F>
FormalSum<Index> relocate(const FormalSum<Index>& y, F&& f) {
  FormalSum<Index> out(y.group());
  for (const auto& [i, c] : y.terms()) {
    Index j = f(i);
    if (out.terms().contains(j)) throw std::invalid_argument("index map is not injective");
    out.add_term(j, c);
  }
  return out;
}

/// g·((h₁)_{x₁}+…) = (h₁)_{g x₁}+…; throws std::out_of_range for indices
/// outside [0,1].
inline RationalSum fs_act(const PLHomeo& g, const RationalSum& y) {
  return relocate(y, [&](const Rational& x) { return g(x); });
}
inline NatSum fs_act(const FinPerm& g, const NatSum& y) {
  return relocate(y, [&](Nat x) { return g(x); });
}
inline NatSum fs_act(const TailShiftPerm& g, const NatSum& y) {
  return relocate(y, [&](Nat x) { return g(x); });
}
/// Action of element g of a finite action on H(X) for X = its point set.
inline NatSum fs_act(const FiniteAction& action, int g, const NatSum& y) {
  if (!action.group()->contains(g)) throw std::invalid_argument("group element out of range");
  return relocate(y, [&](Nat x) {
    if (x >= static_cast<Nat>(action.points())) throw std::out_of_range("index outside the action's point set");
    return static_cast<Nat>(action.act(g, static_cast<int>(x)));
  });
}

/// h(y) = {xᵢ : hᵢ = h}. The identity is rejected: its level set is cofinite.
template <class Index>
std::set<Index> fs_level_set(const FormalSum<Index>& y, const Coeff& h) {
  if (y.group().is_identity(h)) throw std::invalid_argument("level set of the identity is not finite");
  std::set<Index> out;
  for (const auto& [i, c] : y.terms())
    if (c == h) out.insert(i);
  return out;
}

inline std::string index_str(const Rational& r) { return r.str(); }
inline std::string index_str(Nat n) { return std::to_string(n); }

/// Display form, e.g. "(1)_{1/3} + (-1)_{2/3}"; "0" for the identity.
template <class Index>
std::string to_string(const FormalSum<Index>& y) {
  if (y.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : y.terms()) {
    os << (first ? "" : " + ") << "(" << y.group().label(c) << ")_{" << index_str(i) << "}";
    first = false;
  }
  return os.str();
}

}  // namespace canontop
