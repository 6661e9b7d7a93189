#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace canontop {

using Nat = std::uint64_t;

/// Finite-support permutation of ω. Only moved points are stored.
class FinPerm {
public:
  FinPerm() = default;
  /// Throws std::invalid_argument unless the map is a bijection of its
  /// domain onto itself. Fixed points are dropped.
  explicit FinPerm(std::map<Nat, Nat> moved);

  static FinPerm transposition(Nat a, Nat b);
  static FinPerm cycle(const std::vector<Nat>& points);

  Nat operator()(Nat n) const;
  const std::map<Nat, Nat>& moved() const { return moved_; }
  std::set<Nat> support() const;
  bool is_identity() const { return moved_.empty(); }

  friend bool operator==(const FinPerm&, const FinPerm&) = default;

private:
  std::map<Nat, Nat> moved_;
};

/// Applies tau, then sigma.
FinPerm perm_compose(const FinPerm& sigma, const FinPerm& tau);
FinPerm perm_invert(const FinPerm& sigma);

/// Permutation of ω that is explicit below `threshold` and translates each
/// residue class mod 3 by a fixed multiple of 3 from `threshold` on:
///   η(m) = window[m]          if m is a key of window,
///   η(m) = m                  if m < threshold otherwise,
///   η(m) = m + shift[m % 3]   if m >= threshold.
/// Infinite support is needed when a bijection has to trade points between
/// level sets of an infinite pattern.
class TailShiftPerm {
public:
  TailShiftPerm() = default;
  /// Throws std::invalid_argument unless the rule defines a bijection of ω.
  TailShiftPerm(std::map<Nat, Nat> window, Nat threshold, std::array<std::int64_t, 3> shift);
  explicit TailShiftPerm(const FinPerm& p);

  Nat operator()(Nat m) const;
  Nat inverse(Nat m) const;

  const std::map<Nat, Nat>& window() const { return window_; }
  Nat threshold() const { return threshold_; }
  const std::array<std::int64_t, 3>& shift() const { return shift_; }

  /// One past the largest point whose image or preimage is given by the window.
  Nat horizon() const;
  std::optional<FinPerm> as_fin_perm() const;

  friend bool operator==(const TailShiftPerm&, const TailShiftPerm&) = default;

private:
  std::map<Nat, Nat> window_;
  std::map<Nat, Nat> inverse_window_;
  Nat threshold_ = 0;
  std::array<std::int64_t, 3> shift_{0, 0, 0};
};

}  // namespace canontop
