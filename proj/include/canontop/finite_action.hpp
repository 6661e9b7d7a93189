#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "canontop/finite_group.hpp"

namespace canontop {

/// A finite group topology, encoded by its normal subgroup N of elements
/// indistinguishable from e: the open sets are exactly the unions of N-cosets.
class FiniteTopGroup {
public:
  /// Throws std::invalid_argument unless kernel is a normal subgroup.
  FiniteTopGroup(GroupPtr group, std::vector<int> kernel);
  static FiniteTopGroup discrete(GroupPtr group);
  static FiniteTopGroup indiscrete(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  const std::vector<int>& kernel() const { return kernel_; }
  bool in_kernel(int g) const { return in_kernel_[static_cast<std::size_t>(g)]; }
  /// Open iff a union of N-cosets.
  bool is_open(const std::vector<bool>& subset) const;

private:
  GroupPtr group_;
  std::vector<int> kernel_;
  std::vector<bool> in_kernel_;
};

/// Left action of a finite group on {0..points-1}; table[g][x] = g·x.
/// When point_group is set, the points carry that group structure and each
/// g must act as an automorphism.
class FiniteAction {
public:
  FiniteAction(GroupPtr group, std::vector<std::vector<int>> table, GroupPtr point_group = nullptr);
  static FiniteAction from_permutations(const PermutationGroup& pg);

  const GroupPtr& group() const { return group_; }
  const GroupPtr& point_group() const { return point_group_; }
  int points() const { return points_; }
  int act(int g, int x) const { return table_[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

private:
  GroupPtr group_;
  GroupPtr point_group_;
  std::vector<std::vector<int>> table_;
  int points_ = 0;
};

/// Orbits under the pointwise stabilizer of `fixed`, each sorted, listed by
/// smallest element.
std::vector<std::vector<int>> orbits(const FiniteAction& action, std::span<const int> fixed = {});

/// Pointwise stabilizer of the tuple, as a sorted element list.
std::vector<int> stabilizer(const FiniteAction& action, std::span<const int> tuple);

/// Whether `subset` is open in τ(X, G).
bool tau_is_open(const FiniteTopGroup& top, const FiniteAction& action, std::span<const int> subset);

/// Whether every two-sided translate of `subset` and of its inverse is
/// τ-open. Requires an action on a point group.
bool lambda_is_open(const FiniteTopGroup& top, const FiniteAction& action, std::span<const int> subset);

/// Number of orbits of the diagonal action on n-tuples. Throws
/// std::length_error when points^n exceeds the budget.
std::uint64_t orbit_count_power(const FiniteAction& action, int n, std::uint64_t budget = 1'000'000);

struct TauClause {
  bool pass = false;
  std::string detail;
};

/// Exhaustive check of the four properties of τ(X, G): basis, continuity of
/// the action, clopen orbits with G/G_x ≅ G·x, and
/// (stabilizers closed) ⟺ T1 ⟺ Hausdorff.
struct TauReport {
  TauClause basis;
  TauClause continuity;
  TauClause orbits;
  TauClause separation;
  std::size_t basis_size = 0;
  std::size_t open_sets = 0;
  bool stabilizers_closed = false;
  bool t1 = false;
  bool hausdorff = false;
  bool discrete = false;

  bool all_pass() const { return basis.pass && continuity.pass && orbits.pass && separation.pass; }
};

inline constexpr int kMaxTauPoints = 10;

/// Throws std::length_error when the action has more than kMaxTauPoints points.
TauReport check_tau_remark(const FiniteTopGroup& top, const FiniteAction& action);

}  // namespace canontop
