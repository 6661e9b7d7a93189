#pragma once

#include <memory>
#include <string>
#include <vector>

namespace canontop {

/// Finite group given by its multiplication table. Elements are the indices
/// 0..order-1; mul(a, b) is the product ab.
class FiniteGroup {
public:
  /// Validates closure, associativity, identity and inverses; throws
  /// std::invalid_argument on failure.
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> labels = {});

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  /// g x g⁻¹
  int conjugate(int g, int x) const { return mul(mul(g, x), inv(g)); }
  bool contains(int a) const { return a >= 0 && a < order(); }

  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int a) const;

  bool is_subgroup(const std::vector<bool>& member) const;
  bool is_normal_subgroup(const std::vector<bool>& member) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

private:
  std::vector<std::vector<int>> table_;
  std::vector<std::string> labels_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Every normal subgroup, each as a sorted element list; deterministic order
/// (by size, then lexicographic).
std::vector<std::vector<int>> normal_subgroups(const FiniteGroup& g);

/// Finite group together with a faithful permutation representation:
/// perms[e] is the permutation of {0..degree-1} carried by element e.
struct PermutationGroup {
  GroupPtr group;
  int degree = 0;
  std::vector<std::vector<int>> perms;
};

/// Closes the generators under composition. Element 0 is the identity and
/// the remaining order is breadth-first by generator index. The product ab
/// acts as "apply b, then a".
PermutationGroup generate_permutation_group(const std::vector<std::vector<int>>& generators, int degree);

PermutationGroup cyclic_group(int n);
/// Symmetries of the regular n-gon (order 2n), n >= 3.
PermutationGroup dihedral_group(int n);
PermutationGroup symmetric_group(int k);
PermutationGroup alternating_group(int k);
/// Q8 in its regular representation on 8 points.
PermutationGroup quaternion_group();
/// Left-regular representation of any finite group.
PermutationGroup regular_representation(const GroupPtr& g);

/// "C<n>"/"Z<n>" cyclic, "D<n>" dihedral of order 2n, "S<k>", "A<k>", "Q8".
/// Throws std::invalid_argument on an unknown name.
PermutationGroup named_group(const std::string& name);

}  // namespace canontop
