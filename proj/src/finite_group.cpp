#include "canontop/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace canontop {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> labels)
    : table_(std::move(table)), labels_(std::move(labels)) {
  const int n = order();
  if (n == 0) throw std::invalid_argument("group table is empty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("group table entry out of range");
  }
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
    throw std::invalid_argument("label count does not match group order");

  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw std::invalid_argument("group table has no identity");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::invalid_argument("group table is not associative");

  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[static_cast<std::size_t>(a)] = b;
    if (inverse_[static_cast<std::size_t>(a)] < 0) throw std::invalid_argument("group element without inverse");
  }
}

std::string FiniteGroup::label(int a) const {
  return labels_.empty() ? std::to_string(a) : labels_[static_cast<std::size_t>(a)];
}

bool FiniteGroup::is_subgroup(const std::vector<bool>& member) const {
  if (static_cast<int>(member.size()) != order() || !member[static_cast<std::size_t>(identity_)]) return false;
  for (int a = 0; a < order(); ++a) {
    if (!member[static_cast<std::size_t>(a)]) continue;
    if (!member[static_cast<std::size_t>(inv(a))]) return false;
    for (int b = 0; b < order(); ++b)
      if (member[static_cast<std::size_t>(b)] && !member[static_cast<std::size_t>(mul(a, b))]) return false;
  }
  return true;
}

bool FiniteGroup::is_normal_subgroup(const std::vector<bool>& member) const {
  if (!is_subgroup(member)) return false;
  for (int g = 0; g < order(); ++g)
    for (int a = 0; a < order(); ++a)
      if (member[static_cast<std::size_t>(a)] && !member[static_cast<std::size_t>(conjugate(g, a))]) return false;
  return true;
}

namespace {

// Smallest normal subgroup containing `seed`: close under products and
// conjugation.
std::vector<bool> normal_hull(const FiniteGroup& g, std::vector<bool> member) {
  member[static_cast<std::size_t>(g.identity())] = true;
  std::deque<int> queue;
  for (int a = 0; a < g.order(); ++a)
    if (member[static_cast<std::size_t>(a)]) queue.push_back(a);
  std::vector<int> current;
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    current.push_back(a);
    auto add = [&](int b) {
      if (!member[static_cast<std::size_t>(b)]) {
        member[static_cast<std::size_t>(b)] = true;
        queue.push_back(b);
      }
    };
    for (int h = 0; h < g.order(); ++h) add(g.conjugate(h, a));
    for (int b : current) {
      add(g.mul(a, b));
      add(g.mul(b, a));
    }
  }
  return member;
}

}  // namespace

std::vector<std::vector<int>> normal_subgroups(const FiniteGroup& g) {
  std::set<std::vector<bool>> seen;
  std::deque<std::vector<bool>> queue;
  auto trivial = normal_hull(g, std::vector<bool>(static_cast<std::size_t>(g.order()), false));
  seen.insert(trivial);
  queue.push_back(trivial);
  while (!queue.empty()) {
    auto n = queue.front();
    queue.pop_front();
    for (int a = 0; a < g.order(); ++a) {
      if (n[static_cast<std::size_t>(a)]) continue;
      auto next = n;
      next[static_cast<std::size_t>(a)] = true;
      next = normal_hull(g, std::move(next));
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  std::vector<std::vector<int>> out;
  for (const auto& mask : seen) {
    std::vector<int> elems;
    for (int a = 0; a < g.order(); ++a)
      if (mask[static_cast<std::size_t>(a)]) elems.push_back(a);
    out.push_back(std::move(elems));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// "(0 1)(2 3)", "()" for the identity.
std::string cycle_notation(const std::vector<int>& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      out += (j == i ? "" : " ") + std::to_string(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

}  // namespace

PermutationGroup generate_permutation_group(const std::vector<std::vector<int>>& generators, int degree) {
  using Perm = std::vector<int>;
  auto compose = [](const Perm& a, const Perm& b) {  // apply b, then a
    Perm out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
    return out;
  };
  for (const auto& gen : generators) {
    if (static_cast<int>(gen.size()) != degree) throw std::invalid_argument("generator has wrong degree");
    std::vector<int> sorted = gen;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < degree; ++i)
      if (sorted[static_cast<std::size_t>(i)] != i) throw std::invalid_argument("generator is not a permutation");
  }
  Perm id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elems{id};
  std::map<Perm, int> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : generators) {
      Perm next = compose(elems[head], gen);
      if (index.emplace(next, static_cast<int>(elems.size())).second) elems.push_back(std::move(next));
    }
  }
  const auto n = elems.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
  std::vector<std::string> labels;
  for (const auto& p : elems) labels.push_back(cycle_notation(p));
  return {std::make_shared<const FiniteGroup>(std::move(table), std::move(labels)), degree, std::move(elems)};
}

PermutationGroup cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be >= 1");
  std::vector<int> rot(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rot[static_cast<std::size_t>(i)] = (i + 1) % n;
  return generate_permutation_group({rot}, n);
}

PermutationGroup dihedral_group(int n) {
  if (n < 3) throw std::invalid_argument("dihedral group needs n >= 3");
  std::vector<int> rot(static_cast<std::size_t>(n)), ref(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rot[static_cast<std::size_t>(i)] = (i + 1) % n;
    ref[static_cast<std::size_t>(i)] = (n - i) % n;
  }
  return generate_permutation_group({rot, ref}, n);
}

PermutationGroup symmetric_group(int k) {
  if (k < 1) throw std::invalid_argument("symmetric group degree must be >= 1");
  if (k == 1) return generate_permutation_group({}, 1);
  std::vector<int> swap(static_cast<std::size_t>(k)), cyc(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    swap[static_cast<std::size_t>(i)] = i;
    cyc[static_cast<std::size_t>(i)] = (i + 1) % k;
  }
  std::swap(swap[0], swap[1]);
  return generate_permutation_group({swap, cyc}, k);
}

PermutationGroup alternating_group(int k) {
  if (k < 3) return generate_permutation_group({}, std::max(k, 1));
  std::vector<std::vector<int>> gens;
  for (int i = 2; i < k; ++i) {
    std::vector<int> c(static_cast<std::size_t>(k));
    std::iota(c.begin(), c.end(), 0);
    c[0] = 1;
    c[1] = i;
    c[static_cast<std::size_t>(i)] = 0;
    gens.push_back(std::move(c));
  }
  return generate_permutation_group(gens, k);
}

PermutationGroup quaternion_group() {
  // Elements ±1, ±i, ±j, ±k encoded as 4*sign + unit, unit in {1,i,j,k}.
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      int ua = a % 4, ub = b % 4;
      int sign = (a / 4 + b / 4 + unit_sign[ua][ub]) % 2;
      table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 4 * sign + unit_mul[ua][ub];
    }
  }
  auto g = std::make_shared<const FiniteGroup>(
      std::move(table), std::vector<std::string>{"1", "i", "j", "k", "-1", "-i", "-j", "-k"});
  return regular_representation(g);
}

PermutationGroup regular_representation(const GroupPtr& g) {
  PermutationGroup out{g, g->order(), {}};
  for (int a = 0; a < g->order(); ++a) {
    std::vector<int> p(static_cast<std::size_t>(g->order()));
    for (int x = 0; x < g->order(); ++x) p[static_cast<std::size_t>(x)] = g->mul(a, x);
    out.perms.push_back(std::move(p));
  }
  return out;
}

PermutationGroup named_group(const std::string& name) {
  auto number = [&](std::size_t from) {
    std::string digits = name.substr(from);
    if (digits.empty() || digits.size() > 3 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw std::invalid_argument("unknown group name '" + name + "'");
    return std::stoi(digits);
  };
  if (name == "Q8") return quaternion_group();
  if (name.empty()) throw std::invalid_argument("empty group name");
  switch (name[0]) {
    case 'C':
    case 'Z':
      return cyclic_group(number(1));
    case 'D':
      return dihedral_group(number(1));
    case 'S':
      return symmetric_group(number(1));
    case 'A':
      return alternating_group(number(1));
    default:
      throw std::invalid_argument("unknown group name '" + name + "'");
  }
}

}  // namespace canontop
