#include "canontop/finite_action.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace canontop {

FiniteTopGroup::FiniteTopGroup(GroupPtr group, std::vector<int> kernel) : group_(std::move(group)) {
  if (!group_) throw std::invalid_argument("topological group needs a group");
  in_kernel_.assign(static_cast<std::size_t>(group_->order()), false);
  for (int k : kernel) {
    if (!group_->contains(k)) throw std::invalid_argument("kernel element out of range");
    in_kernel_[static_cast<std::size_t>(k)] = true;
  }
  if (!group_->is_normal_subgroup(in_kernel_)) throw std::invalid_argument("kernel is not a normal subgroup");
  for (int g = 0; g < group_->order(); ++g)
    if (in_kernel_[static_cast<std::size_t>(g)]) kernel_.push_back(g);
}

FiniteTopGroup FiniteTopGroup::discrete(GroupPtr group) {
  int e = group->identity();
  return FiniteTopGroup(std::move(group), {e});
}

FiniteTopGroup FiniteTopGroup::indiscrete(GroupPtr group) {
  std::vector<int> all(static_cast<std::size_t>(group->order()));
  for (int g = 0; g < group->order(); ++g) all[static_cast<std::size_t>(g)] = g;
  return FiniteTopGroup(std::move(group), std::move(all));
}

bool FiniteTopGroup::is_open(const std::vector<bool>& subset) const {
  for (int g = 0; g < group_->order(); ++g) {
    if (!subset[static_cast<std::size_t>(g)]) continue;
    for (int k : kernel_)
      if (!subset[static_cast<std::size_t>(group_->mul(g, k))]) return false;
  }
  return true;
}

FiniteAction::FiniteAction(GroupPtr group, std::vector<std::vector<int>> table, GroupPtr point_group)
    : group_(std::move(group)), point_group_(std::move(point_group)), table_(std::move(table)) {
  if (!group_) throw std::invalid_argument("action needs a group");
  if (static_cast<int>(table_.size()) != group_->order())
    throw std::invalid_argument("action table needs one row per group element");
  points_ = static_cast<int>(table_.front().size());
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != points_) throw std::invalid_argument("action table rows differ in length");
    for (int y : row)
      if (y < 0 || y >= points_) throw std::invalid_argument("action table entry out of range");
  }
  for (int x = 0; x < points_; ++x)
    if (act(group_->identity(), x) != x) throw std::invalid_argument("identity does not act trivially");
  for (int g = 0; g < group_->order(); ++g)
    for (int h = 0; h < group_->order(); ++h)
      for (int x = 0; x < points_; ++x)
        if (act(group_->mul(g, h), x) != act(g, act(h, x)))
          throw std::invalid_argument("action is not compatible with multiplication");
  if (point_group_) {
    if (point_group_->order() != points_) throw std::invalid_argument("point group order differs from point count");
    for (int g = 0; g < group_->order(); ++g)
      for (int a = 0; a < points_; ++a)
        for (int b = 0; b < points_; ++b)
          if (act(g, point_group_->mul(a, b)) != point_group_->mul(act(g, a), act(g, b)))
            throw std::invalid_argument("group element does not act as an automorphism");
  }
}

FiniteAction FiniteAction::from_permutations(const PermutationGroup& pg) { return FiniteAction(pg.group, pg.perms); }

std::vector<int> stabilizer(const FiniteAction& action, std::span<const int> tuple) {
  for (int x : tuple)
    if (x < 0 || x >= action.points()) throw std::invalid_argument("point out of range");
  std::vector<int> out;
  for (int g = 0; g < action.group()->order(); ++g)
    if (std::all_of(tuple.begin(), tuple.end(), [&](int x) { return action.act(g, x) == x; })) out.push_back(g);
  return out;
}

std::vector<std::vector<int>> orbits(const FiniteAction& action, std::span<const int> fixed) {
  auto stab = stabilizer(action, fixed);
  std::vector<bool> seen(static_cast<std::size_t>(action.points()), false);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < action.points(); ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    std::set<int> orbit;
    for (int g : stab) orbit.insert(action.act(g, x));
    for (int y : orbit) seen[static_cast<std::size_t>(y)] = true;
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

bool tau_is_open(const FiniteTopGroup& top, const FiniteAction& action, std::span<const int> subset) {
  std::vector<bool> in(static_cast<std::size_t>(action.points()), false);
  for (int x : subset) {
    if (x < 0 || x >= action.points()) throw std::invalid_argument("point out of range");
    in[static_cast<std::size_t>(x)] = true;
  }
  for (int s : subset)
    for (int k : top.kernel())
      if (!in[static_cast<std::size_t>(action.act(k, s))]) return false;
  return true;
}

bool lambda_is_open(const FiniteTopGroup& top, const FiniteAction& action, std::span<const int> subset) {
  const auto& h = action.point_group();
  if (!h) throw std::invalid_argument("lambda_is_open needs an action on a group");
  std::vector<int> inverses;
  for (int s : subset) {
    if (!h->contains(s)) throw std::invalid_argument("element out of range");
    inverses.push_back(h->inv(s));
  }
  auto translate_open = [&](std::span<const int> src, int a, int b) {
    std::vector<int> translate;
    for (int s : src) translate.push_back(h->mul(h->mul(a, s), b));
    return tau_is_open(top, action, translate);
  };
  for (int a = 0; a < h->order(); ++a)
    for (int b = 0; b < h->order(); ++b)
      if (!translate_open(subset, a, b) || !translate_open(inverses, a, b)) return false;
  return true;
}

std::uint64_t orbit_count_power(const FiniteAction& action, int n, std::uint64_t budget) {
  if (n < 0) throw std::invalid_argument("tuple length must be >= 0");
  const auto m = static_cast<std::uint64_t>(action.points());
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (m != 0 && total > budget / m) throw std::length_error("tuple count exceeds budget");
    total *= m;
  }
  if (total > budget) throw std::length_error("tuple count exceeds budget");
  std::vector<bool> seen(total, false);
  std::vector<int> tuple(static_cast<std::size_t>(n));
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    if (seen[code]) continue;
    ++count;
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i, c /= m) tuple[static_cast<std::size_t>(i)] = static_cast<int>(c % m);
    for (int g = 0; g < action.group()->order(); ++g) {
      std::uint64_t image = 0;
      for (int i = n - 1; i >= 0; --i) image = image * m + static_cast<std::uint64_t>(action.act(g, tuple[static_cast<std::size_t>(i)]));
      seen[image] = true;
    }
  }
  return count;
}

// ---------------------------------------------------------------------------

namespace {

using Mask = std::uint32_t;

bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

std::string mask_str(Mask m, int points) {
  std::string s = "{";
  bool first = true;
  for (int x = 0; x < points; ++x) {
    if (!(m >> x & 1U)) continue;
    s += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return s + "}";
}

}  // namespace

TauReport check_tau_remark(const FiniteTopGroup& top, const FiniteAction& action) {
  const int m = action.points();
  if (m > kMaxTauPoints) throw std::length_error("check_tau_remark supports at most 10 points");
  const auto& g = *action.group();
  const int n = g.order();
  const Mask full = m == 32 ? ~Mask{0} : (Mask{1} << m) - 1;
  TauReport report;

  // Distinct cosets gN.
  std::vector<std::vector<int>> cosets;
  {
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    for (int a = 0; a < n; ++a) {
      if (covered[static_cast<std::size_t>(a)]) continue;
      std::vector<int> c;
      for (int k : top.kernel()) c.push_back(g.mul(a, k));
      for (int b : c) covered[static_cast<std::size_t>(b)] = true;
      cosets.push_back(std::move(c));
    }
  }

  // The family {U·x}: for fixed x, unions of coset images c·x.
  std::set<Mask> family;
  for (int x = 0; x < m; ++x) {
    std::vector<Mask> generators;
    for (const auto& c : cosets) {
      Mask img = 0;
      for (int a : c) img |= Mask{1} << action.act(a, x);
      generators.push_back(img);
    }
    std::set<Mask> closure{0};
    std::vector<Mask> frontier{0};
    while (!frontier.empty()) {
      Mask cur = frontier.back();
      frontier.pop_back();
      for (Mask gen : generators)
        if (closure.insert(cur | gen).second) frontier.push_back(cur | gen);
    }
    family.insert(closure.begin(), closure.end());
  }
  family.erase(0);
  report.basis_size = family.size();

  // interior[S] = union of family members inside S.
  std::vector<Mask> interior(static_cast<std::size_t>(full) + 1, 0);
  for (Mask s = 0; s <= full; ++s)
    for (Mask b : family)
      if (subset_of(b, s)) interior[s] |= b;

  // (1) pairwise intersections of members are unions of members, and the
  // family covers X.
  {
    std::size_t failures = 0;
    std::string first;
    Mask cover = 0;
    for (Mask b1 : family) {
      cover |= b1;
      for (Mask b2 : family) {
        Mask meet = b1 & b2;
        if (interior[meet] != meet) {
          if (failures++ == 0) first = mask_str(b1, m) + " ∩ " + mask_str(b2, m);
        }
      }
    }
    report.basis.pass = failures == 0 && cover == full;
    report.basis.detail = std::to_string(family.size()) + " basic sets, " + std::to_string(failures) +
                          " intersections not covered" + (failures ? " (first: " + first + ")" : "") +
                          (cover == full ? "" : ", family does not cover X");
  }

  std::vector<Mask> opens;
  for (Mask s = 0; s <= full; ++s)
    if (interior[s] == s) opens.push_back(s);
  report.open_sets = opens.size();

  std::vector<Mask> minimal(static_cast<std::size_t>(m), full);
  for (Mask o : opens)
    for (int x = 0; x < m; ++x)
      if (o >> x & 1U) minimal[static_cast<std::size_t>(x)] &= o;

  // (2) the action map G × X → X is continuous: for every open V and every
  // (g, x) with g·x ∈ V, the basic product neighbourhood gN × minimal(x) maps
  // into V.
  {
    std::vector<Mask> image(static_cast<std::size_t>(n * m), 0);
    for (int a = 0; a < n; ++a) {
      for (int x = 0; x < m; ++x) {
        Mask img = 0;
        for (int k : top.kernel()) {
          int a2 = g.mul(a, k);
          for (int y = 0; y < m; ++y)
            if (minimal[static_cast<std::size_t>(x)] >> y & 1U) img |= Mask{1} << action.act(a2, y);
        }
        image[static_cast<std::size_t>(a * m + x)] = img;
      }
    }
    std::size_t failures = 0;
    std::string first;
    for (Mask v : opens) {
      for (int a = 0; a < n; ++a) {
        for (int x = 0; x < m; ++x) {
          if (!(v >> action.act(a, x) & 1U)) continue;
          if (!subset_of(image[static_cast<std::size_t>(a * m + x)], v) && failures++ == 0)
            first = "preimage of " + mask_str(v, m) + " not open at (" + g.label(a) + "," + std::to_string(x) + ")";
        }
      }
    }
    report.continuity.pass = failures == 0;
    report.continuity.detail = std::to_string(opens.size()) + " open sets checked" + (failures ? "; " + first : "");
  }

  // (3) orbits are clopen, and aG_x ↦ a·x is a homeomorphism G/G_x → G·x.
  {
    bool ok = true;
    std::string why;
    auto is_open = [&](Mask s) { return interior[s] == s; };
    for (const auto& orbit : orbits(action)) {
      Mask om = 0;
      for (int x : orbit) om |= Mask{1} << x;
      if (!is_open(om) || !is_open(full & ~om)) {
        ok = false;
        why = "orbit " + mask_str(om, m) + " is not clopen";
      }
    }
    for (int x = 0; x < m && ok; ++x) {
      int point[] = {x};
      auto stab = stabilizer(action, point);
      std::vector<bool> in_stab(static_cast<std::size_t>(n), false);
      for (int s : stab) in_stab[static_cast<std::size_t>(s)] = true;
      // Cosets aG_x and their images.
      std::vector<int> coset_of(static_cast<std::size_t>(n), -1);
      std::vector<int> coset_image;
      for (int a = 0; a < n; ++a) {
        if (coset_of[static_cast<std::size_t>(a)] >= 0) continue;
        int id = static_cast<int>(coset_image.size());
        for (int s : stab) coset_of[static_cast<std::size_t>(g.mul(a, s))] = id;
        coset_image.push_back(action.act(a, x));
      }
      Mask om = 0;
      for (int a = 0; a < n; ++a) {
        if (action.act(a, x) != coset_image[static_cast<std::size_t>(coset_of[static_cast<std::size_t>(a)])]) {
          ok = false;
          why = "coset map not well defined at x=" + std::to_string(x);
        }
        om |= Mask{1} << action.act(a, x);
      }
      std::set<int> distinct(coset_image.begin(), coset_image.end());
      if (distinct.size() != coset_image.size()) {
        ok = false;
        why = "coset map not injective at x=" + std::to_string(x);
      }
      // Every subset T of the orbit: τ-open iff its preimage in G is open.
      for (Mask t = om;; t = (t - 1) & om) {
        std::vector<bool> pre(static_cast<std::size_t>(n), false);
        for (int a = 0; a < n; ++a) pre[static_cast<std::size_t>(a)] = (t >> action.act(a, x) & 1U) != 0;
        if (is_open(t) != top.is_open(pre)) {
          ok = false;
          why = "coset map not a homeomorphism at x=" + std::to_string(x) + " on " + mask_str(t, m);
        }
        if (t == 0) break;
      }
    }
    report.orbits.pass = ok;
    report.orbits.detail = ok ? "orbits clopen; G/G_x ≅ G·x for every x" : why;
  }

  // (4) stabilizers closed (N ⊆ G_x) ⟺ T1 ⟺ Hausdorff.
  {
    report.stabilizers_closed = true;
    for (int x = 0; x < m; ++x)
      for (int k : top.kernel())
        if (action.act(k, x) != x) report.stabilizers_closed = false;
    report.t1 = true;
    report.hausdorff = true;
    report.discrete = true;
    for (int x = 0; x < m; ++x) {
      if (std::popcount(minimal[static_cast<std::size_t>(x)]) != 1) report.discrete = false;
      for (int y = 0; y < m; ++y) {
        if (x == y) continue;
        if (minimal[static_cast<std::size_t>(x)] >> y & 1U) report.t1 = false;
        if (minimal[static_cast<std::size_t>(x)] & minimal[static_cast<std::size_t>(y)]) report.hausdorff = false;
      }
    }
    report.separation.pass = report.stabilizers_closed == report.t1 && report.t1 == report.hausdorff;
    auto yn = [](bool b) { return b ? std::string("yes") : std::string("no"); };
    report.separation.detail = "stabilizers closed: " + yn(report.stabilizers_closed) + ", T1: " + yn(report.t1) +
                               ", Hausdorff: " + yn(report.hausdorff);
  }
  return report;
}

}  // namespace canontop
