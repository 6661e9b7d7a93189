#include "canontop/bergman.hpp"

#include <algorithm>
#include <deque>

namespace canontop {

AmbientGroup AmbientGroup::finite(GroupPtr g) {
  if (!g) throw std::invalid_argument("finite ambient group needs a table");
  return AmbientGroup(std::move(g));
}

void AmbientGroup::check_kind(const Element& a) const {
  if (is_finite()) {
    const int* g = std::get_if<int>(&a);
    if (!g) throw std::invalid_argument("expected a finite group element");
    if (!finite_->contains(*g)) throw std::invalid_argument("group element out of range");
  } else if (!std::holds_alternative<PLHomeo>(a)) {
    throw std::invalid_argument("expected a homeomorphism");
  }
}

Element AmbientGroup::identity() const {
  if (is_finite()) return finite_->identity();
  return PLHomeo::identity();
}

Element AmbientGroup::multiply(const Element& a, const Element& b) const {
  check_kind(a);
  check_kind(b);
  if (is_finite()) return finite_->mul(std::get<int>(a), std::get<int>(b));
  return pl_compose(std::get<PLHomeo>(a), std::get<PLHomeo>(b));
}

Element AmbientGroup::inverse(const Element& a) const {
  check_kind(a);
  if (is_finite()) return finite_->inv(std::get<int>(a));
  return pl_invert(std::get<PLHomeo>(a));
}

SetSpec spec_of(const std::shared_ptr<const SetSpec::Node>& n) { return SetSpec(n); }

SetSpec SetSpec::explicit_subset(std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return SetSpec(std::make_shared<const Node>(Node{Explicit{std::move(members)}}));
}

SetSpec SetSpec::ball(Rational radius) {
  if (radius.sign() <= 0) throw std::invalid_argument("ball radius must be positive");
  return SetSpec(std::make_shared<const Node>(Node{Ball{std::move(radius)}}));
}

SetSpec SetSpec::star(const SetSpec& inner) {
  return SetSpec(std::make_shared<const Node>(Node{Star{inner.node_}}));
}

SetSpec SetSpec::sharp(const SetSpec& inner) {
  return SetSpec(std::make_shared<const Node>(Node{Sharp{inner.node_}}));
}

SetSpec SetSpec::conjugated(std::vector<std::pair<Element, SetSpec>> listed, const SetSpec& fallback) {
  return SetSpec(std::make_shared<const Node>(Node{Conjugated{std::move(listed), fallback.node_}}));
}

namespace {

bool member(const AmbientGroup& group, const SetSpec::Node& node, const Element& g);

bool member(const AmbientGroup& group, const std::shared_ptr<const SetSpec::Node>& node, const Element& g) {
  return member(group, *node, g);
}

bool is_identity(const AmbientGroup& group, const Element& g) {
  if (group.is_finite()) return std::get<int>(g) == group.finite_group()->identity();
  return std::get<PLHomeo>(g).is_identity();
}

bool member(const AmbientGroup& group, const SetSpec::Node& node, const Element& g) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SetSpec::Explicit>) {
          if (!group.is_finite()) throw std::invalid_argument("explicit subsets live in a finite group");
          for (int m : s.members)
            if (!group.finite_group()->contains(m)) throw std::invalid_argument("explicit subset member out of range");
          return std::binary_search(s.members.begin(), s.members.end(), std::get<int>(g));
        } else if constexpr (std::is_same_v<T, SetSpec::Ball>) {
          if (group.is_finite()) throw std::invalid_argument("metric balls live in the homeomorphism group");
          return pl_sup_dist(std::get<PLHomeo>(g), PLHomeo::identity()) < s.radius;
        } else if constexpr (std::is_same_v<T, SetSpec::Star>) {
          return is_identity(group, g) || member(group, s.inner, g) || member(group, s.inner, group.inverse(g));
        } else if constexpr (std::is_same_v<T, SetSpec::Sharp>) {
          return is_identity(group, g) || member(group, s.inner, g);
        } else {
          // g ∈ c·S·c⁻¹  ⟺  c⁻¹·g·c ∈ S
          auto conj_in = [&](const Element& c, const SetSpec& spec) {
            group.check_kind(c);
            return member(group, spec.node(), group.multiply(group.multiply(group.inverse(c), g), c));
          };
          for (const auto& [c, spec] : s.listed)
            if (conj_in(c, spec)) return true;
          auto listed = [&](const Element& c) {
            return std::any_of(s.listed.begin(), s.listed.end(), [&](const auto& p) { return p.first == c; });
          };
          SetSpec fallback = spec_of(s.fallback);
          if (!group.is_finite()) {
            Element e = PLHomeo::identity();
            return !listed(e) && member(group, *s.fallback, g);
          }
          for (int c = 0; c < group.finite_group()->order(); ++c)
            if (!listed(Element(c)) && conj_in(c, fallback)) return true;
          return false;
        }
      },
      node.value);
}

// Positions along ℚ relative to the sorted exceptions e₀ < … < e_{m-1}:
// slot 2k is the open gap just below e_k (slot 2m is above all of them),
// slot 2k+1 is e_k itself.
struct Slots {
  std::vector<Rational> points;
  std::size_t count() const { return 2 * points.size() + 1; }
  static bool is_gap(std::size_t s) { return s % 2 == 0; }
};

struct Move {
  int factor;
  FactorMode mode;
};

std::vector<Move> slot_moves(const AmbientGroup& ambient, const SetSpec& spec, Closure closure) {
  const auto& g = *ambient.finite_group();
  std::vector<Move> moves;
  for (int x = 0; x < g.order(); ++x) {
    if (x == g.identity()) continue;
    if (member(ambient, spec.node(), x))
      moves.push_back({x, FactorMode::plain});
    else if (closure == Closure::group && member(ambient, spec.node(), g.inv(x)))
      moves.push_back({x, FactorMode::inverse});
  }
  return moves;
}

struct Search {
  std::vector<int> parent;  // state index, -1 at the root
  std::vector<Move> via;
  std::vector<std::size_t> via_slot;
  std::vector<bool> seen;
};

// Breadth-first over states (element, first usable slot). A gap can take any
// number of factors, each exception at most one.
Search run_search(const GroupPtr& group, const QTuple& tuple, Closure closure) {
  if (!group) throw std::invalid_argument("u-set search needs a finite group");
  AmbientGroup ambient = AmbientGroup::finite(group);
  Slots slots;
  for (const auto& [q, spec] : tuple.exceptions()) slots.points.push_back(q);
  const std::size_t ns = slots.count();

  std::vector<std::vector<Move>> moves(ns);
  auto gap_moves = slot_moves(ambient, tuple.fallback(), closure);
  for (std::size_t s = 0; s < ns; ++s)
    moves[s] = Slots::is_gap(s) ? gap_moves : slot_moves(ambient, tuple.resolve(slots.points[s / 2]), closure);

  const int n = group->order();
  auto id = [&](int g, std::size_t s) { return static_cast<std::size_t>(g) * ns + s; };
  Search out;
  out.parent.assign(static_cast<std::size_t>(n) * ns, -1);
  out.via.assign(out.parent.size(), Move{0, FactorMode::identity});
  out.via_slot.assign(out.parent.size(), 0);
  out.seen.assign(out.parent.size(), false);

  std::deque<std::pair<int, std::size_t>> queue;
  out.seen[id(group->identity(), 0)] = true;
  queue.emplace_back(group->identity(), 0);
  while (!queue.empty()) {
    auto [g, from] = queue.front();
    queue.pop_front();
    for (std::size_t s = from; s < ns; ++s) {
      std::size_t next = Slots::is_gap(s) ? s : s + 1;
      for (const Move& m : moves[s]) {
        int h = group->mul(g, m.factor);
        std::size_t k = id(h, next);
        if (out.seen[k]) continue;
        out.seen[k] = true;
        out.parent[k] = static_cast<int>(id(g, from));
        out.via[k] = m;
        out.via_slot[k] = s;
        queue.emplace_back(h, next);
      }
    }
  }
  return out;
}

// Strictly increasing rationals for `count` factors in a gap.
std::vector<Rational> fresh_points(const Slots& slots, std::size_t gap, std::size_t count) {
  std::size_t k = gap / 2;
  bool has_lo = k > 0, has_hi = k < slots.points.size();
  std::vector<Rational> out;
  for (std::size_t i = 1; i <= count; ++i) {
    Rational r(static_cast<long>(i));
    if (has_lo && has_hi) {
      const Rational& lo = slots.points[k - 1];
      const Rational& hi = slots.points[k];
      out.push_back(lo + (hi - lo) * Rational(static_cast<long>(i), static_cast<long>(count + 1)));
    } else if (has_hi) {
      out.push_back(slots.points[k] - Rational(static_cast<long>(count + 1 - i)));
    } else if (has_lo) {
      out.push_back(slots.points[k - 1] + r);
    } else {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

bool set_member(const AmbientGroup& group, const SetSpec& spec, const Element& g) {
  group.check_kind(g);
  return member(group, spec.node(), g);
}

std::vector<int> u_set(const GroupPtr& group, const QTuple& tuple, Closure closure) {
  Search s = run_search(group, tuple, closure);
  const std::size_t ns = 2 * tuple.exceptions().size() + 1;
  std::vector<int> out;
  for (int g = 0; g < group->order(); ++g)
    for (std::size_t j = 0; j < ns; ++j)
      if (s.seen[static_cast<std::size_t>(g) * ns + j]) {
        out.push_back(g);
        break;
      }
  return out;
}

std::optional<WordWitness> u_set_member(const GroupPtr& group, const QTuple& tuple, Closure closure, int g) {
  if (group && !group->contains(g)) throw std::invalid_argument("group element out of range");
  Search s = run_search(group, tuple, closure);
  Slots slots;
  for (const auto& [q, spec] : tuple.exceptions()) slots.points.push_back(q);
  const std::size_t ns = slots.count();

  int state = -1;
  for (std::size_t j = 0; j < ns && state < 0; ++j) {
    std::size_t k = static_cast<std::size_t>(g) * ns + j;
    if (s.seen[k]) state = static_cast<int>(k);
  }
  if (state < 0) return std::nullopt;

  std::vector<std::pair<std::size_t, Move>> path;
  for (int k = state; s.parent[static_cast<std::size_t>(k)] >= 0; k = s.parent[static_cast<std::size_t>(k)])
    path.emplace_back(s.via_slot[static_cast<std::size_t>(k)], s.via[static_cast<std::size_t>(k)]);
  std::reverse(path.begin(), path.end());

  WordWitness w;
  for (std::size_t i = 0; i < path.size();) {
    std::size_t slot = path[i].first;
    std::size_t j = i;
    while (j < path.size() && path[j].first == slot) ++j;
    std::vector<Rational> qs = Slots::is_gap(slot) ? fresh_points(slots, slot, j - i)
                                                    : std::vector<Rational>{slots.points[slot / 2]};
    for (std::size_t t = i; t < j; ++t) w.push_back({qs[t - i], path[t].second.factor, path[t].second.mode});
    i = j;
  }
  return w;
}

std::vector<int> minimal_nbhd_finite(const GroupPtr& group, std::span<const int> subset, Closure closure) {
  if (!group) throw std::invalid_argument("minimal neighbourhood needs a finite group");
  QTuple tuple(SetSpec::conjugated({}, SetSpec::explicit_subset({subset.begin(), subset.end()})));
  return u_set(group, tuple, closure);
}

bool verify_word_witness(const AmbientGroup& group, const QTuple& tuple, Closure closure, const WordWitness& witness,
                         const Element& claimed) {
  try {
    Element product = group.identity();
    for (std::size_t i = 0; i < witness.size(); ++i) {
      const WordStep& step = witness[i];
      if (i > 0 && !(witness[i - 1].q < step.q)) return false;
      const SetSpec& spec = tuple.resolve(step.q);
      switch (step.mode) {
        case FactorMode::plain:
          if (!set_member(group, spec, step.factor)) return false;
          break;
        case FactorMode::inverse:
          if (closure != Closure::group || !set_member(group, spec, group.inverse(step.factor))) return false;
          break;
        case FactorMode::identity:
          if (!(step.factor == group.identity())) return false;
          break;
      }
      product = group.multiply(product, step.factor);
    }
    group.check_kind(claimed);
    return product == claimed;
  } catch (const std::invalid_argument&) {
    return false;
  } catch (const std::out_of_range&) {
    return false;
  }
}

}  // namespace canontop
