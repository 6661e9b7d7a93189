#include "canontop/perm.hpp"

#include <algorithm>
#include <stdexcept>

namespace canontop {

FinPerm::FinPerm(std::map<Nat, Nat> moved) {
  std::set<Nat> images;
  for (const auto& [from, to] : moved) {
    if (!images.insert(to).second) throw std::invalid_argument("permutation is not injective");
  }
  for (Nat to : images)
    if (!moved.contains(to)) throw std::invalid_argument("permutation domain and range differ");
  for (auto& [from, to] : moved)
    if (from != to) moved_.emplace(from, to);
}

FinPerm FinPerm::transposition(Nat a, Nat b) {
  if (a == b) return {};
  return FinPerm({{a, b}, {b, a}});
}

FinPerm FinPerm::cycle(const std::vector<Nat>& points) {
  std::map<Nat, Nat> m;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!m.emplace(points[i], points[(i + 1) % points.size()]).second)
      throw std::invalid_argument("cycle repeats a point");
  }
  return FinPerm(std::move(m));
}

Nat FinPerm::operator()(Nat n) const {
  auto it = moved_.find(n);
  return it == moved_.end() ? n : it->second;
}

std::set<Nat> FinPerm::support() const {
  std::set<Nat> s;
  for (const auto& [k, v] : moved_) s.insert(k);
  return s;
}

FinPerm perm_compose(const FinPerm& sigma, const FinPerm& tau) {
  std::map<Nat, Nat> out;
  for (const auto& [k, v] : tau.moved()) out[k] = sigma(v);
  for (const auto& [k, v] : sigma.moved())
    if (!tau.moved().contains(k)) out[k] = v;
  return FinPerm(std::move(out));
}

FinPerm perm_invert(const FinPerm& sigma) {
  std::map<Nat, Nat> out;
  for (const auto& [k, v] : sigma.moved()) out.emplace(v, k);
  return FinPerm(std::move(out));
}

// ---------------------------------------------------------------------------

TailShiftPerm::TailShiftPerm(std::map<Nat, Nat> window, Nat threshold, std::array<std::int64_t, 3> shift)
    : threshold_(threshold), shift_(shift) {
  for (auto s : shift_) {
    if (s % 3 != 0) throw std::invalid_argument("tail shifts must be multiples of 3");
    if (s < 0 && static_cast<Nat>(-s) > threshold_) throw std::invalid_argument("tail shift below zero");
  }
  for (auto& [from, to] : window) {
    if (from >= threshold_) throw std::invalid_argument("window key at or beyond threshold");
    if (from != to) window_.emplace(from, to);
  }
  // Count preimages of every point up to a bound past which only tail
  // images exist.
  Nat bound = threshold_;
  for (auto s : shift_) bound = std::max<Nat>(bound, threshold_ + static_cast<Nat>(std::max<std::int64_t>(s, 0)));
  for (const auto& [from, to] : window_) bound = std::max(bound, to + 1);
  std::vector<int> hits(bound, 0);
  for (Nat m = 0; m < threshold_; ++m) {
    auto it = window_.find(m);
    ++hits[it == window_.end() ? m : it->second];
  }
  for (Nat z = 0; z < bound; ++z) {
    auto s = shift_[z % 3];
    auto start = static_cast<std::int64_t>(threshold_) + s;
    if (static_cast<std::int64_t>(z) >= start) ++hits[z];
    if (hits[z] != 1) throw std::invalid_argument("tail-shift rule is not a bijection at " + std::to_string(z));
  }
  for (const auto& [from, to] : window_) inverse_window_.emplace(to, from);
}

TailShiftPerm::TailShiftPerm(const FinPerm& p)
    : TailShiftPerm(p.moved(), p.moved().empty() ? 0 : p.moved().rbegin()->first + 1, {0, 0, 0}) {}

Nat TailShiftPerm::operator()(Nat m) const {
  if (m >= threshold_) return static_cast<Nat>(static_cast<std::int64_t>(m) + shift_[m % 3]);
  auto it = window_.find(m);
  return it == window_.end() ? m : it->second;
}

Nat TailShiftPerm::inverse(Nat m) const {
  if (auto it = inverse_window_.find(m); it != inverse_window_.end()) return it->second;
  if (m < threshold_ && !window_.contains(m)) return m;
  return static_cast<Nat>(static_cast<std::int64_t>(m) - shift_[m % 3]);
}

Nat TailShiftPerm::horizon() const {
  Nat h = threshold_;
  for (auto s : shift_) h = std::max<Nat>(h, threshold_ + static_cast<Nat>(s < 0 ? -s : s));
  for (const auto& [from, to] : window_) h = std::max(h, to + 1);
  return h;
}

std::optional<FinPerm> TailShiftPerm::as_fin_perm() const {
  if (std::any_of(shift_.begin(), shift_.end(), [](auto s) { return s != 0; })) return std::nullopt;
  return FinPerm(window_);
}

}  // namespace canontop
