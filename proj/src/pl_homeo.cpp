#include "canontop/pl_homeo.hpp"

#include <algorithm>
#include <stdexcept>

namespace canontop {

namespace {

using Breakpoint = PLHomeo::Breakpoint;

bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
  return (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x);
}

Rational interpolate(const Breakpoint& a, const Breakpoint& b, const Rational& x) {
  return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x);
}

std::vector<Breakpoint> pruned(std::vector<Breakpoint> pts) {
  std::vector<Breakpoint> out;
  out.reserve(pts.size());
  for (auto& p : pts) {
    while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.pop_back();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

PLHomeo::PLHomeo() : points_{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}} {}

PLHomeo::PLHomeo(std::vector<Breakpoint> breakpoints) {
  if (breakpoints.size() < 2) throw std::invalid_argument("PL map needs at least two breakpoints");
  if (!(breakpoints.front() == Breakpoint{0, 0}) || !(breakpoints.back() == Breakpoint{1, 1}))
    throw std::invalid_argument("PL map must start at (0,0) and end at (1,1)");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1].x < breakpoints[i].x) || !(breakpoints[i - 1].y < breakpoints[i].y))
      throw std::invalid_argument("PL breakpoints must be strictly increasing in x and y");
  }
  points_ = pruned(std::move(breakpoints));
}

Rational PLHomeo::operator()(const Rational& x) const {
  if (x.sign() < 0 || x > Rational(1)) throw std::out_of_range("PL map evaluated outside [0,1]: " + x.str());
  auto it = std::lower_bound(points_.begin(), points_.end(), x,
                             [](const Breakpoint& p, const Rational& v) { return p.x < v; });
  if (it->x == x) return it->y;
  return interpolate(*std::prev(it), *it, x);
}

Rational PLHomeo::preimage(const Rational& y) const {
  if (y.sign() < 0 || y > Rational(1)) throw std::out_of_range("PL preimage outside [0,1]: " + y.str());
  auto it = std::lower_bound(points_.begin(), points_.end(), y,
                             [](const Breakpoint& p, const Rational& v) { return p.y < v; });
  if (it->y == y) return it->x;
  const auto& a = *std::prev(it);
  return a.x + (y - a.y) * (it->x - a.x) / (it->y - a.y);
}

PLHomeo pl_compose(const PLHomeo& u, const PLHomeo& v) {
  std::vector<Rational> xs;
  xs.reserve(u.breakpoints().size() + v.breakpoints().size());
  for (const auto& p : v.breakpoints()) xs.push_back(p.x);
  for (const auto& p : u.breakpoints()) xs.push_back(v.preimage(p.x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Breakpoint> pts;
  pts.reserve(xs.size());
  for (auto& x : xs) {
    Rational y = u(v(x));
    pts.push_back({std::move(x), std::move(y)});
  }
  return PLHomeo(std::move(pts));
}

PLHomeo pl_invert(const PLHomeo& u) {
  std::vector<Breakpoint> pts;
  pts.reserve(u.breakpoints().size());
  for (const auto& p : u.breakpoints()) pts.push_back({p.y, p.x});
  return PLHomeo(std::move(pts));
}

SupDistance pl_sup_dist_at(const PLHomeo& u, const PLHomeo& v) {
  std::vector<Rational> xs;
  for (const auto& p : u.breakpoints()) xs.push_back(p.x);
  for (const auto& p : v.breakpoints()) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  SupDistance best{Rational(0), Rational(0)};
  for (const auto& x : xs) {
    Rational d = abs(u(x) - v(x));
    if (d > best.distance) best = {d, x};
  }
  return best;
}

}  // namespace canontop
