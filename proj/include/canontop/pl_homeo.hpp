#pragma once

#include <vector>

#include "canontop/rational.hpp"

namespace canontop {

/// Increasing piecewise-linear homeomorphism of [0,1] with rational
/// breakpoints. Collinear breakpoints are pruned on construction, so two maps
/// are equal iff their breakpoint lists are equal.
class PLHomeo {
public:
  struct Breakpoint {
    Rational x;
    Rational y;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
  };

  PLHomeo();  // identity
  /// Throws std::invalid_argument unless the list starts at (0,0), ends at
  /// (1,1) and is strictly increasing in both coordinates.
  explicit PLHomeo(std::vector<Breakpoint> breakpoints);

  static PLHomeo identity() { return PLHomeo(); }

  /// Throws std::out_of_range outside [0,1].
  Rational operator()(const Rational& x) const;
  Rational preimage(const Rational& y) const;

  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  bool is_identity() const { return points_.size() == 2; }

  friend bool operator==(const PLHomeo&, const PLHomeo&) = default;

private:
  std::vector<Breakpoint> points_;
};

/// x ↦ u(v(x)).
PLHomeo pl_compose(const PLHomeo& u, const PLHomeo& v);
PLHomeo pl_invert(const PLHomeo& u);

struct SupDistance {
  Rational distance;
  Rational at;  // smallest breakpoint where the sup is attained
};

/// Supremum distance, evaluated on the union of both breakpoint sets.
SupDistance pl_sup_dist_at(const PLHomeo& u, const PLHomeo& v);
inline Rational pl_sup_dist(const PLHomeo& u, const PLHomeo& v) { return pl_sup_dist_at(u, v).distance; }

}  // namespace canontop
