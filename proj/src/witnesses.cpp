#include "canontop/witnesses.hpp"

#include <algorithm>
#include <stdexcept>

#include "canontop/bergman.hpp"

namespace canontop {

bool VerificationReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ReportClause& c) { return c.pass; });
}

std::vector<std::string> VerificationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : clauses)
    if (!c.pass) out.push_back(c.name);
  return out;
}

NbhdSpec::NbhdSpec(Rational fallback, std::map<Key, Rational> radii)
    : fallback_(std::move(fallback)), radii_(std::move(radii)) {
  if (fallback_.sign() <= 0) throw std::invalid_argument("default radius must be positive");
  for (const auto& [key, r] : radii_)
    if (r.sign() <= 0) throw std::invalid_argument("radius for q = " + key.second.str() + " must be positive");
}

Rational NbhdSpec::radius(const RationalSum& h, const Rational& q) const {
  // Keys compare by terms only, so check the coefficient group as well.
  auto it = radii_.find({h, q});
  return it == radii_.end() || !(it->first.first == h) ? fallback_ : it->second;
}

namespace {

Rational grid(long k, long n) { return Rational(k, 3 * n); }

RationalSum grid_sum(const CoeffGroup& coeffs, const Coeff& c, long from, long to, long n) {
  RationalSum s(coeffs);
  for (long k = from; k <= to; ++k) s.add_term(grid(k, n), c);
  return s;
}

void check_coefficient(const CoeffGroup& coeffs, const Coeff& a) {
  if (!coeffs.contains(a)) throw std::invalid_argument("coefficient outside " + coeffs.name());
  if (coeffs.is_identity(a)) throw std::invalid_argument("coefficient must not be the identity");
}

Rational governing_epsilon(const NbhdSpec& spec, const CoeffGroup& coeffs) {
  RationalSum zero(coeffs);
  return std::min(spec.radius(zero, 0), spec.radius(zero, 3));
}

Rational inner_radius(const NbhdSpec& spec, const RationalSum& h, const RationalSum& h_prime) {
  RationalSum zero(h.group());
  return std::min({spec.radius(h, 1), spec.radius(h_prime, 1), spec.radius(zero, 2)});
}

// v = u0(h - u1 h) through the chain q = 0,1,2,3 with factors u0, u1, u1⁻¹, u0⁻¹.
std::vector<ThgStep<PLHomeo>> chain(const RationalSum& h, const PLHomeo& u0, const PLHomeo& u1) {
  RationalSum zero(h.group());
  return {{0, zero, u0}, {1, h, u1}, {2, zero, pl_invert(u1)}, {3, zero, pl_invert(u0)}};
}

RationalSum chain_value(const CoeffGroup& coeffs, const RationalSum& h, const PLHomeo& u0, const PLHomeo& u1) {
  std::vector<ThgTerm<PLHomeo>> terms;
  for (auto& s : chain(h, u0, u1)) terms.push_back({s.h, s.u});
  return thg_element<PLHomeo>(coeffs, terms);
}

}  // namespace

std::pair<RationalSum, RationalSum> telescoping_sums(const CoeffGroup& coeffs, const Coeff& a, long n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  Coeff neg = coeffs.inverse(a);
  RationalSum v1(coeffs), v2(coeffs);
  for (long k = n; k <= 2 * n - 1; ++k) {
    v1.add_term(grid(k, n), a);
    v1.add_term(Rational(2 * k + 1, 6 * n), neg);
  }
  for (long k = n + 1; k <= 2 * n; ++k) {
    v2.add_term(grid(k, n), neg);
    v2.add_term(Rational(2 * k - 1, 6 * n), a);
  }
  return {v1, v2};
}

SeparationBundle build_separation_witness(const CoeffGroup& coeffs, const Coeff& a, const NbhdSpec& spec,
                                          long denominator_budget) {
  check_coefficient(coeffs, a);
  SeparationBundle b;
  b.epsilon = governing_epsilon(spec, coeffs);

  // Least n with 1/(3n) < ε.
  Rational bound = Rational(1) / (Rational(3) * b.epsilon);
  BigInt n = bound.raw().get_num() / bound.raw().get_den() + 1;
  if (n > denominator_budget / 6) throw std::range_error("radius needs n = " + n.get_str() + ", over the budget");
  b.n = n.get_si();
  const long N = b.n;

  b.h = grid_sum(coeffs, a, N, 2 * N - 1, N);
  b.h_prime = grid_sum(coeffs, coeffs.inverse(a), N + 1, 2 * N, N);

  Rational r1 = inner_radius(spec, b.h, b.h_prime);
  Rational delta = std::min(r1, grid(1, N)) / Rational(2);

  std::vector<PLHomeo::Breakpoint> p1{{0, 0}}, p0{{0, 0}}, q1{{0, 0}}, q0{{0, 0}, {grid(N, N), grid(N, N)}};
  for (long k = N; k <= 2 * N - 1; ++k) {
    Rational x = grid(k, N);
    p1.push_back({x, x + delta});
    p0.push_back({x, x});
    p0.push_back({x + delta, Rational(2 * k + 1, 6 * N)});
  }
  for (long k = N + 1; k <= 2 * N; ++k) {
    Rational x = grid(k, N);
    q1.push_back({x, x - delta});
    q0.push_back({x - delta, Rational(2 * k - 1, 6 * N)});
    q0.push_back({x, x});
  }
  p0.push_back({grid(2 * N, N), grid(2 * N, N)});
  for (auto* p : {&p1, &p0, &q1, &q0}) p->push_back({1, 1});

  b.u1 = PLHomeo(p1);
  b.u0 = PLHomeo(p0);
  b.u1_prime = PLHomeo(q1);
  b.u0_prime = PLHomeo(q0);

  b.v1 = chain_value(coeffs, b.h, b.u0, b.u1);
  b.v2 = chain_value(coeffs, b.h_prime, b.u0_prime, b.u1_prime);
  b.total = b.v1 + b.v2;
  return b;
}

VerificationReport verify_separation_witness(const SeparationBundle& b, const NbhdSpec& spec, const Coeff& a) {
  VerificationReport rep;
  const CoeffGroup& coeffs = b.h.group();
  if (!coeffs.contains(a) || coeffs.is_identity(a)) {
    rep.add("coefficient", false, "a must be a non-identity element of " + coeffs.name());
    return rep;
  }
  const long N = b.n;
  if (N < 1) {
    rep.add("grid", false, "n must be positive");
    return rep;
  }
  Rational eps = governing_epsilon(spec, coeffs);
  rep.add("grid", grid(1, N) < eps && b.epsilon == eps, "1/(3n) = " + grid(1, N).str() + ", epsilon = " + eps.str());

  bool shape = b.h == grid_sum(coeffs, a, N, 2 * N - 1, N) &&
               b.h_prime == grid_sum(coeffs, coeffs.inverse(a), N + 1, 2 * N, N);
  rep.add("h-shape", shape);

  bool steps = true;
  for (long k = N; k <= 2 * N - 1; ++k) {
    Rational y = b.u1(grid(k, N));
    steps = steps && grid(k, N) < y && y < grid(k + 1, N);
  }
  for (long k = N + 1; k <= 2 * N; ++k) {
    Rational y = b.u1_prime(grid(k, N));
    steps = steps && grid(k - 1, N) < y && y < grid(k, N);
  }
  rep.add("u1-intervals", steps);

  bool fixed = true, mids = true;
  for (long k = N; k <= 2 * N - 1; ++k) {
    fixed = fixed && b.u0(grid(k, N)) == grid(k, N);
    mids = mids && b.u0(b.u1(grid(k, N))) == Rational(2 * k + 1, 6 * N);
  }
  for (long k = N + 1; k <= 2 * N; ++k) {
    fixed = fixed && b.u0_prime(grid(k, N)) == grid(k, N);
    mids = mids && b.u0_prime(b.u1_prime(grid(k, N))) == Rational(2 * k - 1, 6 * N);
  }
  rep.add("u0-fixed-points", fixed);
  rep.add("u0-midpoints", mids);

  const PLHomeo id;
  Rational r1 = inner_radius(spec, b.h, b.h_prime);
  bool balls = pl_sup_dist(b.u0, id) < eps && pl_sup_dist(b.u0_prime, id) < eps && pl_sup_dist(b.u1, id) < r1 &&
               pl_sup_dist(b.u1_prime, id) < r1;
  rep.add("balls", balls, "u0 moves " + pl_sup_dist(b.u0, id).str() + ", u1 moves " + pl_sup_dist(b.u1, id).str());

  NbhdPredicate<PLHomeo> in_nbhd = [&](const RationalSum& h, const Rational& q, const PLHomeo& u) {
    return spec.contains(h, q, u);
  };
  auto check_chain = [&](const RationalSum& h, const PLHomeo& u0, const PLHomeo& u1, const RationalSum& v) {
    auto st = chain(h, u0, u1);
    return verify_thg_chain<PLHomeo>(coeffs, st, in_nbhd, v);
  };
  ThgCheck c1 = check_chain(b.h, b.u0, b.u1, b.v1);
  ThgCheck c2 = check_chain(b.h_prime, b.u0_prime, b.u1_prime, b.v2);
  rep.add("chain", c1.all() && c2.all(),
          std::string("memberships ") + (c1.memberships && c2.memberships ? "ok" : "fail") + ", values " +
              (c1.value_matches && c2.value_matches ? "ok" : "fail"));

  auto [t1, t2] = telescoping_sums(coeffs, a, N);
  rep.add("v-shape", b.v1 == t1 && b.v2 == t2);

  RationalSum expected(coeffs, {{Rational(1, 3), a}, {Rational(2, 3), coeffs.inverse(a)}});
  rep.add("total", b.total == b.v1 + b.v2 && b.total == expected, to_string(b.total));
  return rep;
}

// ---------------------------------------------------------------------------

std::set<Nat> CantorInstance::touched() const {
  std::set<Nat> s;
  for (const auto& alpha : alphas)
    for (const auto& [d, r] : alpha) {
      s.insert(d);
      s.insert(r);
    }
  return s;
}

namespace {

Triple triple_at(int index) { return {(index >> 2) & 1, (index >> 1) & 1, index & 1}; }

bool compatible(const Triple& t, const PartialInjection& alpha) {
  return std::all_of(alpha.begin(), alpha.end(),
                     [&](const auto& p) { return pattern_value(t, p.first) == pattern_value(t, p.second); });
}

bool injective(const PartialInjection& alpha) {
  std::set<Nat> images;
  for (const auto& [d, r] : alpha)
    if (!images.insert(r).second) return false;
  return true;
}

bool constant(const Triple& t) { return t[0] == t[1] && t[1] == t[2]; }

int flip(const CantorInstance& inst, Nat m) { return inst.x.at(m) == 1 ? 1 : 0; }

}  // namespace

void validate_cantor_instance(const CantorInstance& inst) {
  if (!(inst.x.group() == CoeffGroup::finite(cyclic_group(2).group)))
    throw std::invalid_argument("x must have coefficients in the 2-element group");
  for (int i = 0; i < 8; ++i) {
    const auto& alpha = inst.alphas[static_cast<std::size_t>(i)];
    if (!injective(alpha)) throw std::invalid_argument("alpha " + std::to_string(i) + " is not injective");
    if (!compatible(triple_at(i), alpha))
      throw std::invalid_argument("alpha " + std::to_string(i) + " does not preserve its pattern");
  }
  auto touched = inst.touched();
  for (const auto& [m, c] : inst.x.terms())
    if (touched.contains(m)) throw std::invalid_argument("x meets the alpha domains at " + std::to_string(m));
}

CantorWitness cantor_claim_witness(const CantorInstance& inst) {
  validate_cantor_instance(inst);
  CantorWitness w;
  int chosen = -1;
  for (int i = 0; i < 8 && chosen < 0; ++i)
    if (!constant(triple_at(i)) && compatible(triple_at(i), inst.alphas[static_cast<std::size_t>(i)])) chosen = i;
  if (chosen < 0) throw std::logic_error("no non-constant compatible triple");
  w.triple = triple_at(chosen);
  const Triple& t = w.triple;
  const PartialInjection& alpha = inst.alphas[static_cast<std::size_t>(chosen)];

  // h is the pattern, g = h + x. We need g(η(m)) = h(m) for every m.
  auto h = [&](Nat m) { return pattern_value(t, m); };
  auto g = [&](Nat m) { return h(m) ^ flip(inst, m); };

  Nat top = 0;
  for (Nat m : inst.touched()) top = std::max(top, m + 1);
  for (const auto& [m, c] : inst.x.terms()) top = std::max(top, m + 1);
  const Nat T = (top + 2) / 3 * 3;

  // d > 0: the window has d more h-ones than g-ones.
  long d = 0;
  for (const auto& [m, c] : inst.x.terms()) d += h(m) == 1 ? 1 : -1;
  const Nat D = static_cast<Nat>(d < 0 ? -d : d);
  const Nat theta = T + 3 * D;

  std::array<std::int64_t, 3> shift{0, 0, 0};
  int r1 = -1, r0 = -1;
  for (int r = 2; r >= 0; --r) (t[static_cast<std::size_t>(r)] ? r1 : r0) = r;
  // The class that must receive extra sources from below moves right and
  // leaves D holes in [θ, θ+3D); the other class moves left and swallows D
  // points of [T, θ).
  int up = d > 0 ? r1 : r0, down = d > 0 ? r0 : r1;
  if (D > 0) {
    shift[static_cast<std::size_t>(up)] = static_cast<std::int64_t>(3 * D);
    shift[static_cast<std::size_t>(down)] = -static_cast<std::int64_t>(3 * D);
  }

  std::set<Nat> targets;
  for (Nat m = 0; m < theta; ++m)
    if (!(m >= T && static_cast<int>(m % 3) == down)) targets.insert(m);
  for (Nat m = theta; m < theta + 3 * D; ++m)
    if (static_cast<int>(m % 3) == up) targets.insert(m);

  std::map<Nat, Nat> eta;
  for (const auto& [a, b] : alpha) {
    eta[a] = b;
    targets.erase(b);
  }
  for (Nat m = 0; m < theta; ++m)
    if (!eta.contains(m) && targets.contains(m) && g(m) == h(m)) {
      eta[m] = m;
      targets.erase(m);
    }
  std::array<std::vector<Nat>, 2> free_targets;
  for (Nat m : targets) free_targets[static_cast<std::size_t>(g(m))].push_back(m);
  std::array<std::size_t, 2> next{0, 0};
  for (Nat m = 0; m < theta; ++m) {
    if (eta.contains(m)) continue;
    auto v = static_cast<std::size_t>(h(m));
    if (next[v] >= free_targets[v].size()) throw std::logic_error("level-set matching ran out of targets");
    eta[m] = free_targets[v][next[v]++];
  }
  w.eta = TailShiftPerm(eta, theta, shift);
  return w;
}

VerificationReport verify_cantor_witness(const CantorInstance& inst, const CantorWitness& w) {
  VerificationReport rep;
  try {
    validate_cantor_instance(inst);
    rep.add("instance", true);
  } catch (const std::invalid_argument& e) {
    rep.add("instance", false, e.what());
    return rep;
  }
  const Triple& t = w.triple;
  bool bits = std::all_of(t.begin(), t.end(), [](int v) { return v == 0 || v == 1; });
  rep.add("triple", bits && !constant(t), "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                                                 std::to_string(t[2]) + ")");
  if (!bits) return rep;
  const PartialInjection& alpha = inst.alphas[static_cast<std::size_t>(triple_index(t))];

  bool contains = std::all_of(alpha.begin(), alpha.end(), [&](const auto& p) { return w.eta(p.first) == p.second; });
  rep.add("extends-alpha", contains);

  auto h = [&](Nat m) { return pattern_value(t, m); };
  auto g = [&](Nat m) { return h(m) ^ flip(inst, m); };

  Nat top = 0;
  for (Nat m : inst.touched()) top = std::max(top, m + 1);
  for (const auto& [m, c] : inst.x.terms()) top = std::max(top, m + 1);

  // Past the threshold η shifts within residue classes and stays above
  // every point where g and h differ, so g(η m) = h(η m) = h(m) there.
  const auto& sh = w.eta.shift();
  bool tail = std::all_of(sh.begin(), sh.end(), [](std::int64_t s) { return s % 3 == 0; });
  for (auto s : sh) tail = tail && static_cast<std::int64_t>(w.eta.threshold()) + s >= static_cast<std::int64_t>(top);
  rep.add("tail", tail);

  const Nat horizon = w.eta.horizon();
  bool action = true;
  Nat bad = 0;
  for (Nat m = 0; m < horizon && action; ++m)
    if (g(w.eta(m)) != h(m)) {
      action = false;
      bad = m;
    }
  rep.add("eta-h-equals-h-plus-x", action, action ? "checked below " + std::to_string(horizon)
                                                  : "fails at " + std::to_string(bad));

  // Bijectivity, independently of the constructor: images of [0, horizon)
  // are distinct, and every point below the horizon has a preimage.
  std::set<Nat> images;
  bool injective_ok = true;
  Nat reach = horizon;
  for (auto s : sh) reach = std::max<Nat>(reach, horizon + static_cast<Nat>(s < 0 ? -s : s));
  for (Nat m = 0; m < reach; ++m) injective_ok = injective_ok && images.insert(w.eta(m)).second;
  bool surjective_ok = true;
  for (Nat m = 0; m < horizon; ++m) surjective_ok = surjective_ok && images.contains(m);
  rep.add("bijective", injective_ok && surjective_ok);
  return rep;
}

CantorInstance random_cantor_instance(std::mt19937_64& rng, int max_domain, int max_support) {
  CantorInstance inst;
  std::uniform_int_distribution<Nat> point(0, 47);
  for (int i = 0; i < 8; ++i) {
    Triple t = triple_at(i);
    PartialInjection& alpha = inst.alphas[static_cast<std::size_t>(i)];
    std::set<Nat> used;
    int size = std::uniform_int_distribution<int>(0, max_domain)(rng);
    for (int tries = 0; static_cast<int>(alpha.size()) < size && tries < 1000; ++tries) {
      Nat a = point(rng), b = point(rng);
      if (alpha.contains(a) || used.contains(b) || pattern_value(t, a) != pattern_value(t, b)) continue;
      alpha[a] = b;
      used.insert(b);
    }
  }
  auto touched = inst.touched();
  std::uniform_int_distribution<Nat> spot(0, 95);
  int size = std::uniform_int_distribution<int>(0, max_support)(rng);
  std::set<Nat> support;
  for (int tries = 0; static_cast<int>(support.size()) < size && tries < 1000; ++tries) {
    Nat m = spot(rng);
    if (!touched.contains(m)) support.insert(m);
  }
  for (Nat m : support) inst.x.add_term(m, 1);
  return inst;
}

}  // namespace canontop
