#include "canontop/ring_embed.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace canontop {

std::string Unital::str() const { return "(" + a.str() + ", " + k.get_str() + ")"; }

Unital unital_add(const Unital& p, const Unital& q) { return {p.a + q.a, p.k + q.k}; }

Unital unital_neg(const Unital& p) { return {-p.a, -p.k}; }

Unital unital_mul(const Unital& p, const Unital& q) {
  if (!same_ring(p.a.ring(), q.a.ring())) throw std::invalid_argument("unitalization over different rings");
  RingElem a = p.a.is_zero() || q.a.is_zero() ? RingElem::zero(p.a.ring()) : p.a * q.a;
  if (q.k != 0) a = a + times(q.k, p.a);
  if (p.k != 0) a = a + times(p.k, q.a);
  return {std::move(a), p.k * q.k};
}

std::string Mat3::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < 3; ++j) os << (j ? ", " : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

Mat3 mat3_integer(const RingPtr& ring, const std::array<std::array<int, 3>, 3>& m) {
  Unital zero = Unital::scalar(ring, 0);
  Mat3 out{{{{zero, zero, zero}, {zero, zero, zero}, {zero, zero, zero}}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.at(i, j).k = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

Mat3 mat3_identity(const RingPtr& ring) { return mat3_integer(ring, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}); }

Mat3 mat3_mul(const Mat3& m, const Mat3& n) {
  if (!same_ring(m.ring(), n.ring())) throw std::invalid_argument("matrices over different rings");
  Mat3 out = mat3_integer(m.ring(), {});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Unital s = Unital::scalar(m.ring(), 0);
      for (int t = 0; t < 3; ++t) s = unital_add(s, unital_mul(m.at(i, t), n.at(t, j)));
      out.at(i, j) = std::move(s);
    }
  return out;
}

Mat3 mat3_product(std::initializer_list<Mat3> factors) {
  if (factors.size() == 0) throw std::invalid_argument("empty matrix product");
  auto it = factors.begin();
  Mat3 out = *it;
  for (++it; it != factors.end(); ++it) out = mat3_mul(out, *it);
  return out;
}

namespace {

Mat3 elementary(const RingElem& x, int i, int j) {
  Mat3 m = mat3_identity(x.ring());
  m.at(i, j) = Unital::embed(x);
  return m;
}

}  // namespace

Mat3 e12(const RingElem& x) { return elementary(x, 0, 1); }
Mat3 e23(const RingElem& x) { return elementary(x, 1, 2); }
Mat3 e13(const RingElem& x) { return elementary(x, 0, 2); }

Mat3 mat_d(const RingPtr& r) { return mat3_integer(r, {{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}); }
Mat3 mat_l(const RingPtr& r) { return mat3_integer(r, {{{-1, 0, 0}, {0, 1, 0}, {0, 1, 1}}}); }
Mat3 mat_l_prime(const RingPtr& r) { return mat3_integer(r, {{{-1, 0, 0}, {0, 1, 0}, {0, -1, 1}}}); }
Mat3 mat_m(const RingPtr& r) { return mat3_integer(r, {{{1, 0, 0}, {1, 1, 0}, {0, 0, -1}}}); }
Mat3 mat_m_prime(const RingPtr& r) { return mat3_integer(r, {{{1, 0, 0}, {-1, 1, 0}, {0, 0, -1}}}); }
Mat3 mat_k(const RingPtr& r) { return mat3_integer(r, {{{1, 0, 0}, {0, -1, 1}, {0, 0, 1}}}); }

bool EmbeddingReport::all_pass() const {
  for (const auto& r : identities)
    if (!r.pass) return false;
  for (const auto& r : inverses)
    if (!r.pass) return false;
  return true;
}

namespace {

struct Sampler {
  RingPtr ring;
  bool symbolic;
  std::mt19937_64 rng;
  std::vector<RingElem> pool;  // free ring: sample elements for I1

  RingElem element() {
    if (!symbolic) return random_element(ring, rng);
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  }
  Unital unital() {
    RingElem a = element();
    return {a, std::uniform_int_distribution<int>(-4, 4)(rng)};
  }
};

std::vector<RingElem> free_pool(const RingPtr& ring) {
  RingElem x = RingElem::generator(ring, std::get<RingDescriptor::Free>(ring->kind()).generators[0]);
  RingElem y = RingElem::generator(ring, std::get<RingDescriptor::Free>(ring->kind()).generators[1]);
  RingElem one = RingElem::integer(ring, 1);
  return {RingElem::zero(ring), one, x, y, -x, x + y, x * y, y * x - times(2, x), x * x * y + one, y * y - x * y * x};
}

using Check = std::function<bool(const RingElem& x, const RingElem& y)>;

IdentityResult run_identity(const std::string& name, const std::string& statement, Sampler& s, int trials,
                            const Check& check) {
  IdentityResult r;
  r.name = name;
  r.statement = statement;
  if (s.symbolic) {
    const auto& gens = std::get<RingDescriptor::Free>(s.ring->kind()).generators;
    RingElem x = RingElem::generator(s.ring, gens[0]);
    RingElem y = RingElem::generator(s.ring, gens[1]);
    r.checked = 1;
    if (!check(x, y)) {
      r.pass = false;
      r.counterexample = {{"x", x.str()}, {"y", y.str()}};
    }
    return r;
  }
  for (int t = 0; t < trials; ++t) {
    RingElem x = s.element(), y = s.element();
    ++r.checked;
    if (!check(x, y)) {
      r.pass = false;
      r.counterexample = {{"x", x.str()}, {"y", y.str()}};
      break;
    }
  }
  return r;
}

IdentityResult run_unital_axioms(Sampler& s, int trials) {
  IdentityResult r;
  r.name = "I1";
  r.statement = "R1 is an associative ring with unity (0,1)";
  for (int t = 0; t < trials; ++t) {
    Unital p = s.unital(), q = s.unital(), w = s.unital();
    Unital one = Unital::scalar(s.ring, 1);
    ++r.checked;
    bool ok = unital_mul(unital_mul(p, q), w) == unital_mul(p, unital_mul(q, w)) &&
              unital_mul(p, unital_add(q, w)) == unital_add(unital_mul(p, q), unital_mul(p, w)) &&
              unital_mul(unital_add(p, q), w) == unital_add(unital_mul(p, w), unital_mul(q, w)) &&
              unital_mul(p, one) == p && unital_mul(one, p) == p;
    if (!ok) {
      r.pass = false;
      r.counterexample = {{"p", p.str()}, {"q", q.str()}, {"r", w.str()}};
      break;
    }
  }
  return r;
}

}  // namespace

EmbeddingReport verify_embedding_identities(const RingPtr& ring, std::uint64_t seed, int trials) {
  if (!ring) throw std::invalid_argument("no ring given");
  bool symbolic = false;
  if (const auto* f = std::get_if<RingDescriptor::Free>(&ring->kind())) {
    if (f->generators.size() < 2) throw std::invalid_argument("free ring needs two generators");
    symbolic = true;
  } else if (!ring->is_finite()) {
    throw std::invalid_argument("unsupported ring " + ring->name());
  }
  if (trials < 1) throw std::invalid_argument("trials must be positive");

  Sampler s{ring, symbolic, std::mt19937_64(seed), {}};
  if (symbolic) s.pool = free_pool(ring);

  const Mat3 I = mat3_identity(ring), D = mat_d(ring), L = mat_l(ring), Lp = mat_l_prime(ring), M = mat_m(ring),
             Mp = mat_m_prime(ring), K = mat_k(ring);

  EmbeddingReport rep;
  rep.ring = ring->name();
  rep.symbolic = symbolic;
  rep.identities.push_back(run_unital_axioms(s, trials));
  rep.identities.push_back(run_identity("I2", "E13(-x) = D E13(x) D", s, trials, [&](const RingElem& x, const RingElem&) {
    return e13(-x) == mat3_product({D, e13(x), D});
  }));
  rep.identities.push_back(
      run_identity("I3", "E13(xy) = E12(x) E23(y) E12(-x) E23(-y)", s, trials, [&](const RingElem& x, const RingElem& y) {
        return e13(x * y) == mat3_product({e12(x), e23(y), e12(-x), e23(-y)});
      }));
  rep.identities.push_back(run_identity("I4", "E12(x) = E13(x) L E13(x) L'", s, trials, [&](const RingElem& x, const RingElem&) {
    return e12(x) == mat3_product({e13(x), L, e13(x), Lp});
  }));
  rep.identities.push_back(run_identity("I5", "E23(y) = E13(y) M E13(y) M'", s, trials, [&](const RingElem&, const RingElem& y) {
    return e23(y) == mat3_product({e13(y), M, e13(y), Mp});
  }));
  rep.identities.push_back(run_identity("I6", "E13(x) = (E12(x) K)^2", s, trials, [&](const RingElem& x, const RingElem&) {
    Mat3 t = mat3_mul(e12(x), K);
    return e13(x) == mat3_mul(t, t);
  }));

  rep.i5_signed = run_identity("I5-signed", "E23(-y) = E13(y) M E13(y) M'", s, trials,
                               [&](const RingElem&, const RingElem& y) {
                                 return e23(-y) == mat3_product({e13(y), M, e13(y), Mp});
                               });

  auto inv = [&](std::string name, std::string statement, const Check& c) {
    rep.inverses.push_back(run_identity(std::move(name), std::move(statement), s, trials, c));
  };
  inv("E12", "E12(x) E12(-x) = I", [&](const RingElem& x, const RingElem&) { return mat3_mul(e12(x), e12(-x)) == I; });
  inv("E23", "E23(x) E23(-x) = I", [&](const RingElem& x, const RingElem&) { return mat3_mul(e23(x), e23(-x)) == I; });
  inv("E13", "E13(x) E13(-x) = I", [&](const RingElem& x, const RingElem&) { return mat3_mul(e13(x), e13(-x)) == I; });
  auto fixed = [&](std::string name, std::string statement, const Mat3& a, const Mat3& b) {
    IdentityResult r;
    r.name = std::move(name);
    r.statement = std::move(statement);
    r.checked = 1;
    r.pass = mat3_mul(a, b) == I;
    rep.inverses.push_back(std::move(r));
  };
  fixed("D", "D D = I", D, D);
  fixed("L", "L L' = I", L, Lp);
  fixed("M", "M M' = I", M, Mp);
  fixed("K", "K K = I", K, K);
  return rep;
}

}  // namespace canontop
