#include "canontop/ring.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace canontop {

namespace {

std::int64_t mod_reduce(const BigInt& v, std::int64_t m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r.get_si();
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

void require_same(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) throw std::invalid_argument("ring mismatch: " + a->name() + " vs " + b->name());
}

int matrix_dim(const RingDescriptor& r) { return std::get<RingDescriptor::Matrix>(r.kind()).dim; }
const RingPtr& matrix_base(const RingDescriptor& r) { return std::get<RingDescriptor::Matrix>(r.kind()).base; }

}  // namespace

RingPtr RingDescriptor::zmod(std::int64_t modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
  return RingPtr(new RingDescriptor(ZMod{modulus}));
}

RingPtr RingDescriptor::free(std::vector<std::string> generators) {
  std::set<std::string> seen;
  for (const auto& g : generators) {
    if (g.empty()) throw std::invalid_argument("empty generator name");
    if (!seen.insert(g).second) throw std::invalid_argument("duplicate generator name '" + g + "'");
  }
  return RingPtr(new RingDescriptor(Free{std::move(generators)}));
}

RingPtr RingDescriptor::matrix(RingPtr base, int dim) {
  if (!base) throw std::invalid_argument("matrix ring needs a base ring");
  if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
  return RingPtr(new RingDescriptor(Matrix{std::move(base), dim}));
}

RingPtr RingDescriptor::parse(const std::string& text) {
  auto number = [&](const std::string& s) -> std::int64_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 12)
      throw std::invalid_argument("malformed ring descriptor: '" + text + "'");
    return std::stoll(s);
  };
  if (text == "free") return free({"x", "y"});
  if (text.rfind("zmod:", 0) == 0) return zmod(number(text.substr(5)));
  if (text.rfind("mat:", 0) == 0) {
    auto colon = text.find(':', 4);
    if (colon == std::string::npos) throw std::invalid_argument("malformed ring descriptor: '" + text + "'");
    int dim = static_cast<int>(number(text.substr(4, colon - 4)));
    return matrix(parse(text.substr(colon + 1)), dim);
  }
  throw std::invalid_argument("unknown ring descriptor: '" + text + "'");
}

bool RingDescriptor::is_finite() const {
  return std::visit(overloaded{
                        [](const ZMod&) { return true; },
                        [](const Free&) { return false; },
                        [](const Matrix& m) { return m.base->is_finite(); },
                    },
                    kind_);
}

int RingDescriptor::generator_index(const std::string& name) const {
  const auto* f = std::get_if<Free>(&kind_);
  if (!f) return -1;
  auto it = std::find(f->generators.begin(), f->generators.end(), name);
  return it == f->generators.end() ? -1 : static_cast<int>(it - f->generators.begin());
}

std::string RingDescriptor::name() const {
  return std::visit(overloaded{
                        [](const ZMod& z) { return "zmod:" + std::to_string(z.modulus); },
                        [](const Free& f) {
                          std::string s = "free[";
                          for (std::size_t i = 0; i < f.generators.size(); ++i)
                            s += (i ? "," : "") + f.generators[i];
                          return s + "]";
                        },
                        [](const Matrix& m) { return "mat:" + std::to_string(m.dim) + ":" + m.base->name(); },
                    },
                    kind_);
}

bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
  if (a.kind_.index() != b.kind_.index()) return false;
  return std::visit(overloaded{
                        [&](const RingDescriptor::ZMod& z) {
                          return z.modulus == std::get<RingDescriptor::ZMod>(b.kind_).modulus;
                        },
                        [&](const RingDescriptor::Free& f) {
                          return f.generators == std::get<RingDescriptor::Free>(b.kind_).generators;
                        },
                        [&](const RingDescriptor::Matrix& m) {
                          const auto& o = std::get<RingDescriptor::Matrix>(b.kind_);
                          return m.dim == o.dim && same_ring(m.base, o.base);
                        },
                    },
                    a.kind_);
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------------------

RingElem RingElem::zero(const RingPtr& ring) { return integer(ring, 0); }

RingElem RingElem::integer(const RingPtr& ring, const BigInt& n) {
  return std::visit(overloaded{
                        [&](const RingDescriptor::ZMod& z) {
                          return RingElem(ring, mod_reduce(n, z.modulus));
                        },
                        [&](const RingDescriptor::Free&) {
                          Poly p;
                          if (n != 0) p.emplace(Word{}, n);
                          return RingElem(ring, std::move(p));
                        },
                        [&](const RingDescriptor::Matrix& m) {
                          std::vector<RingElem> entries;
                          entries.reserve(static_cast<std::size_t>(m.dim * m.dim));
                          for (int i = 0; i < m.dim; ++i)
                            for (int j = 0; j < m.dim; ++j)
                              entries.push_back(integer(m.base, i == j ? n : BigInt(0)));
                          return RingElem(ring, std::move(entries));
                        },
                    },
                    ring->kind());
}

RingElem RingElem::residue(const RingPtr& ring, std::int64_t value) {
  const auto* z = std::get_if<RingDescriptor::ZMod>(&ring->kind());
  if (!z) throw std::invalid_argument("residue in non-modular ring " + ring->name());
  return RingElem(ring, mod_reduce(BigInt(static_cast<long>(value)), z->modulus));
}

RingElem RingElem::generator(const RingPtr& ring, const std::string& name) {
  int idx = ring->generator_index(name);
  if (idx < 0) throw std::invalid_argument("'" + name + "' is not a generator of " + ring->name());
  return RingElem(ring, Poly{{Word{idx}, BigInt(1)}});
}

RingElem RingElem::polynomial(const RingPtr& ring, Poly terms) {
  const auto* f = std::get_if<RingDescriptor::Free>(&ring->kind());
  if (!f) throw std::invalid_argument("polynomial in non-free ring " + ring->name());
  for (auto it = terms.begin(); it != terms.end();) {
    for (int g : it->first)
      if (g < 0 || g >= static_cast<int>(f->generators.size()))
        throw std::invalid_argument("generator index out of range");
    it = it->second == 0 ? terms.erase(it) : std::next(it);
  }
  return RingElem(ring, std::move(terms));
}

RingElem RingElem::matrix(const RingPtr& ring, std::vector<RingElem> entries) {
  const auto* m = std::get_if<RingDescriptor::Matrix>(&ring->kind());
  if (!m) throw std::invalid_argument("matrix entries for non-matrix ring " + ring->name());
  if (entries.size() != static_cast<std::size_t>(m->dim * m->dim))
    throw std::invalid_argument("matrix entry count does not match dimension");
  for (const auto& e : entries) require_same(e.ring(), m->base);
  return RingElem(ring, std::move(entries));
}

bool RingElem::is_zero() const {
  return std::visit(overloaded{
                        [](std::int64_t r) { return r == 0; },
                        [](const Poly& p) { return p.empty(); },
                        [](const std::vector<RingElem>& es) {
                          return std::all_of(es.begin(), es.end(), [](const RingElem& e) { return e.is_zero(); });
                        },
                    },
                    payload_);
}

std::string RingElem::str() const {
  return std::visit(
      overloaded{
          [](std::int64_t r) { return std::to_string(r); },
          [this](const Poly& p) {
            if (p.empty()) return std::string("0");
            const auto& gens = std::get<RingDescriptor::Free>(ring_->kind()).generators;
            std::ostringstream os;
            bool first = true;
            for (const auto& [word, c] : p) {
              BigInt mag = c < 0 ? BigInt(-c) : c;
              if (first) {
                if (c < 0) os << "-";
              } else {
                os << (c < 0 ? " - " : " + ");
              }
              first = false;
              if (word.empty()) {
                os << mag.get_str();
                continue;
              }
              if (mag != 1) os << mag.get_str() << "*";
              for (std::size_t i = 0; i < word.size(); ++i) os << (i ? "*" : "") << gens[static_cast<std::size_t>(word[i])];
            }
            return os.str();
          },
          [this](const std::vector<RingElem>& es) {
            int d = matrix_dim(*ring_);
            std::string s = "[";
            for (int i = 0; i < d; ++i) {
              s += i ? ",[" : "[";
              for (int j = 0; j < d; ++j) s += (j ? "," : "") + es[static_cast<std::size_t>(i * d + j)].str();
              s += "]";
            }
            return s + "]";
          },
      },
      payload_);
}

RingElem operator+(const RingElem& a, const RingElem& b) {
  require_same(a.ring_, b.ring_);
  return std::visit(
      overloaded{
          [&](std::int64_t r) {
            auto m = std::get<RingDescriptor::ZMod>(a.ring_->kind()).modulus;
            std::int64_t s = r + std::get<std::int64_t>(b.payload_);
            return RingElem(a.ring_, s >= m ? s - m : s);
          },
          [&](const RingElem::Poly& p) {
            RingElem::Poly out = p;
            for (const auto& [w, c] : std::get<RingElem::Poly>(b.payload_)) {
              auto [it, inserted] = out.emplace(w, c);
              if (!inserted) {
                it->second += c;
                if (it->second == 0) out.erase(it);
              }
            }
            return RingElem(a.ring_, std::move(out));
          },
          [&](const std::vector<RingElem>& es) {
            const auto& fs = std::get<std::vector<RingElem>>(b.payload_);
            std::vector<RingElem> out;
            out.reserve(es.size());
            for (std::size_t i = 0; i < es.size(); ++i) out.push_back(es[i] + fs[i]);
            return RingElem(a.ring_, std::move(out));
          },
      },
      a.payload_);
}

RingElem operator-(const RingElem& a) {
  return std::visit(overloaded{
                        [&](std::int64_t r) {
                          auto m = std::get<RingDescriptor::ZMod>(a.ring_->kind()).modulus;
                          return RingElem(a.ring_, r == 0 ? 0 : m - r);
                        },
                        [&](const RingElem::Poly& p) {
                          RingElem::Poly out = p;
                          for (auto& [w, c] : out) c = -c;
                          return RingElem(a.ring_, std::move(out));
                        },
                        [&](const std::vector<RingElem>& es) {
                          std::vector<RingElem> out;
                          out.reserve(es.size());
                          for (const auto& e : es) out.push_back(-e);
                          return RingElem(a.ring_, std::move(out));
                        },
                    },
                    a.payload_);
}

RingElem operator-(const RingElem& a, const RingElem& b) { return a + (-b); }

RingElem operator*(const RingElem& a, const RingElem& b) {
  require_same(a.ring_, b.ring_);
  return std::visit(
      overloaded{
          [&](std::int64_t r) {
            auto m = std::get<RingDescriptor::ZMod>(a.ring_->kind()).modulus;
            return RingElem(a.ring_, mod_mul(r, std::get<std::int64_t>(b.payload_), m));
          },
          [&](const RingElem::Poly& p) {
            RingElem::Poly out;
            for (const auto& [w1, c1] : p) {
              for (const auto& [w2, c2] : std::get<RingElem::Poly>(b.payload_)) {
                RingElem::Word w = w1;
                w.insert(w.end(), w2.begin(), w2.end());
                auto [it, inserted] = out.emplace(std::move(w), c1 * c2);
                if (!inserted) it->second += c1 * c2;
              }
            }
            for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
            return RingElem(a.ring_, std::move(out));
          },
          [&](const std::vector<RingElem>& es) {
            const auto& fs = std::get<std::vector<RingElem>>(b.payload_);
            int d = matrix_dim(*a.ring_);
            std::vector<RingElem> out;
            out.reserve(es.size());
            for (int i = 0; i < d; ++i) {
              for (int j = 0; j < d; ++j) {
                RingElem acc = RingElem::zero(matrix_base(*a.ring_));
                for (int k = 0; k < d; ++k)
                  acc = acc + es[static_cast<std::size_t>(i * d + k)] * fs[static_cast<std::size_t>(k * d + j)];
                out.push_back(std::move(acc));
              }
            }
            return RingElem(a.ring_, std::move(out));
          },
      },
      a.payload_);
}

bool operator==(const RingElem& a, const RingElem& b) {
  return same_ring(a.ring_, b.ring_) && a.payload_ == b.payload_;
}

RingElem times(const BigInt& k, const RingElem& a) {
  if (k == 0 || a.is_zero()) return RingElem::zero(a.ring());
  if (k == 1) return a;
  if (k < 0) return -times(BigInt(-k), a);
  RingElem result = RingElem::zero(a.ring());
  RingElem power = a;
  BigInt rest = k;
  while (rest != 0) {
    if (mpz_odd_p(rest.get_mpz_t())) result = result + power;
    rest >>= 1;
    if (rest != 0) power = power + power;
  }
  return result;
}

RingElem random_element(const RingPtr& ring, std::mt19937_64& rng) {
  return std::visit(overloaded{
                        [&](const RingDescriptor::ZMod& z) {
                          std::uniform_int_distribution<std::int64_t> dist(0, z.modulus - 1);
                          return RingElem::residue(ring, dist(rng));
                        },
                        [&](const RingDescriptor::Free&) -> RingElem {
                          throw std::invalid_argument("random_element needs a finite ring");
                        },
                        [&](const RingDescriptor::Matrix& m) {
                          std::vector<RingElem> entries;
                          for (int i = 0; i < m.dim * m.dim; ++i) entries.push_back(random_element(m.base, rng));
                          return RingElem::matrix(ring, std::move(entries));
                        },
                    },
                    ring->kind());
}

// ---------------------------------------------------------------------------

Expr Expr::gen(std::string name) {
  return Expr(std::make_shared<const Node>(Node{Node::Op::gen, std::move(name), 0, {}}));
}
Expr Expr::lit(BigInt value) { return Expr(std::make_shared<const Node>(Node{Node::Op::lit, {}, std::move(value), {}})); }
Expr operator+(Expr a, Expr b) {
  return Expr(std::make_shared<const Expr::Node>(Expr::Node{Expr::Node::Op::add, {}, 0, {std::move(a), std::move(b)}}));
}
Expr operator-(Expr a, Expr b) {
  return Expr(std::make_shared<const Expr::Node>(Expr::Node{Expr::Node::Op::sub, {}, 0, {std::move(a), std::move(b)}}));
}
Expr operator*(Expr a, Expr b) {
  return Expr(std::make_shared<const Expr::Node>(Expr::Node{Expr::Node::Op::mul, {}, 0, {std::move(a), std::move(b)}}));
}
Expr operator-(Expr a) {
  return Expr(std::make_shared<const Expr::Node>(Expr::Node{Expr::Node::Op::neg, {}, 0, {std::move(a)}}));
}

RingElem ring_eval(const Expr& expr, const RingPtr& ring, const Assignment& assignment) {
  const auto& n = expr.node();
  switch (n.op) {
    case Expr::Node::Op::gen: {
      auto it = assignment.find(n.name);
      if (it == assignment.end()) throw std::invalid_argument("unbound generator '" + n.name + "'");
      if (!same_ring(it->second.ring(), ring))
        throw std::invalid_argument("'" + n.name + "' is bound to an element of " + it->second.ring()->name() +
                                    ", expected " + ring->name());
      return it->second;
    }
    case Expr::Node::Op::lit:
      return RingElem::integer(ring, n.value);
    case Expr::Node::Op::add:
      return ring_eval(n.args[0], ring, assignment) + ring_eval(n.args[1], ring, assignment);
    case Expr::Node::Op::sub:
      return ring_eval(n.args[0], ring, assignment) - ring_eval(n.args[1], ring, assignment);
    case Expr::Node::Op::mul:
      return ring_eval(n.args[0], ring, assignment) * ring_eval(n.args[1], ring, assignment);
    case Expr::Node::Op::neg:
      return -ring_eval(n.args[0], ring, assignment);
  }
  throw std::logic_error("unreachable");
}

Assignment free_assignment(const RingPtr& ring) {
  const auto* f = std::get_if<RingDescriptor::Free>(&ring->kind());
  if (!f) throw std::invalid_argument("free_assignment needs a free ring");
  Assignment out;
  for (const auto& g : f->generators) out.emplace(g, RingElem::generator(ring, g));
  return out;
}

}  // namespace canontop
