#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "canontop/rational.hpp"

namespace canontop {

class RingDescriptor;
using RingPtr = std::shared_ptr<const RingDescriptor>;

// Describes one of the supported (associative, possibly noncommutative) rings.
class RingDescriptor {
public:
  struct ZMod {
    std::int64_t modulus;
  };
  struct Free {
    std::vector<std::string> generators;
  };
  struct Matrix {
    RingPtr base;
    int dim;
  };
  using Kind = std::variant<ZMod, Free, Matrix>;

  static RingPtr zmod(std::int64_t modulus);
  static RingPtr free(std::vector<std::string> generators);
  static RingPtr matrix(RingPtr base, int dim);

  /// "free" (generators x, y), "zmod:N", "mat:D:<base>".
  static RingPtr parse(const std::string& text);

  const Kind& kind() const { return kind_; }
  bool is_finite() const;
  /// Index of a free generator, or -1.
  int generator_index(const std::string& name) const;
  std::string name() const;

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b);

private:
  explicit RingDescriptor(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

/// An element of a described ring, always kept in canonical normal form:
/// residues reduced, free-ring words merged with zero coefficients dropped.
class RingElem {
public:
  using Word = std::vector<int>;
  using Poly = std::map<Word, BigInt>;
  using Payload = std::variant<std::int64_t, Poly, std::vector<RingElem>>;

  static RingElem zero(const RingPtr& ring);
  static RingElem integer(const RingPtr& ring, const BigInt& n);
  static RingElem residue(const RingPtr& ring, std::int64_t value);
  static RingElem generator(const RingPtr& ring, const std::string& name);
  static RingElem polynomial(const RingPtr& ring, Poly terms);
  /// Row-major entries of a square matrix over the descriptor's base ring.
  static RingElem matrix(const RingPtr& ring, std::vector<RingElem> entries);

  const RingPtr& ring() const { return ring_; }
  const Payload& payload() const { return payload_; }
  bool is_zero() const;
  std::string str() const;

  friend RingElem operator+(const RingElem& a, const RingElem& b);
  friend RingElem operator-(const RingElem& a, const RingElem& b);
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  friend RingElem operator-(const RingElem& a);
  friend bool operator==(const RingElem& a, const RingElem& b);

private:
  RingElem(RingPtr ring, Payload payload) : ring_(std::move(ring)), payload_(std::move(payload)) {}
  RingPtr ring_;
  Payload payload_;
};

/// k×a in the additive group of the ring, by doubling.
RingElem times(const BigInt& k, const RingElem& a);

/// Uniform random element; only for finite rings.
RingElem random_element(const RingPtr& ring, std::mt19937_64& rng);

// Expression trees over named generators and integer literals.
class Expr {
public:
  struct Node;

  static Expr gen(std::string name);
  static Expr lit(BigInt value);

  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator-(Expr a);

  const Node& node() const { return *node_; }

private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  enum class Op { gen, lit, add, sub, mul, neg };
  Op op;
  std::string name;
  BigInt value;
  std::vector<Expr> args;
};

using Assignment = std::map<std::string, RingElem>;

/// Evaluates expr in ring. Throws std::invalid_argument on an unbound name
/// or an assignment value from a different ring.
RingElem ring_eval(const Expr& expr, const RingPtr& ring, const Assignment& assignment);

/// Binds every generator of a free ring to itself.
Assignment free_assignment(const RingPtr& ring);

}  // namespace canontop
