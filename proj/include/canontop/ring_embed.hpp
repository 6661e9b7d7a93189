#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "canontop/ring.hpp"

namespace canontop {

/// Element (a, k) of the unitalization R₁ = R × ℤ.
struct Unital {
  RingElem a;
  BigInt k;

  static Unital embed(const RingElem& a) { return {a, 0}; }
  static Unital scalar(const RingPtr& ring, const BigInt& k) { return {RingElem::zero(ring), k}; }

  friend bool operator==(const Unital& p, const Unital& q) { return p.a == q.a && p.k == q.k; }
  std::string str() const;
};

Unital unital_add(const Unital& p, const Unital& q);
Unital unital_neg(const Unital& p);
/// (a,k)·(b,l) = (ab + l×a + k×b, kl); throws std::invalid_argument on a
/// ring mismatch.
Unital unital_mul(const Unital& p, const Unital& q);

/// 3×3 matrix over R₁.
struct Mat3 {
  std::array<std::array<Unital, 3>, 3> e;

  const Unital& at(int i, int j) const { return e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  Unital& at(int i, int j) { return e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const RingPtr& ring() const { return e[0][0].a.ring(); }

  friend bool operator==(const Mat3& m, const Mat3& n) { return m.e == n.e; }
  std::string str() const;
};

Mat3 mat3_identity(const RingPtr& ring);
/// Integer matrix, entries (0, m[i][j]).
Mat3 mat3_integer(const RingPtr& ring, const std::array<std::array<int, 3>, 3>& m);
Mat3 mat3_mul(const Mat3& m, const Mat3& n);
Mat3 mat3_product(std::initializer_list<Mat3> factors);

/// Identity plus x at (0,1), (1,2) or (0,2).
Mat3 e12(const RingElem& x);
Mat3 e23(const RingElem& x);
Mat3 e13(const RingElem& x);

// The integer matrices of the factorizations.
Mat3 mat_d(const RingPtr& ring);
Mat3 mat_l(const RingPtr& ring);
Mat3 mat_l_prime(const RingPtr& ring);
Mat3 mat_m(const RingPtr& ring);
Mat3 mat_m_prime(const RingPtr& ring);
Mat3 mat_k(const RingPtr& ring);

struct IdentityResult {
  std::string name;
  std::string statement;
  bool pass = true;
  std::uint64_t checked = 0;
  /// First failing assignment, empty on success.
  std::map<std::string, std::string> counterexample;
};

struct EmbeddingReport {
  std::string ring;
  bool symbolic = false;  // free ring: one generic check is a proof
  std::vector<IdentityResult> identities;  // I1..I6
  std::vector<IdentityResult> inverses;
  /// Sign-corrected fourth factorization, reported alongside I5.
  IdentityResult i5_signed;

  bool all_pass() const;
};

/// Checks I1–I6 and the inverse pairs. Over a free ring on at least two
/// generators (the first two play x and y) the matrix identities are checked
/// once with generic entries; over a finite ring `trials` random
/// assignments are drawn from `seed`. Throws std::invalid_argument for other
/// descriptors.
EmbeddingReport verify_embedding_identities(const RingPtr& ring, std::uint64_t seed, int trials = 1000);

}  // namespace canontop
