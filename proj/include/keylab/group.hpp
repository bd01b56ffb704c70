#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "keylab/bigint.hpp"
#include "keylab/bytes.hpp"
#include "keylab/errors.hpp"
#include "keylab/rng.hpp"

namespace keylab {

class Scalar;
class G1Element;
class GTElement;

// Abstract symmetric bilinear group (G1, GT, Z_q) with e: G1 x G1 -> GT.
//
// The only backend is the transparent "exponent bookkeeping" one: a G1
// element is stored as its discrete log d relative to the fixed generator P
// (P itself is 1), a GT element as its exponent relative to g_T = e(P, P),
// and e(aP, bP) = g_T^{ab mod q}. Discrete logs are free, which makes every
// algebraic identity in the issuing protocols and their attacks exactly
// checkable. It offers no hardness whatsoever. A real pairing curve can be
// added as a second backend behind this same interface.
class Group {
public:
  // Transparent backend over Z_q; q must be prime and >= 11. Small primes
  // are intended for exhaustive oracle tests.
  static Group transparent(const BigInt& q);

  // Transparent backend over the fixed 256-bit prime 2^256 - 2^32 - 977.
  static Group standard();

  const BigInt& modulus() const;
  std::size_t scalar_bytes() const;  // ceil(bitlength(q) / 8)
  const std::string& backend_id() const;
  bool same_group(const Group& other) const;

  Scalar scalar(BigInt value) const;  // reduced mod q
  Scalar scalar(std::int64_t value) const;
  Scalar scalar_from_bytes(const Bytes& data) const;
  Scalar random_scalar(SeededRng& rng, bool nonzero) const;

  G1Element generator() const;
  G1Element g1_identity() const;
  G1Element g1_from_bytes(const Bytes& data) const;

  GTElement gt_generator() const;
  GTElement gt_identity() const;
  GTElement gt_from_bytes(const Bytes& data) const;

  // Deterministic hash onto G1 \ {identity}: SHA-256 over
  // (domain tag || counter byte || data) reduced mod q, counter bumped until
  // the result is nonzero.
  G1Element hash_to_g1(const Bytes& data) const;

  // Deterministic hash GT -> Z_q^*: SHA-256 over the canonical encoding,
  // reduced mod (q - 1), plus 1. Never zero, so the result is invertible.
  Scalar hash_gt_to_scalar(const GTElement& t) const;

  // Test hook: returns a group identical to this one except that
  // hash_gt_to_scalar is replaced. Elements interoperate with the base group.
  using GtHashFn = std::function<Scalar(const GTElement&)>;
  Group with_gt_hash(GtHashFn fn) const;

  friend bool operator==(const Group& a, const Group& b) { return a.same_group(b); }

private:
  struct Core;
  explicit Group(std::shared_ptr<const Core> core) : core_(std::move(core)) {}

  std::shared_ptr<const Core> core_;

  friend class Scalar;
  friend class G1Element;
  friend class GTElement;
  friend GTElement pair(const G1Element& a, const G1Element& b);
};

// Element of Z_q, always reduced into [0, q).
class Scalar {
public:
  const BigInt& value() const { return value_; }
  const Group& group() const { return group_; }
  bool is_zero() const { return value_ == 0; }

  Bytes encode() const;  // fixed-width big-endian
  std::string hex() const;

  Scalar inv() const;  // throws DomainError on zero

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
  Scalar(Group group, BigInt value) : group_(std::move(group)), value_(std::move(value)) {}

  Group group_;
  BigInt value_;

  friend class Group;
  friend class G1Element;
  friend class GTElement;
};

class G1Element {
public:
  const Group& group() const { return group_; }
  bool is_identity() const { return exp_ == 0; }

  // The bookkeeping value d with this == d * P. Transparent backend only.
  Scalar discrete_log() const;

  Bytes encode() const;  // 0x01 || big-endian exponent
  std::string hex() const;

  friend G1Element operator+(const G1Element& a, const G1Element& b);
  friend G1Element operator-(const G1Element& a, const G1Element& b);
  friend G1Element operator*(const Scalar& s, const G1Element& a);
  G1Element operator-() const;

  friend bool operator==(const G1Element& a, const G1Element& b);
  friend bool operator!=(const G1Element& a, const G1Element& b) { return !(a == b); }

private:
  G1Element(Group group, BigInt exp) : group_(std::move(group)), exp_(std::move(exp)) {}

  Group group_;
  BigInt exp_;

  friend class Group;
  friend GTElement pair(const G1Element& a, const G1Element& b);
};

class GTElement {
public:
  const Group& group() const { return group_; }
  bool is_identity() const { return exp_ == 0; }

  Scalar discrete_log() const;

  GTElement pow(const Scalar& s) const;

  Bytes encode() const;  // 0x02 || big-endian exponent
  std::string hex() const;

  friend bool operator==(const GTElement& a, const GTElement& b);
  friend bool operator!=(const GTElement& a, const GTElement& b) { return !(a == b); }

private:
  GTElement(Group group, BigInt exp) : group_(std::move(group)), exp_(std::move(exp)) {}

  Group group_;
  BigInt exp_;

  friend class Group;
  friend GTElement pair(const G1Element& a, const G1Element& b);
};

// The symmetric pairing. Bilinear, non-degenerate, pair(A, B) == pair(B, A).
GTElement pair(const G1Element& a, const G1Element& b);

}  // namespace keylab
