#include "keylab/group.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <utility>

namespace keylab {

namespace {

constexpr std::string_view kBackendTransparent = "transparent-v1";
constexpr std::string_view kHashToG1Tag = "keylab/h2g1/v1";
constexpr std::uint8_t kTagG1 = 0x01;
constexpr std::uint8_t kTagGT = 0x02;

// 2^256 - 2^32 - 977
const char* kStandardPrimeHex =
    "0xfffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2f";

bool is_prime(const BigInt& q) {
  if (q == 2 || q == 3) return true;
  if (q < 2 || q % 2 == 0) return false;
  std::mt19937_64 gen(0x6b65796c61625251ULL);  // fixed seed, deterministic verdict
  return boost::multiprecision::miller_rabin_test(q, 32, gen);
}

BigInt mod_reduce(BigInt v, const BigInt& q) {
  v %= q;
  if (v < 0) v += q;
  return v;
}

// Extended Euclid; expects 0 < a < q with q prime.
BigInt mod_inverse(const BigInt& a, const BigInt& q) {
  BigInt old_r = a, r = q;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt quotient = old_r / r;
    BigInt tmp = old_r - quotient * r;
    old_r = std::exchange(r, tmp);
    tmp = old_s - quotient * s;
    old_s = std::exchange(s, tmp);
  }
  return mod_reduce(old_s, q);
}

}  // namespace

struct Group::Core {
  BigInt q;
  std::size_t scalar_len = 0;
  std::string backend_id;
  GtHashFn gt_hash_override;  // empty: digest-based default
};

Group Group::transparent(const BigInt& q) {
  if (q < 11) throw ConfigError("group modulus must be at least 11");
  if (!is_prime(q)) throw ConfigError("group modulus must be prime");
  auto core = std::make_shared<Core>();
  core->q = q;
  core->scalar_len = byte_width(q);
  core->backend_id = std::string(kBackendTransparent);
  return Group(std::move(core));
}

Group Group::standard() {
  static const BigInt q(kStandardPrimeHex);
  static const Group g = transparent(q);
  return g;
}

const BigInt& Group::modulus() const { return core_->q; }
std::size_t Group::scalar_bytes() const { return core_->scalar_len; }
const std::string& Group::backend_id() const { return core_->backend_id; }

bool Group::same_group(const Group& other) const {
  return core_ == other.core_ ||
         (core_->q == other.core_->q && core_->backend_id == other.core_->backend_id);
}

Group Group::with_gt_hash(GtHashFn fn) const {
  auto core = std::make_shared<Core>(*core_);
  core->gt_hash_override = std::move(fn);
  return Group(std::move(core));
}

Scalar Group::scalar(BigInt value) const { return Scalar(*this, mod_reduce(std::move(value), core_->q)); }

Scalar Group::scalar(std::int64_t value) const { return scalar(BigInt(value)); }

Scalar Group::scalar_from_bytes(const Bytes& data) const {
  if (data.size() != core_->scalar_len) throw EncodingError("scalar encoding has wrong length");
  BigInt v = bigint_from_be(data);
  if (v >= core_->q) throw EncodingError("scalar encoding out of range");
  return Scalar(*this, std::move(v));
}

Scalar Group::random_scalar(SeededRng& rng, bool nonzero) const {
  BigInt v;
  do {
    v = rng.uniform_below(core_->q);
  } while (nonzero && v == 0);
  return Scalar(*this, std::move(v));
}

G1Element Group::generator() const { return G1Element(*this, 1); }
G1Element Group::g1_identity() const { return G1Element(*this, 0); }
GTElement Group::gt_generator() const { return GTElement(*this, 1); }
GTElement Group::gt_identity() const { return GTElement(*this, 0); }

G1Element Group::g1_from_bytes(const Bytes& data) const {
  if (data.size() != core_->scalar_len + 1 || data[0] != kTagG1)
    throw EncodingError("invalid G1 encoding");
  BigInt v = bigint_from_be(Bytes(data.begin() + 1, data.end()));
  if (v >= core_->q) throw EncodingError("G1 encoding out of range");
  return G1Element(*this, std::move(v));
}

GTElement Group::gt_from_bytes(const Bytes& data) const {
  if (data.size() != core_->scalar_len + 1 || data[0] != kTagGT)
    throw EncodingError("invalid GT encoding");
  BigInt v = bigint_from_be(Bytes(data.begin() + 1, data.end()));
  if (v >= core_->q) throw EncodingError("GT encoding out of range");
  return GTElement(*this, std::move(v));
}

G1Element Group::hash_to_g1(const Bytes& data) const {
  for (int counter = 0; counter < 256; ++counter) {
    Bytes preimage = utf8_bytes(kHashToG1Tag);
    preimage.push_back(static_cast<std::uint8_t>(counter));
    preimage.insert(preimage.end(), data.begin(), data.end());
    BigInt e = mod_reduce(bigint_from_be(sha256(preimage)), core_->q);
    if (e != 0) return G1Element(*this, std::move(e));
  }
  throw Error("hash_to_g1: retry counter exhausted");  // unreachable for q >= 11
}

Scalar Group::hash_gt_to_scalar(const GTElement& t) const {
  if (!same_group(t.group())) throw ParamsMismatchError("hash_gt_to_scalar: foreign element");
  if (core_->gt_hash_override) return core_->gt_hash_override(t);
  BigInt e = bigint_from_be(sha256(t.encode())) % (core_->q - 1) + 1;
  return Scalar(*this, std::move(e));
}

// ---- Scalar ----

namespace {
const BigInt& require_same(const Group& a, const Group& b, const char* what) {
  if (!a.same_group(b)) throw ParamsMismatchError(what);
  return a.modulus();
}
}  // namespace

Bytes Scalar::encode() const { return bigint_to_be(value_, group_.scalar_bytes()); }
std::string Scalar::hex() const { return to_hex(encode()); }

Scalar Scalar::inv() const {
  if (value_ == 0) throw DomainError("scalar inverse of zero");
  return Scalar(group_, mod_inverse(value_, group_.modulus()));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  const BigInt& q = require_same(a.group_, b.group_, "scalar add: group mismatch");
  return Scalar(a.group_, (a.value_ + b.value_) % q);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  const BigInt& q = require_same(a.group_, b.group_, "scalar sub: group mismatch");
  BigInt v = a.value_ - b.value_;
  if (v < 0) v += q;
  return Scalar(a.group_, std::move(v));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  const BigInt& q = require_same(a.group_, b.group_, "scalar mul: group mismatch");
  return Scalar(a.group_, (a.value_ * b.value_) % q);
}

Scalar Scalar::operator-() const {
  if (value_ == 0) return *this;
  return Scalar(group_, group_.modulus() - value_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.group_.same_group(b.group_) && a.value_ == b.value_;
}

// ---- G1 ----

Scalar G1Element::discrete_log() const { return Scalar(group_, exp_); }

Bytes G1Element::encode() const {
  Bytes out{kTagG1};
  Bytes body = bigint_to_be(exp_, group_.scalar_bytes());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::string G1Element::hex() const { return to_hex(encode()); }

G1Element operator+(const G1Element& a, const G1Element& b) {
  const BigInt& q = require_same(a.group_, b.group_, "G1 add: group mismatch");
  return G1Element(a.group_, (a.exp_ + b.exp_) % q);
}

G1Element operator-(const G1Element& a, const G1Element& b) { return a + (-b); }

G1Element operator*(const Scalar& s, const G1Element& a) {
  const BigInt& q = require_same(s.group(), a.group_, "G1 mul: group mismatch");
  return G1Element(a.group_, (s.value() * a.exp_) % q);
}

G1Element G1Element::operator-() const {
  if (exp_ == 0) return *this;
  return G1Element(group_, group_.modulus() - exp_);
}

bool operator==(const G1Element& a, const G1Element& b) {
  return a.group_.same_group(b.group_) && a.exp_ == b.exp_;
}

// ---- GT ----

Scalar GTElement::discrete_log() const { return Scalar(group_, exp_); }

Bytes GTElement::encode() const {
  Bytes out{kTagGT};
  Bytes body = bigint_to_be(exp_, group_.scalar_bytes());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::string GTElement::hex() const { return to_hex(encode()); }

GTElement GTElement::pow(const Scalar& s) const {
  const BigInt& q = require_same(s.group(), group_, "GT pow: group mismatch");
  return GTElement(group_, (exp_ * s.value()) % q);
}

bool operator==(const GTElement& a, const GTElement& b) {
  return a.group_.same_group(b.group_) && a.exp_ == b.exp_;
}

GTElement pair(const G1Element& a, const G1Element& b) {
  const BigInt& q = require_same(a.group_, b.group_, "pairing: group mismatch");
  return GTElement(a.group_, (a.exp_ * b.exp_) % q);
}

}  // namespace keylab
