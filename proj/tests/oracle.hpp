#pragma once

// Independent plain-modular-arithmetic oracle for small moduli, plus
// reference codings of the digest constructions. Deliberately written
// against native integers and raw OpenSSL, with no keylab types, so it
// cross-checks the library instead of restating it.

#include <openssl/evp.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 addmod(u64 a, u64 b, u64 q) { return (a + b) % q; }

inline u64 submod(u64 a, u64 b, u64 q) { return (a + q - (b % q)) % q; }

inline u64 mulmod(u64 a, u64 b, u64 q) {
  return static_cast<u64>((static_cast<u128>(a) * b) % q);
}

// Brute-force inverse; q is small and prime.
inline u64 invmod(u64 a, u64 q) {
  a %= q;
  for (u64 x = 1; x < q; ++x)
    if (mulmod(a, x, q) == 1) return x;
  throw std::runtime_error("invmod: no inverse");
}

inline std::vector<std::uint8_t> sha256(const std::vector<std::uint8_t>& data) {
  std::vector<std::uint8_t> out(32);
  unsigned int len = 0;
  static const std::uint8_t empty = 0;
  if (EVP_Digest(data.empty() ? &empty : data.data(), data.size(), out.data(), &len,
                 EVP_sha256(), nullptr) != 1 || len != 32)
    throw std::runtime_error("oracle sha256 failed");
  return out;
}

inline u64 digest_mod(const std::vector<std::uint8_t>& digest, u64 q) {
  u64 acc = 0;
  for (std::uint8_t byte : digest) acc = (static_cast<u128>(acc) * 256 + byte) % q;
  return acc;
}

inline std::size_t width_of(u64 q) {
  std::size_t bits = 0;
  for (u64 v = q; v != 0; v >>= 1) ++bits;
  return (bits + 7) / 8;
}

inline std::vector<std::uint8_t> be_bytes(u64 v, std::size_t width) {
  std::vector<std::uint8_t> out(width, 0);
  for (std::size_t i = 0; i < width; ++i) {
    out[width - 1 - i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return out;
}

// Reference form of the hash-to-G1 exponent: SHA-256 over
// ("keylab/h2g1/v1" || counter || data) mod q, retried until nonzero.
inline u64 hash_to_g1_exp(u64 q, const std::vector<std::uint8_t>& data) {
  const std::string tag = "keylab/h2g1/v1";
  for (int counter = 0; counter < 256; ++counter) {
    std::vector<std::uint8_t> preimage(tag.begin(), tag.end());
    preimage.push_back(static_cast<std::uint8_t>(counter));
    preimage.insert(preimage.end(), data.begin(), data.end());
    u64 e = digest_mod(sha256(preimage), q);
    if (e != 0) return e;
  }
  throw std::runtime_error("hash_to_g1_exp: counter exhausted");
}

// Reference form of the GT-to-scalar hash: SHA-256 over the canonical GT
// encoding (0x02 || big-endian exponent) mod (q - 1), plus 1.
inline u64 hash_gt_exp_to_scalar(u64 q, u64 gt_exp) {
  std::vector<std::uint8_t> encoding{0x02};
  std::vector<std::uint8_t> body = be_bytes(gt_exp, width_of(q));
  encoding.insert(encoding.end(), body.begin(), body.end());
  return digest_mod(sha256(encoding), q - 1) + 1;
}

}  // namespace oracle
