#include "keylab/bytes.hpp"

#include <openssl/evp.h>

#include "keylab/errors.hpp"

namespace keylab {

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

std::string to_hex(const Bytes& data) {
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw EncodingError("hex string has odd length");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw EncodingError("invalid hex digit");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

Bytes utf8_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

void append_u32_be(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

void append_u64_be(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

Bytes sha256(const Bytes& data) {
  Bytes out(32);
  unsigned int len = 0;
  static const std::uint8_t empty = 0;
  const std::uint8_t* ptr = data.empty() ? &empty : data.data();
  if (EVP_Digest(ptr, data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32)
    throw Error("sha256 digest failed");
  return out;
}

}  // namespace keylab
