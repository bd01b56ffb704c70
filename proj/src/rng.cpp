#include "keylab/rng.hpp"

#include "keylab/bytes.hpp"
#include "keylab/errors.hpp"

namespace keylab {

namespace {
constexpr std::string_view kLabelSplitTag = "keylab/rng/v1";
}

SeededRng SeededRng::for_label(std::uint64_t master_seed, std::string_view label) {
  Bytes preimage = utf8_bytes(kLabelSplitTag);
  append_u64_be(preimage, master_seed);
  Bytes label_bytes = utf8_bytes(label);
  preimage.insert(preimage.end(), label_bytes.begin(), label_bytes.end());
  Bytes digest = sha256(preimage);
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = (seed << 8) | digest[static_cast<std::size_t>(i)];
  return SeededRng(seed);
}

BigInt SeededRng::uniform_below(const BigInt& bound) {
  if (bound <= 0) throw DomainError("uniform_below: bound must be positive");
  if (bound == 1) return 0;
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t words = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask =
      top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
  for (;;) {
    BigInt v = next_u64() & top_mask;
    for (std::size_t i = 1; i < words; ++i) {
      v <<= 64;
      v |= next_u64();
    }
    if (v < bound) return v;
  }
}

std::string SeededRng::hex_token() {
  static constexpr char digits[] = "0123456789abcdef";
  std::uint64_t v = next_u64();
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace keylab
