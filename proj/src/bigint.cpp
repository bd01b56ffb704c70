#include "keylab/bigint.hpp"

#include <iterator>

#include "keylab/errors.hpp"

namespace keylab {

std::size_t byte_width(const BigInt& q) {
  if (q <= 0) throw DomainError("byte_width: nonpositive modulus");
  std::size_t bits = boost::multiprecision::msb(q) + 1;
  return (bits + 7) / 8;
}

Bytes bigint_to_be(const BigInt& v, std::size_t width) {
  if (v < 0) throw EncodingError("bigint_to_be: negative value");
  Bytes minimal;
  if (v > 0) boost::multiprecision::export_bits(v, std::back_inserter(minimal), 8);
  if (minimal.size() > width) throw EncodingError("bigint_to_be: value too wide");
  Bytes out(width - minimal.size(), 0);
  out.insert(out.end(), minimal.begin(), minimal.end());
  return out;
}

BigInt bigint_from_be(const Bytes& data) {
  BigInt v = 0;
  if (!data.empty()) boost::multiprecision::import_bits(v, data.begin(), data.end(), 8);
  return v;
}

}  // namespace keylab
