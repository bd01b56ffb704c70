#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "keylab/bytes.hpp"

namespace keylab {

using BigInt = boost::multiprecision::cpp_int;

// Bytes needed to hold values in [0, q), i.e. ceil(bitlength(q) / 8).
std::size_t byte_width(const BigInt& q);

// Fixed-width big-endian encoding; throws EncodingError if v does not fit.
Bytes bigint_to_be(const BigInt& v, std::size_t width);
BigInt bigint_from_be(const Bytes& data);

}  // namespace keylab
