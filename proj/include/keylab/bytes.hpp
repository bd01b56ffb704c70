#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace keylab {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(const Bytes& data);
Bytes from_hex(std::string_view hex);  // accepts either case; throws EncodingError

Bytes utf8_bytes(std::string_view s);

void append_u32_be(Bytes& out, std::uint32_t v);
void append_u64_be(Bytes& out, std::uint64_t v);

Bytes sha256(const Bytes& data);

}  // namespace keylab
