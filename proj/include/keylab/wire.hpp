#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "keylab/lee.hpp"
#include "keylab/sui.hpp"

namespace keylab::harness {

// Typed protocol messages as they travel between parties. Group elements are
// hex-encoded canonically when a message is logged.

struct LeeKeyRequest {
  std::string id;
  G1Element X;

  friend bool operator==(const LeeKeyRequest&, const LeeKeyRequest&) = default;
};

struct LeeSecureRequest {
  std::string id;
  G1Element X;
  lee::BlindedKeyReply reply_prev;

  friend bool operator==(const LeeSecureRequest&, const LeeSecureRequest&) = default;
};

struct SuiBlindedKey {
  G1Element S;

  friend bool operator==(const SuiBlindedKey&, const SuiBlindedKey&) = default;
};

using Payload =
    std::variant<LeeKeyRequest, lee::BlindedKeyReply, LeeSecureRequest, sui::Request, SuiBlindedKey>;

using DetailMap = std::vector<std::pair<std::string, std::string>>;

std::string payload_type(const Payload& p);

// Flattens the payload into transcript detail fields (hex for group elements).
DetailMap payload_detail(const Payload& p);

}  // namespace keylab::harness
