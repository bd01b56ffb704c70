#include "keylab/wire.hpp"

namespace keylab::harness {

namespace {
struct TypeName {
  std::string operator()(const LeeKeyRequest&) const { return "lee_key_request"; }
  std::string operator()(const lee::BlindedKeyReply&) const { return "lee_blinded_reply"; }
  std::string operator()(const LeeSecureRequest&) const { return "lee_secure_request"; }
  std::string operator()(const sui::Request&) const { return "sui_key_request"; }
  std::string operator()(const SuiBlindedKey&) const { return "sui_blinded_key"; }
};

struct Flatten {
  DetailMap out;

  void operator()(const LeeKeyRequest& m) {
    out.emplace_back("id", m.id);
    out.emplace_back("X", m.X.hex());
  }
  void operator()(const lee::BlindedKeyReply& m) {
    out.emplace_back("issuer_index", std::to_string(m.issuer_index));
    out.emplace_back("Q_prime", m.q_prime.hex());
    out.emplace_back("sig", m.sig.hex());
  }
  void operator()(const LeeSecureRequest& m) {
    out.emplace_back("id", m.id);
    out.emplace_back("X", m.X.hex());
    out.emplace_back("reply_issuer_index", std::to_string(m.reply_prev.issuer_index));
    out.emplace_back("reply_Q_prime", m.reply_prev.q_prime.hex());
    out.emplace_back("reply_sig", m.reply_prev.sig.hex());
  }
  void operator()(const sui::Request& m) {
    out.emplace_back("Q", m.Q.hex());
    out.emplace_back("T", m.T.hex());
  }
  void operator()(const SuiBlindedKey& m) { out.emplace_back("S", m.S.hex()); }
};
}  // namespace

std::string payload_type(const Payload& p) { return std::visit(TypeName{}, p); }

DetailMap payload_detail(const Payload& p) {
  Flatten f;
  std::visit([&f](const auto& m) { f(m); }, p);
  return std::move(f.out);
}

}  // namespace keylab::harness
