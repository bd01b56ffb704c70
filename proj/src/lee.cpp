#include "keylab/lee.hpp"

#include <utility>

namespace keylab::lee {

const G1Element& SystemParams::authority_pub(std::size_t i) const {
  if (i == 0) return p0;
  if (i > n) throw ConfigError("authority index out of range");
  return p_list[i - 1];
}

UserKeyState UserKeyState::from_secret(std::string id, const Scalar& x) {
  return UserKeyState{std::move(id), x, x * x.group().generator(), -1, std::nullopt};
}

void UserKeyState::accept(const BlindedKeyReply& reply) {
  if (static_cast<int>(reply.issuer_index) != stage + 1)
    throw ConfigError("reply out of order: expected issuer " + std::to_string(stage + 1));
  stage = static_cast<int>(reply.issuer_index);
  current = reply;
}

Setup setup_from_secrets(const Group& group, const std::vector<Scalar>& master_keys) {
  if (master_keys.size() < 2) throw ConfigError("need a KGC key and at least one KPA key");
  const std::size_t n = master_keys.size() - 1;
  for (const Scalar& s : master_keys)
    if (s.is_zero()) throw ConfigError("master keys must be nonzero");

  Setup out{SystemParams{group, n, group.g1_identity(), {}, group.g1_identity(), {}}, {}, {}};
  const G1Element p = group.generator();
  out.params.p0 = master_keys[0] * p;
  out.params.authority_names.push_back("KGC");
  for (std::size_t i = 1; i <= n; ++i) {
    out.params.p_list.push_back(master_keys[i] * p);
    out.params.authority_names.push_back("KPA_" + std::to_string(i));
  }
  for (std::size_t i = 0; i <= n; ++i)
    out.secrets.push_back(AuthoritySecret{i, master_keys[i]});

  // Sequential system public key rounds starting from Y'_0 = P0.
  out.chain.push_back(out.params.p0);
  for (std::size_t i = 1; i <= n; ++i)
    out.chain.push_back(system_pubkey_round(master_keys[i], out.chain.back()));
  out.params.y = out.chain.back();
  return out;
}

Setup setup(const Group& group, std::size_t n, SeededRng& rng) {
  if (n == 0) throw ConfigError("at least one KPA is required");
  std::vector<Scalar> keys;
  keys.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) keys.push_back(group.random_scalar(rng, true));
  return setup_from_secrets(group, keys);
}

G1Element system_pubkey_round(const Scalar& s_i, const G1Element& y_prev) { return s_i * y_prev; }

bool verify_chain_link(const G1Element& y_i, const G1Element& y_prev, const G1Element& p_i) {
  const G1Element p = y_i.group().generator();
  return pair(y_i, p) == pair(y_prev, p_i);
}

G1Element compute_qid(const std::string& id, const SystemParams& params) {
  Bytes preimage;
  auto push_field = [&preimage](const std::string& field) {
    append_u32_be(preimage, static_cast<std::uint32_t>(field.size()));
    Bytes b = utf8_bytes(field);
    preimage.insert(preimage.end(), b.begin(), b.end());
  };
  push_field(id);
  for (const std::string& name : params.authority_names) push_field(name);
  return params.group.hash_to_g1(preimage);
}

UserKeyState user_blind_request(const std::string& id, const Group& group, SeededRng& rng) {
  return UserKeyState::from_secret(id, group.random_scalar(rng, true));
}

BlindedKeyReply kgc_issue(const std::string& id, const G1Element& X,
                          const AuthoritySecret& kgc, const SystemParams& params) {
  if (kgc.index != 0) throw ConfigError("kgc_issue requires the authority at index 0");
  const G1Element qid = compute_qid(id, params);
  const Scalar blind = params.group.hash_gt_to_scalar(pair(kgc.s * X, params.p0));
  const G1Element q_prime = (blind * kgc.s) * qid;
  return BlindedKeyReply{0, q_prime, kgc.s * q_prime};
}

bool verify_reply(const BlindedKeyReply& reply, const G1Element& p_issuer) {
  const G1Element p = p_issuer.group().generator();
  return pair(reply.sig, p) == pair(reply.q_prime, p_issuer);
}

BlindedKeyReply kpa_secure(std::size_t i, const std::string& /*id*/, const G1Element& X,
                           const BlindedKeyReply& reply_prev, const AuthoritySecret& kpa,
                           const SystemParams& params) {
  if (i < 1 || i > params.n) throw ConfigError("KPA index out of range");
  if (kpa.index != i) throw ConfigError("authority secret does not belong to KPA_" + std::to_string(i));
  if (reply_prev.issuer_index != i - 1)
    throw ConfigError("incoming reply must come from authority " + std::to_string(i - 1));
  if (!verify_reply(reply_prev, params.authority_pub(i - 1)))
    throw ReplyRejected("KPA_" + std::to_string(i) + ": incoming reply failed the signature check");

  const G1Element& p_i = params.authority_pub(i);
  const Scalar blind = params.group.hash_gt_to_scalar(pair(kpa.s * X, p_i));
  const G1Element q_prime = (blind * kpa.s) * reply_prev.q_prime;
  return BlindedKeyReply{i, q_prime, kpa.s * q_prime};
}

G1Element user_unblind(const BlindedKeyReply& final_reply, const UserKeyState& state,
                       const SystemParams& params) {
  if (final_reply.issuer_index != params.n)
    throw ConfigError("final reply must come from the last KPA");
  Scalar blind_product = params.group.scalar(1);
  for (std::size_t i = 0; i <= params.n; ++i) {
    const G1Element& p_i = params.authority_pub(i);
    blind_product = blind_product * params.group.hash_gt_to_scalar(pair(p_i, p_i).pow(state.x));
  }
  return blind_product.inv() * final_reply.q_prime;
}

bool verify_private_key(const G1Element& s_id, const G1Element& qid, const SystemParams& params) {
  return pair(s_id, params.group.generator()) == pair(qid, params.y);
}

}  // namespace keylab::lee
