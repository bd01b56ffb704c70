#pragma once

#include <optional>
#include <string>
#include <vector>

#include "keylab/group.hpp"

// Multi-authority secure key issuing: a KGC plus n key privacy authorities
// (KPAs) sequentially multiply their master keys into a user's identity
// point. The user blinds the exchange with a secret x so that no single
// authority learns the final private key.
namespace keylab::lee {

struct AuthoritySecret {
  std::size_t index = 0;  // 0 is the KGC, 1..n the KPAs
  Scalar s;

  friend bool operator==(const AuthoritySecret&, const AuthoritySecret&) = default;
};

struct SystemParams {
  Group group;
  std::size_t n = 0;
  G1Element p0;                // KGC public key s0*P
  std::vector<G1Element> p_list;  // KPA public keys s_i*P, i = 1..n
  G1Element y;                 // system public key s0*s1*...*sn*P
  std::vector<std::string> authority_names;  // "KGC", "KPA_1", ..., "KPA_n"

  // Public key of authority i (0 = KGC).
  const G1Element& authority_pub(std::size_t i) const;
};

struct BlindedKeyReply {
  std::size_t issuer_index = 0;
  G1Element q_prime;
  G1Element sig;

  friend bool operator==(const BlindedKeyReply&, const BlindedKeyReply&) = default;
};

struct UserKeyState {
  std::string id;
  Scalar x;      // blinding secret, nonzero when generated honestly
  G1Element X;   // x*P, sent with every request
  int stage = -1;  // index of the authority that served last, -1 before issuing
  std::optional<BlindedKeyReply> current;

  static UserKeyState from_secret(std::string id, const Scalar& x);

  // Store a reply. The user does not verify it; only the ordering by
  // issuer index is enforced.
  void accept(const BlindedKeyReply& reply);
};

struct Setup {
  SystemParams params;
  std::vector<AuthoritySecret> secrets;  // index 0..n
  std::vector<G1Element> chain;          // Y'_0 = P0, ..., Y'_n = Y
};

// master_keys[0] is the KGC key; all must be nonzero. Needs n >= 1 authorities
// beyond the KGC.
Setup setup_from_secrets(const Group& group, const std::vector<Scalar>& master_keys);
Setup setup(const Group& group, std::size_t n, SeededRng& rng);

// Y'_i = s_i * Y'_{i-1}
G1Element system_pubkey_round(const Scalar& s_i, const G1Element& y_prev);

// pair(Y'_i, P) == pair(Y'_{i-1}, P_i)
bool verify_chain_link(const G1Element& y_i, const G1Element& y_prev, const G1Element& p_i);

// Q_ID = H(ID, KGC, KPA_1, ..., KPA_n), fields length-prefixed.
G1Element compute_qid(const std::string& id, const SystemParams& params);

UserKeyState user_blind_request(const std::string& id, const Group& group, SeededRng& rng);

// Q0' = h(e(s0*X, P0)) * s0 * Q_ID, Sig0 = s0 * Q0'
BlindedKeyReply kgc_issue(const std::string& id, const G1Element& X,
                          const AuthoritySecret& kgc, const SystemParams& params);

// pair(sig, P) == pair(Q', P_issuer). Scale-blind: both sides scaled by the
// same factor still verify.
bool verify_reply(const BlindedKeyReply& reply, const G1Element& p_issuer);

// Verifies the incoming reply against authority i-1 and, on success, returns
// Q_i' = h(e(s_i*X, P_i)) * s_i * Q_{i-1}', Sig_i = s_i * Q_i'.
// Throws ReplyRejected if the incoming reply fails the check.
BlindedKeyReply kpa_secure(std::size_t i, const std::string& id, const G1Element& X,
                           const BlindedKeyReply& reply_prev, const AuthoritySecret& kpa,
                           const SystemParams& params);

// S_ID = (prod_i h(e(P_i, P_i)^x))^-1 * Q_n'
G1Element user_unblind(const BlindedKeyReply& final_reply, const UserKeyState& state,
                       const SystemParams& params);

// pair(S_ID, P) == pair(Q_ID, Y)
bool verify_private_key(const G1Element& s_id, const G1Element& qid, const SystemParams& params);

}  // namespace keylab::lee
