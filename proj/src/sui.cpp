#include "keylab/sui.hpp"

#include <algorithm>

namespace keylab::sui {

void PendingDatabase::add(const std::string& id, const std::string& pwd) {
  if (lookup(id)) throw RegistrationConflict("id already pending: " + id);
  tuples_.push_back(Tuple{id, pwd});
}

bool PendingDatabase::remove(const std::string& id) {
  auto it = std::find_if(tuples_.begin(), tuples_.end(),
                         [&id](const Tuple& t) { return t.id == id; });
  if (it == tuples_.end()) return false;
  tuples_.erase(it);
  return true;
}

std::optional<std::string> PendingDatabase::lookup(const std::string& id) const {
  for (const Tuple& t : tuples_)
    if (t.id == id) return t.pwd;
  return std::nullopt;
}

nlohmann::ordered_json db_to_json(const PendingDatabase& db) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& t : db.tuples()) out.push_back({{"id", t.id}, {"pwd", t.pwd}});
  return out;
}

PendingDatabase db_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_array()) throw EncodingError("database snapshot must be a JSON array");
  PendingDatabase db;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("id") || !item.contains("pwd"))
      throw EncodingError("database tuple must carry id and pwd");
    db.add(item.at("id").get<std::string>(), item.at("pwd").get<std::string>());
  }
  return db;
}

std::pair<SystemParams, Scalar> setup(const Group& group, SeededRng& rng) {
  Scalar s = group.random_scalar(rng, true);
  return {SystemParams{group, s * group.generator()}, s};
}

void lra_register(PendingDatabase& db, const std::string& id, const std::string& pwd) {
  db.add(id, pwd);
}

Request request_with_blinding(const std::string& id, const std::string& pwd, const Scalar& r,
                              const Group& group) {
  if (r.is_zero()) throw DomainError("blinding factor must be nonzero");
  return Request{r * group.hash_to_g1(utf8_bytes(id)),
                 r.inv() * group.hash_to_g1(utf8_bytes(pwd))};
}

std::pair<Scalar, Request> user_request(const std::string& id, const std::string& pwd,
                                        const Group& group, SeededRng& rng) {
  Scalar r = group.random_scalar(rng, true);
  return {r, request_with_blinding(id, pwd, r, group)};
}

bool check_request(const Request& req, const G1Element& h_id, const G1Element& h_pwd) {
  return pair(req.Q, req.T) == pair(h_id, h_pwd);
}

Issued kgc_check_and_issue(const Request& req, PendingDatabase& db, const Scalar& s,
                           const SystemParams& params, std::vector<ScanRecord>* scan) {
  for (const auto& tuple : db.tuples()) {
    G1Element h_id = params.group.hash_to_g1(utf8_bytes(tuple.id));
    G1Element h_pwd = params.group.hash_to_g1(utf8_bytes(tuple.pwd));
    const bool matched = check_request(req, h_id, h_pwd);
    if (scan) scan->push_back(ScanRecord{tuple.id, h_id, h_pwd, matched});
    if (matched) {
      Issued out{s * req.Q, tuple.id};
      db.remove(tuple.id);
      return out;
    }
  }
  throw AuthenticationFailure("no pending tuple matches the request");
}

bool verify_blinded(const G1Element& S, const Request& req, const SystemParams& params) {
  return pair(S, params.group.generator()) == pair(req.Q, params.p_pkg);
}

G1Element user_finalize(const G1Element& S, const Request& req, const Scalar& r,
                        const SystemParams& params) {
  if (!verify_blinded(S, req, params))
    throw BlindReplyInvalid("blinded private key failed verification");
  return r.inv() * S;
}

}  // namespace keylab::sui
