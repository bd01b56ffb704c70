#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "keylab/group.hpp"

// Separable anonymous key issuing: a user registers a one-time password with
// a local registration authority, then requests a blinded private key from
// the KGC. The request (Q, T) = (r*H(id), r^-1*H(pwd)) is checked against the
// database of pending tuples via the pairing equation, signed blindly, and
// unblinded by the user.
namespace keylab::sui {

struct SystemParams {
  Group group;
  G1Element p_pkg;  // s*P
};

// Ordered (id, pwd) tuples pending key issuance. At most one tuple per id.
class PendingDatabase {
public:
  struct Tuple {
    std::string id;
    std::string pwd;
    friend bool operator==(const Tuple&, const Tuple&) = default;
  };

  void add(const std::string& id, const std::string& pwd);  // throws RegistrationConflict
  bool remove(const std::string& id);
  std::optional<std::string> lookup(const std::string& id) const;
  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }

  friend bool operator==(const PendingDatabase&, const PendingDatabase&) = default;

private:
  std::vector<Tuple> tuples_;
};

nlohmann::ordered_json db_to_json(const PendingDatabase& db);
PendingDatabase db_from_json(const nlohmann::ordered_json& j);

struct Request {
  G1Element Q;  // r * H(id)
  G1Element T;  // r^-1 * H(pwd)

  friend bool operator==(const Request&, const Request&) = default;
};

std::pair<SystemParams, Scalar> setup(const Group& group, SeededRng& rng);

void lra_register(PendingDatabase& db, const std::string& id, const std::string& pwd);

Request request_with_blinding(const std::string& id, const std::string& pwd, const Scalar& r,
                              const Group& group);
std::pair<Scalar, Request> user_request(const std::string& id, const std::string& pwd,
                                        const Group& group, SeededRng& rng);

// pair(Q, T) == pair(h_id, h_pwd)
bool check_request(const Request& req, const G1Element& h_id, const G1Element& h_pwd);

struct ScanRecord {
  std::string id;
  G1Element h_id;
  G1Element h_pwd;
  bool matched = false;
};

struct Issued {
  G1Element S;  // s * Q
  std::string matched_id;
};

// Scans the database in insertion order and issues against the first tuple
// whose pairing check passes; that tuple is then removed. Throws
// AuthenticationFailure when nothing matches. When `scan` is given, every
// tried tuple is recorded in order.
Issued kgc_check_and_issue(const Request& req, PendingDatabase& db, const Scalar& s,
                           const SystemParams& params, std::vector<ScanRecord>* scan = nullptr);

// pair(S, P) == pair(Q, P_PKG); the user checks against the Q it sent.
bool verify_blinded(const G1Element& S, const Request& req, const SystemParams& params);

// Verifies the blinded key and returns r^-1 * S = s * H(id).
// Throws BlindReplyInvalid if the verification equation fails.
G1Element user_finalize(const G1Element& S, const Request& req, const Scalar& r,
                        const SystemParams& params);

}  // namespace keylab::sui
