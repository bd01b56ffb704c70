#include "keylab/verdict.hpp"

#include <algorithm>

#include "keylab/errors.hpp"

namespace keylab::attacks {

std::string to_string(AttackId id) {
  switch (id) {
    case AttackId::lee_impersonation: return "impersonation";
    case AttackId::lee_insider_sig: return "insider-sig";
    case AttackId::lee_tamper: return "tamper";
    case AttackId::sui_stolen_verifier: return "stolen-verifier";
    case AttackId::sui_insider_pwd: return "insider-pwd";
    case AttackId::sui_rerandomize: return "rerandomize";
  }
  throw Error("unknown attack id");
}

bool AttackVerdict::consistent() const {
  return success == std::all_of(checks.begin(), checks.end(),
                                [](const CheckOutcome& c) { return c.passed; });
}

nlohmann::ordered_json AttackVerdict::to_json() const {
  nlohmann::ordered_json j;
  j["attack_id"] = to_string(attack_id);
  j["success"] = success;
  auto arr = nlohmann::ordered_json::array();
  for (const CheckOutcome& c : checks) arr.push_back({{"label", c.label}, {"passed", c.passed}});
  j["checks"] = arr;
  auto ex = nlohmann::ordered_json::object();
  for (const auto& [name, hex] : extracted) ex[name] = hex;
  j["extracted"] = ex;
  j["transcript_ref"] = transcript_ref;
  return j;
}

AttackVerdict make_verdict(AttackId id, std::vector<CheckOutcome> checks,
                           std::vector<std::pair<std::string, std::string>> extracted,
                           std::string transcript_ref) {
  AttackVerdict v;
  v.attack_id = id;
  v.checks = std::move(checks);
  v.extracted = std::move(extracted);
  v.transcript_ref = std::move(transcript_ref);
  v.success = std::all_of(v.checks.begin(), v.checks.end(),
                          [](const CheckOutcome& c) { return c.passed; });
  return v;
}

}  // namespace keylab::attacks
