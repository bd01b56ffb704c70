#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace keylab::attacks {

enum class AttackId {
  lee_impersonation,
  lee_insider_sig,
  lee_tamper,
  sui_stolen_verifier,
  sui_insider_pwd,
  sui_rerandomize,
};

// Scenario tags as they appear on the command line and in verdicts.
std::string to_string(AttackId id);

struct CheckOutcome {
  std::string label;
  std::string expected;
  std::string observed;
  bool passed = false;
};

// Structured outcome of one attack scenario. The success flag is always the
// conjunction of the listed checks.
struct AttackVerdict {
  AttackId attack_id = AttackId::lee_impersonation;
  bool success = false;
  std::vector<CheckOutcome> checks;
  std::vector<std::pair<std::string, std::string>> extracted;  // name -> hex
  std::string transcript_ref;

  bool consistent() const;

  nlohmann::ordered_json to_json() const;
};

AttackVerdict make_verdict(AttackId id, std::vector<CheckOutcome> checks,
                           std::vector<std::pair<std::string, std::string>> extracted,
                           std::string transcript_ref);

}  // namespace keylab::attacks
