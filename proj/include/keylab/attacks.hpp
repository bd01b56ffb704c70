#pragma once

#include <functional>
#include <optional>
#include <string>

#include "keylab/scenario.hpp"
#include "keylab/verdict.hpp"

// The six executable attacks. Each one scripts a scenario over the harness
// channel, acting as a wire adversary or as an insider with explicitly
// granted capabilities, and returns a verdict whose success flag is the
// conjunction of its machine-checked predicates. Ground-truth comparisons
// (recovered value equals the authority-side secret product) are the lab's
// judgment and use the transparent backend's free discrete logs.
namespace keylab::attacks {

struct ImpersonationOptions {
  // Forces the adversary's blinding secret; used to show the attack collapses
  // when the interceptor does not actually change X.
  std::optional<Scalar> adversary_x;
};

// The wire adversary swaps the victim's X for its own in every request,
// completes the run, and unblinds the final reply with its own secret. The
// victim, unblinding the same reply, fails verification.
AttackVerdict attack_lee_impersonation(harness::LeeScenario& ctx, const std::string& victim_id,
                                       const ImpersonationOptions& options = {});

struct InsiderSigOptions {
  std::optional<Scalar> x_star;
  std::optional<Scalar> r;
  std::string fake_id = "mallory";
};

// Authority i-1 submits (r*H(m), r*s_{i-1}*H(m)) as a secure request to
// KPA_i and strips the blinding from the reply, extracting s_i*H(m), a
// signature KPA_i never agreed to make.
AttackVerdict attack_lee_insider(harness::LeeScenario& ctx, std::size_t i, const Bytes& message,
                                 const InsiderSigOptions& options = {});

// Scales (Q', Sig) by r_star in transit to KPA_i. Every authority check
// stays green; the corruption surfaces only in the user's final check.
AttackVerdict attack_lee_tamper(harness::LeeScenario& ctx, std::size_t i, const Scalar& r_star,
                                const std::string& victim_id);

// Replays a (id, pwd) tuple from a stolen database snapshot to obtain the
// victim's private key from the KGC.
AttackVerdict attack_sui_stolen_verifier(harness::SuiScenario& ctx,
                                         const sui::PendingDatabase& snapshot,
                                         const std::string& target_id);

using ExternalPasswordCheck = std::function<bool(const std::string& id, const std::string& pwd)>;

// An insider with database read access tries the stored password against a
// second system the user shares it with.
AttackVerdict attack_sui_insider(harness::SuiScenario& ctx, const std::string& role,
                                 const ExternalPasswordCheck& external_check,
                                 const std::string& target_id);

// Replaces (Q, T) with (r_star*Q, r_star^-1*T) in transit. The KGC check is
// scale-blind and passes; the user's verification fails.
AttackVerdict attack_sui_rerandomize(harness::SuiScenario& ctx, const Scalar& r_star,
                                     const std::string& id, const std::string& pwd);

// Registers the scenario drivers for the runner.
void register_builtin(harness::ScenarioRegistry& registry);

}  // namespace keylab::attacks
