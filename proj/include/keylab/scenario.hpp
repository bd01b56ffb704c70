#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "keylab/channel.hpp"
#include "keylab/lee.hpp"
#include "keylab/sui.hpp"
#include "keylab/transcript.hpp"
#include "keylab/verdict.hpp"

namespace keylab::harness {

enum class Protocol { lee, sui };

enum class ScenarioKind {
  honest,
  impersonation,
  insider_sig,
  tamper,
  stolen_verifier,
  insider_pwd,
  rerandomize,
};

std::string to_string(Protocol p);
std::string to_string(ScenarioKind k);
Protocol protocol_from_string(const std::string& s);
ScenarioKind scenario_from_string(const std::string& s);

// Everything a run depends on. Transcripts are a pure function of this.
struct ScenarioConfig {
  Protocol protocol = Protocol::lee;
  ScenarioKind scenario = ScenarioKind::honest;
  std::optional<std::size_t> n;        // KPA count, lee only (default 2)
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> q;      // small-prime override for tests/demos
  std::optional<std::size_t> index;    // target authority, insider-sig/tamper
  std::optional<std::uint64_t> r_star; // scale factor, tamper/rerandomize
  std::optional<std::string> id;       // subject identity (default "alice")
  std::optional<Bytes> message;        // forged-signature target, insider-sig

  std::size_t kpa_count() const { return n.value_or(2); }
  std::string subject() const { return id ? *id : std::string("alice"); }

  // Attack parameters must be present exactly when the scenario needs them.
  void validate() const;

  Group make_group() const;
  std::string run_id() const;

  // Mirrors the CLI flags; "out" and "expect_success" are tolerated here and
  // consumed by the CLI.
  static ScenarioConfig from_json(const nlohmann::ordered_json& j);
};

struct RunResult {
  std::vector<TranscriptEntry> transcript;
  std::optional<attacks::AttackVerdict> verdict;  // attack scenarios only
  bool honest_ok = true;
  std::string run_id;
};

RunResult run_scenario(const ScenarioConfig& config);

// Per-party child generators derived from one master seed by label, so one
// party's draws never shift another's.
class PartyRngs {
public:
  explicit PartyRngs(std::uint64_t master_seed) : master_seed_(master_seed) {}
  SeededRng& rng(const std::string& label);

private:
  std::uint64_t master_seed_;
  std::map<std::string, SeededRng> rngs_;
};

struct FinalizedKey {
  bool ok = false;
  G1Element key;
};

// A full lee deployment wired through a channel: KGC plus n KPAs with
// per-party seeds, chain setup logged, and party handlers that record their
// checks. Attack drivers script against this surface.
class LeeScenario {
public:
  LeeScenario(const Group& group, std::size_t n, std::uint64_t seed, std::string run_id,
              ScenarioKind scenario = ScenarioKind::honest);

  // Deployment with pinned master keys (element 0 is the KGC's); used to
  // reproduce reference runs.
  LeeScenario(const Group& group, const std::vector<Scalar>& master_keys, std::uint64_t seed,
              std::string run_id, ScenarioKind scenario = ScenarioKind::honest);

  // The channel refers into the scenario's transcript recorder.
  LeeScenario(const LeeScenario&) = delete;
  LeeScenario& operator=(const LeeScenario&) = delete;

  TranscriptRecorder& transcript() { return transcript_; }
  Channel& channel() { return channel_; }
  const lee::SystemParams& params() const { return setup_.params; }
  const std::vector<lee::AuthoritySecret>& secrets() const { return setup_.secrets; }
  const std::vector<G1Element>& chain() const { return setup_.chain; }
  const std::string& run_id() const { return run_id_; }
  SeededRng& rng(const std::string& label) { return rngs_.rng(label); }

  std::string authority_label(std::size_t index) const;

  // The KGC's identification predicate; accepts everything by default.
  void set_id_check(std::function<bool(const std::string&)> check);

  // Runs authority `index` on a delivered envelope, logging its signature
  // check. Throws ReplyRejected when the check fails (the authority halts).
  lee::BlindedKeyReply authority_process(std::size_t index, const Envelope& env);

  struct UserFlow {
    lee::UserKeyState state;
    lee::BlindedKeyReply final_reply;
    bool authorities_accepted = false;
  };
  // Drives the user through key issuing and key securing over the channel.
  UserFlow run_user_flow(const std::string& user_id);

  // Unblinds and verifies as `party`, logging the final check.
  FinalizedKey finalize_user_key(const std::string& party, const lee::UserKeyState& state,
                                 const lee::BlindedKeyReply& final_reply);

private:
  void record_setup(ScenarioKind scenario, std::uint64_t seed);

  std::string run_id_;
  TranscriptRecorder transcript_;
  Channel channel_;
  PartyRngs rngs_;
  lee::Setup setup_;
  std::function<bool(const std::string&)> id_check_;
};

class SuiScenario {
public:
  SuiScenario(const Group& group, std::uint64_t seed, std::string run_id,
              ScenarioKind scenario = ScenarioKind::honest);

  SuiScenario(const SuiScenario&) = delete;
  SuiScenario& operator=(const SuiScenario&) = delete;

  TranscriptRecorder& transcript() { return transcript_; }
  Channel& channel() { return channel_; }
  const sui::SystemParams& params() const { return params_; }
  const Scalar& kgc_secret() const { return kgc_secret_; }
  sui::PendingDatabase& db() { return db_; }
  const std::string& run_id() const { return run_id_; }
  SeededRng& rng(const std::string& label) { return rngs_.rng(label); }

  void register_user(const std::string& id, const std::string& pwd);
  // The password the user itself remembers from registration.
  std::optional<std::string> user_pwd(const std::string& id) const;

  // Role-labelled database accesses, each logged as an access entry.
  sui::PendingDatabase snapshot_db(const std::string& role);
  std::optional<std::string> read_pwd(const std::string& role, const std::string& id);

  // KGC handling of a delivered request: scans the pending database, logging
  // one check per tried tuple. Throws AuthenticationFailure if nothing
  // matches; on success the matched tuple is removed.
  sui::Issued kgc_process(const Envelope& env);

  // User-side verification of the blinded key against the request it sent,
  // logged; unblinds only when the check passes.
  FinalizedKey finalize_user_key(const std::string& party, const G1Element& S,
                                 const sui::Request& sent_request, const Scalar& r);

private:
  std::string run_id_;
  TranscriptRecorder transcript_;
  Channel channel_;
  PartyRngs rngs_;
  sui::SystemParams params_;
  Scalar kgc_secret_;
  sui::PendingDatabase db_;
  std::map<std::string, std::string> user_secrets_;
};

// Attack drivers register here; the runner looks scenarios up by kind.
class ScenarioRegistry {
public:
  using LeeDriver = std::function<attacks::AttackVerdict(LeeScenario&, const ScenarioConfig&)>;
  using SuiDriver = std::function<attacks::AttackVerdict(SuiScenario&, const ScenarioConfig&)>;

  void add_lee(ScenarioKind kind, LeeDriver driver);
  void add_sui(ScenarioKind kind, SuiDriver driver);
  const LeeDriver* find_lee(ScenarioKind kind) const;
  const SuiDriver* find_sui(ScenarioKind kind) const;

private:
  std::map<ScenarioKind, LeeDriver> lee_;
  std::map<ScenarioKind, SuiDriver> sui_;
};

}  // namespace keylab::harness
