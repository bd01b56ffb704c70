#include "keylab/scenario.hpp"

#include <utility>

#include "keylab/attacks.hpp"

namespace keylab::harness {

std::string to_string(Protocol p) { return p == Protocol::lee ? "lee" : "sui"; }

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::honest: return "honest";
    case ScenarioKind::impersonation: return "impersonation";
    case ScenarioKind::insider_sig: return "insider-sig";
    case ScenarioKind::tamper: return "tamper";
    case ScenarioKind::stolen_verifier: return "stolen-verifier";
    case ScenarioKind::insider_pwd: return "insider-pwd";
    case ScenarioKind::rerandomize: return "rerandomize";
  }
  throw Error("unknown scenario kind");
}

Protocol protocol_from_string(const std::string& s) {
  if (s == "lee") return Protocol::lee;
  if (s == "sui") return Protocol::sui;
  throw ConfigError("unknown protocol: " + s);
}

ScenarioKind scenario_from_string(const std::string& s) {
  for (ScenarioKind k :
       {ScenarioKind::honest, ScenarioKind::impersonation, ScenarioKind::insider_sig,
        ScenarioKind::tamper, ScenarioKind::stolen_verifier, ScenarioKind::insider_pwd,
        ScenarioKind::rerandomize})
    if (to_string(k) == s) return k;
  throw ConfigError("unknown scenario: " + s);
}

namespace {

bool scenario_is_lee(ScenarioKind k) {
  return k == ScenarioKind::honest || k == ScenarioKind::impersonation ||
         k == ScenarioKind::insider_sig || k == ScenarioKind::tamper;
}

bool scenario_is_sui(ScenarioKind k) {
  return k == ScenarioKind::honest || k == ScenarioKind::stolen_verifier ||
         k == ScenarioKind::insider_pwd || k == ScenarioKind::rerandomize;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (protocol == Protocol::lee && !scenario_is_lee(scenario))
    throw ConfigError("scenario '" + to_string(scenario) + "' is not a lee scenario");
  if (protocol == Protocol::sui && !scenario_is_sui(scenario))
    throw ConfigError("scenario '" + to_string(scenario) + "' is not a sui scenario");
  if (protocol == Protocol::sui && n)
    throw ConfigError("--n applies to the lee protocol only");
  if (protocol == Protocol::lee && kpa_count() == 0)
    throw ConfigError("the lee protocol needs at least one KPA");

  const bool needs_index = scenario == ScenarioKind::insider_sig || scenario == ScenarioKind::tamper;
  const bool needs_r_star = scenario == ScenarioKind::tamper || scenario == ScenarioKind::rerandomize;
  const bool needs_message = scenario == ScenarioKind::insider_sig;

  if (needs_index != index.has_value())
    throw ConfigError(needs_index ? "scenario requires --i" : "--i is not used by this scenario");
  if (needs_r_star != r_star.has_value())
    throw ConfigError(needs_r_star ? "scenario requires --r-star" : "--r-star is not used by this scenario");
  if (needs_message != message.has_value())
    throw ConfigError(needs_message ? "scenario requires --message" : "--message is not used by this scenario");

  const Group group = make_group();  // rejects non-prime or undersized moduli
  if (index && (*index < 1 || *index > kpa_count()))
    throw ConfigError("--i must name a KPA in [1, n]");
  if (r_star && BigInt(*r_star) % group.modulus() == 0)
    throw ConfigError("--r-star must be nonzero modulo q");
}

Group ScenarioConfig::make_group() const {
  return q ? Group::transparent(BigInt(*q)) : Group::standard();
}

std::string ScenarioConfig::run_id() const {
  std::string out = to_string(protocol) + "-" + to_string(scenario);
  if (protocol == Protocol::lee) out += "-n" + std::to_string(kpa_count());
  if (q) out += "-q" + std::to_string(*q);
  out += "-seed" + std::to_string(seed);
  if (index) out += "-i" + std::to_string(*index);
  if (r_star) out += "-r" + std::to_string(*r_star);
  if (message) {
    std::string m = to_hex(*message);
    out += "-m" + (m.size() > 16 ? m.substr(0, 16) : m);
  }
  return out;
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ScenarioConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "protocol") cfg.protocol = protocol_from_string(value.get<std::string>());
      else if (key == "scenario") cfg.scenario = scenario_from_string(value.get<std::string>());
      else if (key == "n") cfg.n = value.get<std::size_t>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "q") cfg.q = value.get<std::uint64_t>();
      else if (key == "i") cfg.index = value.get<std::size_t>();
      else if (key == "r_star") cfg.r_star = value.get<std::uint64_t>();
      else if (key == "id") cfg.id = value.get<std::string>();
      else if (key == "message") cfg.message = from_hex(value.get<std::string>());
      else if (key == "out" || key == "expect_success") continue;  // CLI-level keys
      else throw ConfigError("unknown config key: " + key);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("bad config value: ") + ex.what());
  }
  return cfg;
}

SeededRng& PartyRngs::rng(const std::string& label) {
  auto it = rngs_.find(label);
  if (it == rngs_.end())
    it = rngs_.emplace(label, SeededRng::for_label(master_seed_, label)).first;
  return it->second;
}

namespace {

DetailMap params_detail(const Group& group, Protocol protocol, ScenarioKind scenario,
                        std::optional<std::size_t> n, std::uint64_t seed,
                        const std::string& run_id) {
  DetailMap d;
  d.emplace_back("protocol", to_string(protocol));
  d.emplace_back("scenario", to_string(scenario));
  if (n) d.emplace_back("n", std::to_string(*n));
  d.emplace_back("seed", std::to_string(seed));
  d.emplace_back("q", to_hex(bigint_to_be(group.modulus(), group.scalar_bytes())));
  d.emplace_back("backend", group.backend_id());
  d.emplace_back("P", group.generator().hex());
  d.emplace_back("g_T", group.gt_generator().hex());
  d.emplace_back("run_id", run_id);
  return d;
}

lee::Setup make_lee_setup(const Group& group, std::size_t n, PartyRngs& rngs) {
  if (n == 0) throw ConfigError("at least one KPA is required");
  std::vector<Scalar> keys;
  keys.reserve(n + 1);
  keys.push_back(group.random_scalar(rngs.rng("KGC"), true));
  for (std::size_t i = 1; i <= n; ++i)
    keys.push_back(group.random_scalar(rngs.rng("KPA_" + std::to_string(i)), true));
  return lee::setup_from_secrets(group, keys);
}

void record_verdict(TranscriptRecorder& transcript, const attacks::AttackVerdict& verdict) {
  DetailMap d;
  d.emplace_back("attack_id", attacks::to_string(verdict.attack_id));
  d.emplace_back("success", verdict.success ? "true" : "false");
  for (const auto& check : verdict.checks)
    d.emplace_back(check.label, check.passed ? "pass" : "fail");
  for (const auto& [name, hex] : verdict.extracted) d.emplace_back("extracted_" + name, hex);
  transcript.record("verdict", "runner", std::move(d));
}

}  // namespace

// ---- LeeScenario ----

LeeScenario::LeeScenario(const Group& group, std::size_t n, std::uint64_t seed,
                         std::string run_id, ScenarioKind scenario)
    : run_id_(std::move(run_id)),
      transcript_(),
      channel_(transcript_),
      rngs_(seed),
      setup_(make_lee_setup(group, n, rngs_)),
      id_check_([](const std::string&) { return true; }) {
  record_setup(scenario, seed);
}

LeeScenario::LeeScenario(const Group& group, const std::vector<Scalar>& master_keys,
                         std::uint64_t seed, std::string run_id, ScenarioKind scenario)
    : run_id_(std::move(run_id)),
      transcript_(),
      channel_(transcript_),
      rngs_(seed),
      setup_(lee::setup_from_secrets(group, master_keys)),
      id_check_([](const std::string&) { return true; }) {
  record_setup(scenario, seed);
}

void LeeScenario::record_setup(ScenarioKind scenario, std::uint64_t seed) {
  const Group& group = setup_.params.group;
  const std::size_t n = setup_.params.n;
  transcript_.record("params", "runner",
                     params_detail(group, Protocol::lee, scenario, n, seed, run_id_));
  // Publish the system public key chain, each round verified by its successor.
  for (std::size_t i = 1; i <= n; ++i) {
    const bool ok = lee::verify_chain_link(setup_.chain[i], setup_.chain[i - 1],
                                           setup_.params.authority_pub(i));
    transcript_.record_check(authority_label(i), "lee_chain_link", setup_.chain[i],
                             group.generator(), setup_.chain[i - 1],
                             setup_.params.authority_pub(i), ok);
  }
}

std::string LeeScenario::authority_label(std::size_t index) const {
  return setup_.params.authority_names.at(index);
}

void LeeScenario::set_id_check(std::function<bool(const std::string&)> check) {
  id_check_ = std::move(check);
}

lee::BlindedKeyReply LeeScenario::authority_process(std::size_t index, const Envelope& env) {
  if (env.to != authority_label(index))
    throw ConfigError("envelope is not addressed to " + authority_label(index));
  if (index == 0) {
    const auto* request = std::get_if<LeeKeyRequest>(&env.payload);
    if (!request) throw ConfigError("the KGC handles key requests only");
    if (!id_check_(request->id)) throw ReplyRejected("KGC rejected the identification");
    return lee::kgc_issue(request->id, request->X, setup_.secrets[0], setup_.params);
  }
  const auto* request = std::get_if<LeeSecureRequest>(&env.payload);
  if (!request) throw ConfigError("KPAs handle secure requests only");
  const G1Element& p_prev = setup_.params.authority_pub(index - 1);
  const bool ok = lee::verify_reply(request->reply_prev, p_prev);
  transcript_.record_check(authority_label(index), "lee_verify_reply", request->reply_prev.sig,
                           setup_.params.group.generator(), request->reply_prev.q_prime, p_prev,
                           ok, {{"id", request->id}});
  return lee::kpa_secure(index, request->id, request->X, request->reply_prev,
                         setup_.secrets[index], setup_.params);
}

LeeScenario::UserFlow LeeScenario::run_user_flow(const std::string& user_id) {
  const std::string user_label = "user:" + user_id;
  lee::UserKeyState state =
      lee::user_blind_request(user_id, setup_.params.group, rngs_.rng(user_label));

  Envelope env = channel_.transmit(user_label, "KGC", LeeKeyRequest{user_id, state.X});
  lee::BlindedKeyReply reply = authority_process(0, env);
  Envelope back = channel_.transmit("KGC", user_label, Payload(reply));
  state.accept(std::get<lee::BlindedKeyReply>(back.payload));

  for (std::size_t i = 1; i <= setup_.params.n; ++i) {
    env = channel_.transmit(user_label, authority_label(i),
                            LeeSecureRequest{user_id, state.X, *state.current});
    reply = authority_process(i, env);
    back = channel_.transmit(authority_label(i), user_label, Payload(reply));
    state.accept(std::get<lee::BlindedKeyReply>(back.payload));
  }
  lee::BlindedKeyReply final_reply = *state.current;
  return UserFlow{std::move(state), std::move(final_reply), true};
}

FinalizedKey LeeScenario::finalize_user_key(const std::string& party,
                                            const lee::UserKeyState& state,
                                            const lee::BlindedKeyReply& final_reply) {
  const G1Element key = lee::user_unblind(final_reply, state, setup_.params);
  const G1Element qid = lee::compute_qid(state.id, setup_.params);
  const bool ok = lee::verify_private_key(key, qid, setup_.params);
  transcript_.record_check(party, "lee_verify_private_key", key, setup_.params.group.generator(),
                           qid, setup_.params.y, ok, {{"id", state.id}});
  return FinalizedKey{ok, key};
}

// ---- SuiScenario ----

SuiScenario::SuiScenario(const Group& group, std::uint64_t seed, std::string run_id,
                         ScenarioKind scenario)
    : run_id_(std::move(run_id)),
      transcript_(),
      channel_(transcript_),
      rngs_(seed),
      params_(group, group.g1_identity()),
      kgc_secret_(group.scalar(0)) {
  auto [params, secret] = sui::setup(group, rngs_.rng("KGC"));
  params_ = params;
  kgc_secret_ = secret;
  transcript_.record("params", "runner",
                     params_detail(group, Protocol::sui, scenario, std::nullopt, seed, run_id_));
}

void SuiScenario::register_user(const std::string& id, const std::string& pwd) {
  sui::lra_register(db_, id, pwd);
  user_secrets_[id] = pwd;
  transcript_.record_access("LRA", "register", id);
}

std::optional<std::string> SuiScenario::user_pwd(const std::string& id) const {
  auto it = user_secrets_.find(id);
  if (it == user_secrets_.end()) return std::nullopt;
  return it->second;
}

sui::PendingDatabase SuiScenario::snapshot_db(const std::string& role) {
  transcript_.record_access(role, "snapshot", "*");
  return db_;
}

std::optional<std::string> SuiScenario::read_pwd(const std::string& role, const std::string& id) {
  transcript_.record_access(role, "read", id);
  return db_.lookup(id);
}

sui::Issued SuiScenario::kgc_process(const Envelope& env) {
  const auto* request = std::get_if<sui::Request>(&env.payload);
  if (!request) throw ConfigError("the KGC handles key requests only");
  std::vector<sui::ScanRecord> scan;
  auto log_scan = [this, request](const std::vector<sui::ScanRecord>& records) {
    for (const sui::ScanRecord& rec : records)
      transcript_.record_check("KGC", "sui_kgc_request_check", request->Q, request->T, rec.h_id,
                               rec.h_pwd, rec.matched, {{"id", rec.id}});
  };
  try {
    sui::Issued issued = sui::kgc_check_and_issue(*request, db_, kgc_secret_, params_, &scan);
    log_scan(scan);
    return issued;
  } catch (const AuthenticationFailure&) {
    log_scan(scan);
    throw;
  }
}

FinalizedKey SuiScenario::finalize_user_key(const std::string& party, const G1Element& S,
                                            const sui::Request& sent_request, const Scalar& r) {
  const bool ok = sui::verify_blinded(S, sent_request, params_);
  transcript_.record_check(party, "sui_verify_blinded_key", S, params_.group.generator(),
                           sent_request.Q, params_.p_pkg, ok);
  FinalizedKey out{ok, params_.group.g1_identity()};
  if (ok) out.key = sui::user_finalize(S, sent_request, r, params_);
  return out;
}

// ---- registry and runner ----

void ScenarioRegistry::add_lee(ScenarioKind kind, LeeDriver driver) {
  lee_[kind] = std::move(driver);
}
void ScenarioRegistry::add_sui(ScenarioKind kind, SuiDriver driver) {
  sui_[kind] = std::move(driver);
}

const ScenarioRegistry::LeeDriver* ScenarioRegistry::find_lee(ScenarioKind kind) const {
  auto it = lee_.find(kind);
  return it == lee_.end() ? nullptr : &it->second;
}

const ScenarioRegistry::SuiDriver* ScenarioRegistry::find_sui(ScenarioKind kind) const {
  auto it = sui_.find(kind);
  return it == sui_.end() ? nullptr : &it->second;
}

namespace {
const ScenarioRegistry& builtin_registry() {
  static const ScenarioRegistry registry = [] {
    ScenarioRegistry r;
    attacks::register_builtin(r);
    return r;
  }();
  return registry;
}
}  // namespace

RunResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  const Group group = config.make_group();
  RunResult out;
  out.run_id = config.run_id();

  if (config.protocol == Protocol::lee) {
    LeeScenario ctx(group, config.kpa_count(), config.seed, out.run_id, config.scenario);
    if (config.scenario == ScenarioKind::honest) {
      auto flow = ctx.run_user_flow(config.subject());
      auto fin = ctx.finalize_user_key("user:" + config.subject(), flow.state, flow.final_reply);
      out.honest_ok = fin.ok && flow.authorities_accepted;
    } else {
      const auto* driver = builtin_registry().find_lee(config.scenario);
      if (!driver) throw ConfigError("no driver registered for " + to_string(config.scenario));
      attacks::AttackVerdict verdict = (*driver)(ctx, config);
      record_verdict(ctx.transcript(), verdict);
      out.verdict = std::move(verdict);
    }
    out.transcript = ctx.transcript().entries();
    return out;
  }

  SuiScenario ctx(group, config.seed, out.run_id, config.scenario);
  // The subject registers with the LRA in every sui scenario.
  const std::string subject = config.subject();
  ctx.register_user(subject, ctx.rng("user:" + subject).hex_token());
  if (config.scenario == ScenarioKind::honest) {
    const std::string user_label = "user:" + subject;
    auto [r, request] = sui::user_request(subject, *ctx.user_pwd(subject), group, ctx.rng(user_label));
    Envelope env = ctx.channel().transmit(user_label, "KGC", Payload(request));
    sui::Issued issued = ctx.kgc_process(env);
    Envelope back = ctx.channel().transmit("KGC", user_label, SuiBlindedKey{issued.S});
    auto fin = ctx.finalize_user_key(user_label, std::get<SuiBlindedKey>(back.payload).S, request, r);
    out.honest_ok = fin.ok;
  } else {
    const auto* driver = builtin_registry().find_sui(config.scenario);
    if (!driver) throw ConfigError("no driver registered for " + to_string(config.scenario));
    attacks::AttackVerdict verdict = (*driver)(ctx, config);
    record_verdict(ctx.transcript(), verdict);
    out.verdict = std::move(verdict);
  }
  out.transcript = ctx.transcript().entries();
  return out;
}

}  // namespace keylab::harness
