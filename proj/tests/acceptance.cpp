// Acceptance suite: one machine-checked criterion per run line, exact
// tolerances, deterministic seeds. Exit status 0 only if every criterion
// passes inside its wall-clock budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "keylab/attacks.hpp"
#include "keylab/scenario.hpp"
#include "oracle.hpp"

using namespace keylab;
using harness::LeeScenario;
using harness::Protocol;
using harness::RunResult;
using harness::ScenarioConfig;
using harness::ScenarioKind;
using harness::SuiScenario;

namespace {

bool check_passed(const attacks::AttackVerdict& v, const std::string& label) {
  for (const auto& c : v.checks)
    if (c.label == label) return c.passed;
  return false;
}

// ---- 1. honest lee completeness: exact product key, n in {1,2,5} x 100 seeds
bool criterion1(std::string& detail) {
  const Group g = Group::standard();
  const BigInt& q = g.modulus();
  int runs = 0;
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{5}}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      SeededRng rng(seed);
      const auto setup = lee::setup(g, n, rng);
      auto user = lee::user_blind_request("alice", g, rng);
      auto reply = lee::kgc_issue("alice", user.X, setup.secrets[0], setup.params);
      user.accept(reply);
      for (std::size_t i = 1; i <= n; ++i) {
        reply = lee::kpa_secure(i, "alice", user.X, reply, setup.secrets[i], setup.params);
        user.accept(reply);
      }
      const G1Element qid = lee::compute_qid("alice", setup.params);
      const G1Element key = lee::user_unblind(reply, user, setup.params);
      if (!lee::verify_private_key(key, qid, setup.params)) return false;

      BigInt expected = 1;
      for (const auto& authority : setup.secrets) expected = expected * authority.s.value() % q;
      expected = expected * qid.discrete_log().value() % q;
      if (key.discrete_log().value() != expected) return false;
      ++runs;
    }
  }
  detail = std::to_string(runs) + " runs, key exponent exactly (prod s_i)*u";
  return true;
}

// ---- 2. honest sui completeness: finalized key is exactly s*H(id)
bool criterion2(std::string& detail) {
  const Group g = Group::standard();
  const BigInt& q = g.modulus();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRng rng(seed);
    auto [params, s] = sui::setup(g, rng);
    sui::PendingDatabase db;
    sui::lra_register(db, "alice", "pw1");
    auto [r, req] = sui::user_request("alice", "pw1", g, rng);
    const auto issued = sui::kgc_check_and_issue(req, db, s, params);
    const G1Element key = sui::user_finalize(issued.S, req, r, params);

    const G1Element h_id = g.hash_to_g1(utf8_bytes("alice"));
    if (!(key == s * h_id)) return false;
    if (key.discrete_log().value() != s.value() * h_id.discrete_log().value() % q) return false;
  }
  detail = "100 runs, finalized key exactly s*H(id)";
  return true;
}

// ---- 3. impersonation succeeds on every seed; the victim always fails
bool criterion3(std::string& detail) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    LeeScenario ctx(Group::standard(), 2, seed, "acc-impersonation");
    const auto v = attacks::attack_lee_impersonation(ctx, "alice");
    if (!v.success) return false;
    if (!check_passed(v, "victim-verification-succeeds")) return false;  // observed false
  }
  detail = "100 seeded runs, adversary key valid, victim verification failed";
  return true;
}

// ---- 4. insider extraction: F equals s_i*H(m) exactly, n=3, every i, 20 seeds
bool criterion4(std::string& detail) {
  const Bytes message = utf8_bytes("the message to forge");
  for (std::size_t i : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      LeeScenario ctx(Group::standard(), 3, seed, "acc-insider");
      const auto v = attacks::attack_lee_insider(ctx, i, message);
      if (!v.success) return false;
      if (!check_passed(v, "extracted-signature-verifies")) return false;
      const G1Element expected =
          ctx.secrets()[i].s * ctx.params().group.hash_to_g1(message);
      if (v.extracted.empty() || v.extracted[0].second != expected.hex()) return false;
    }
  }
  detail = "60 runs, extracted F exactly s_i*H(m), pairing equation holds";
  return true;
}

// ---- 5. tamper: exhaustive r* at q=101, undetected until retrieval
bool criterion5(std::string& detail) {
  const Group g = Group::transparent(101);
  for (std::uint64_t r_star = 1; r_star <= 100; ++r_star) {
    LeeScenario ctx(g, 2, 1, "acc-tamper");
    const auto v = attacks::attack_lee_tamper(ctx, 1, g.scalar(BigInt(r_star)), "alice");
    if (r_star == 1) {
      if (v.success) return false;
      continue;
    }
    if (!v.success) return false;
    if (!check_passed(v, "authorities-accepted")) return false;
    if (!check_passed(v, "failure-first-at-retrieval")) return false;
    if (!check_passed(v, "final-verification-succeeds")) return false;  // observed false
  }
  detail = "r* in {2..100} all undetected until the final check; r*=1 no attack";
  return true;
}

// ---- 6. rerandomize: exhaustive r* at q=101, KGC blind, user detects
bool criterion6(std::string& detail) {
  const Group g = Group::transparent(101);
  for (std::uint64_t r_star = 1; r_star <= 100; ++r_star) {
    SuiScenario ctx(g, 1, "acc-rerandomize");
    ctx.register_user("alice", "pw");
    const auto v = attacks::attack_sui_rerandomize(ctx, g.scalar(BigInt(r_star)), "alice", "pw");
    if (r_star == 1) {
      if (v.success) return false;
      continue;
    }
    if (!v.success) return false;
    if (!check_passed(v, "kgc-accepted-request")) return false;
    if (!check_passed(v, "user-verification-succeeds")) return false;  // observed false
  }
  detail = "r* in {2..100} accepted by the KGC, rejected by the user; r*=1 no attack";
  return true;
}

// ---- 7. stolen verifier: every tuple of a 10-entry database, one-shot after
bool criterion7(std::string& detail) {
  SuiScenario ctx(Group::standard(), 5, "acc-stolen");
  for (int k = 0; k < 10; ++k)
    ctx.register_user("user-" + std::to_string(k), "pw-" + std::to_string(k));
  const sui::PendingDatabase snapshot = ctx.snapshot_db("adversary");

  for (int k = 0; k < 10; ++k) {
    const auto v =
        attacks::attack_sui_stolen_verifier(ctx, snapshot, "user-" + std::to_string(k));
    if (!v.success) return false;
  }
  // all tuples issued and removed: the stale snapshot is now worthless
  const auto again = attacks::attack_sui_stolen_verifier(ctx, snapshot, "user-0");
  if (again.success) return false;
  detail = "10/10 tuples replayed successfully; post-issuance replay fails";
  return true;
}

// ---- 8. insider password reuse, role annotation always correct
bool criterion8(std::string& detail) {
  const std::vector<std::string> roles{"LRA", "KGC-1", "KGC-7", "user"};
  for (int trial = 0; trial < 100; ++trial) {
    const std::string& role = roles[static_cast<std::size_t>(trial) % roles.size()];
    const bool shared = trial % 2 == 0;
    SuiScenario ctx(Group::standard(), static_cast<std::uint64_t>(trial), "acc-insider-pwd");
    ctx.register_user("alice", "hunter2");
    const attacks::ExternalPasswordCheck oracle_check =
        [shared](const std::string&, const std::string& pwd) {
          return shared && pwd == "hunter2";
        };
    const auto v = attacks::attack_sui_insider(ctx, role, oracle_check, "alice");

    const bool insider = role == "LRA" || role.rfind("KGC", 0) == 0;
    if (v.success != (shared && insider)) return false;

    bool annotated = false;
    for (const auto& e : ctx.transcript().entries())
      if (e.kind == "access" && *e.find("action") == "read" && *e.find("role") == role)
        annotated = true;
    if (!annotated) return false;
  }
  detail = "100 runs, success iff shared password and insider role; annotations exact";
  return true;
}

// ---- 9. oracle equivalence: exhaustive at q=11, sampled at q=101
bool criterion9(std::string& detail) {
  std::size_t compared = 0;
  for (oracle::u64 q : {oracle::u64{11}, oracle::u64{101}}) {
    const Group g = Group::transparent(q);
    const auto g1 = [&](oracle::u64 e) {
      return g.scalar(static_cast<std::int64_t>(e)) * g.generator();
    };
    const auto gt = [&](oracle::u64 e) {
      return g.gt_generator().pow(g.scalar(static_cast<std::int64_t>(e)));
    };
    const auto sc = [&](oracle::u64 e) { return g.scalar(static_cast<std::int64_t>(e)); };

    const auto agree = [&](oracle::u64 a, oracle::u64 b) {
      if (!(g1(a) + g1(b) == g1(oracle::addmod(a, b, q)))) return false;
      if (!(sc(a) * g1(b) == g1(oracle::mulmod(a, b, q)))) return false;
      if (!(pair(g1(a), g1(b)) == gt(oracle::mulmod(a, b, q)))) return false;
      if (!(gt(a).pow(sc(b)) == gt(oracle::mulmod(a, b, q)))) return false;
      if (!(sc(a) + sc(b) == sc(oracle::addmod(a, b, q)))) return false;
      if (!(sc(a) - sc(b) == sc(oracle::submod(a, b, q)))) return false;
      if (!(sc(a) * sc(b) == sc(oracle::mulmod(a, b, q)))) return false;
      if (b != 0 && !(sc(b).inv() == sc(oracle::invmod(b, q)))) return false;
      return true;
    };

    if (q == 11) {
      for (oracle::u64 a = 0; a < q; ++a)
        for (oracle::u64 b = 0; b < q; ++b) {
          if (!agree(a, b)) return false;
          ++compared;
        }
    } else {
      SeededRng rng(99);
      for (int round = 0; round < 10000; ++round) {
        const auto a = static_cast<oracle::u64>(rng.uniform_below(BigInt(q)));
        const auto b = static_cast<oracle::u64>(rng.uniform_below(BigInt(q)));
        if (!agree(a, b)) return false;
        ++compared;
      }
    }

    for (int i = 0; i < 64; ++i) {
      const Bytes data = utf8_bytes("acceptance-corpus-" + std::to_string(i));
      if (g.hash_to_g1(data).discrete_log().value() != BigInt(oracle::hash_to_g1_exp(q, data)))
        return false;
      const auto e = static_cast<oracle::u64>(i * 7 % q);
      if (g.hash_gt_to_scalar(gt(e)).value() != BigInt(oracle::hash_gt_exp_to_scalar(q, e)))
        return false;
      ++compared;
    }
  }
  detail = std::to_string(compared) + " comparisons, zero mismatches";
  return true;
}

// ---- 10. determinism and transcript re-validation
bool criterion10(std::string& detail) {
  std::vector<ScenarioConfig> configs;
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{5}}) {
    ScenarioConfig cfg;
    cfg.protocol = Protocol::lee;
    cfg.scenario = ScenarioKind::honest;
    cfg.n = n;
    cfg.seed = 40 + n;
    configs.push_back(cfg);
  }
  {
    ScenarioConfig cfg;
    cfg.protocol = Protocol::sui;
    cfg.scenario = ScenarioKind::honest;
    cfg.seed = 44;
    configs.push_back(cfg);
    cfg.q = 101;
    cfg.seed = 45;
    configs.push_back(cfg);
  }
  {
    ScenarioConfig cfg;
    cfg.protocol = Protocol::lee;
    cfg.scenario = ScenarioKind::tamper;
    cfg.n = 2;
    cfg.seed = 46;
    cfg.q = 101;
    cfg.index = 1;
    cfg.r_star = 2;
    configs.push_back(cfg);
    ScenarioConfig sui_cfg;
    sui_cfg.protocol = Protocol::sui;
    sui_cfg.scenario = ScenarioKind::rerandomize;
    sui_cfg.seed = 47;
    sui_cfg.q = 101;
    sui_cfg.r_star = 3;
    configs.push_back(sui_cfg);
  }

  std::size_t honest_checks = 0;
  for (const ScenarioConfig& cfg : configs) {
    const RunResult first = harness::run_scenario(cfg);
    const RunResult second = harness::run_scenario(cfg);
    if (harness::write_transcript(first.transcript) != harness::write_transcript(second.transcript))
      return false;

    const harness::VerifyReport report = harness::verify_transcript(first.transcript);
    if (!report.ok()) return false;
    if (cfg.scenario == ScenarioKind::honest) {
      if (report.failed_checks != 0) return false;
      honest_checks += report.checks;
    }
  }
  detail = "byte-identical reruns; " + std::to_string(honest_checks) +
           " honest pairing checks re-validated clean";
  return true;
}

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "honest lee completeness", 60.0, criterion1},
      {2, "honest sui completeness", 60.0, criterion2},
      {3, "impersonation attack", 60.0, criterion3},
      {4, "insider signature extraction", 60.0, criterion4},
      {5, "KPA incompetency (tamper)", 10.0, criterion5},
      {6, "KGC incompetency (rerandomize)", 10.0, criterion6},
      {7, "stolen verifier", 60.0, criterion7},
      {8, "insider password reuse", 60.0, criterion8},
      {9, "oracle equivalence", 10.0, criterion9},
      {10, "determinism and transcript verification", 60.0, criterion10},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criterion.budget_seconds) {
      ok = false;
      detail += " [over budget of " + std::to_string(criterion.budget_seconds) + "s]";
    }
    if (!ok) ++failures;
    std::printf("[%s] criterion %2d: %s: %s (%.2fs)\n", ok ? "PASS" : "FAIL", criterion.number,
                criterion.name.c_str(), detail.c_str(), elapsed);
  }
  if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
