#include "keylab/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "keylab/scenario.hpp"

namespace keylab::harness {

namespace {

struct RunArgs {
  std::string config_path;
  std::string protocol;
  std::string scenario;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t q = 0;
  std::uint64_t index = 0;
  std::uint64_t r_star = 0;
  std::string id;
  std::string message_hex;
  std::string out_path;
  bool expect_success = false;
};

ScenarioConfig assemble_config(const CLI::App& cmd, const RunArgs& args, std::string& out_path,
                               bool& expect_success) {
  ScenarioConfig config;
  bool have_protocol = false;
  bool have_scenario = false;

  if (cmd.count("--config") > 0) {
    std::ifstream in(args.config_path);
    if (!in) throw ConfigError("cannot open config file: " + args.config_path);
    nlohmann::ordered_json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& ex) {
      throw ConfigError(std::string("config file is not valid JSON: ") + ex.what());
    }
    config = ScenarioConfig::from_json(j);
    have_protocol = j.contains("protocol");
    have_scenario = j.contains("scenario");
    if (j.contains("out")) out_path = j.at("out").get<std::string>();
    if (j.contains("expect_success")) expect_success = j.at("expect_success").get<bool>();
  }

  if (cmd.count("--protocol") > 0) {
    config.protocol = protocol_from_string(args.protocol);
    have_protocol = true;
  }
  if (cmd.count("--scenario") > 0) {
    config.scenario = scenario_from_string(args.scenario);
    have_scenario = true;
  }
  if (cmd.count("--n") > 0) config.n = static_cast<std::size_t>(args.n);
  if (cmd.count("--seed") > 0) config.seed = args.seed;
  if (cmd.count("--q") > 0) config.q = args.q;
  if (cmd.count("--i") > 0) config.index = static_cast<std::size_t>(args.index);
  if (cmd.count("--r-star") > 0) config.r_star = args.r_star;
  if (cmd.count("--id") > 0) config.id = args.id;
  if (cmd.count("--message") > 0) {
    try {
      config.message = from_hex(args.message_hex);
    } catch (const EncodingError& ex) {
      throw ConfigError(std::string("--message: ") + ex.what());
    }
  }
  if (cmd.count("--out") > 0) out_path = args.out_path;
  if (cmd.count("--expect-success") > 0) expect_success = true;

  if (!have_protocol) throw ConfigError("--protocol is required");
  if (!have_scenario) throw ConfigError("--scenario is required");
  return config;
}

int do_run(const CLI::App& cmd, const RunArgs& args) {
  std::string out_path;
  bool expect_success = args.expect_success;
  const ScenarioConfig config = assemble_config(cmd, args, out_path, expect_success);
  config.validate();

  const RunResult result = run_scenario(config);

  // Transcript goes to --out when given, otherwise to stdout; the human
  // summary and verdict take whichever stream the transcript does not use.
  std::ostream* report = &std::cout;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + out_path);
    write_transcript(result.transcript, out);
  } else {
    write_transcript(result.transcript, std::cout);
    report = &std::cerr;
  }

  if (result.verdict) {
    *report << result.verdict->to_json().dump() << '\n';
    if (expect_success && !result.verdict->success) {
      *report << "expected attack success, got failure: " << result.run_id << '\n';
      return 1;
    }
    return 0;
  }
  if (!result.honest_ok) {
    *report << "honest run failed verification: " << result.run_id << '\n';
    return 1;
  }
  *report << "honest run ok: " << result.run_id << '\n';
  return 0;
}

int do_verify(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open transcript: " + path);
  const std::vector<TranscriptEntry> entries = parse_transcript(in);
  const VerifyReport report = verify_transcript(entries);
  std::cout << "verified " << report.checks << " pairing checks, " << report.mismatches
            << " mismatches, " << report.failed_checks << " recorded failures\n";
  return report.ok() ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Deterministic key-issuing protocol lab: honest runs and attack scenarios"};
  app.name("keylab");
  app.require_subcommand(1);

  RunArgs args;
  CLI::App* run = app.add_subcommand("run", "Execute a scenario and emit its JSONL transcript");
  run->add_option("--config", args.config_path, "JSON config file mirroring the flags");
  run->add_option("--protocol", args.protocol, "lee | sui");
  run->add_option("--scenario", args.scenario,
                  "honest | impersonation | insider-sig | tamper | stolen-verifier | "
                  "insider-pwd | rerandomize");
  run->add_option("--n", args.n, "KPA count (lee only, default 2)");
  run->add_option("--seed", args.seed, "master seed (default 0)");
  run->add_option("--q", args.q, "small prime modulus override (testing)");
  run->add_option("--i", args.index, "target authority index (insider-sig, tamper)");
  run->add_option("--r-star", args.r_star, "scale factor (tamper, rerandomize)");
  run->add_option("--id", args.id, "subject identity (default alice)");
  run->add_option("--message", args.message_hex, "message to forge a signature on, hex");
  run->add_option("--out", args.out_path, "transcript output path (default stdout)");
  run->add_flag("--expect-success", args.expect_success,
                "exit 1 unless the attack verdict reports success");

  std::string verify_path;
  CLI::App* verify = app.add_subcommand("verify-transcript",
                                        "Re-check every pairing equation recorded in a transcript");
  verify->add_option("path", verify_path, "transcript file")->required();

  int exit_code = 0;
  run->callback([&] { exit_code = do_run(*run, args); });
  verify->callback([&] { exit_code = do_verify(verify_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const EncodingError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}

}  // namespace keylab::harness
