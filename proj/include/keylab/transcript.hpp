#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "keylab/group.hpp"

namespace keylab::harness {

using DetailMap = std::vector<std::pair<std::string, std::string>>;

// One logged event. `seq` numbers entries, `time` is the logical protocol
// step (advanced once per envelope on the wire, never wall-clock). Group
// elements inside `detail` are canonical lowercase hex.
//
// Kinds: params (run header), send, tamper, deliver, check, access, verdict.
struct TranscriptEntry {
  std::uint64_t seq = 0;
  std::uint64_t time = 0;
  std::string kind;
  std::string party;
  DetailMap detail;

  const std::string* find(const std::string& key) const;

  nlohmann::ordered_json to_json() const;
  static TranscriptEntry from_json(const nlohmann::ordered_json& j);
};

class TranscriptRecorder {
public:
  // Advances the logical clock; called once per envelope put on the wire.
  std::uint64_t next_step() { return ++clock_; }

  void record(std::string kind, std::string party, DetailMap detail);

  // Every protocol check is a pairing equation pair(lhs_a, lhs_b) ==
  // pair(rhs_a, rhs_b); the operands are logged so the equation can be
  // re-validated from the transcript alone.
  void record_check(const std::string& party, const std::string& name, const G1Element& lhs_a,
                    const G1Element& lhs_b, const G1Element& rhs_a, const G1Element& rhs_b,
                    bool result, DetailMap extra = {});

  void record_access(const std::string& role, const std::string& action, const std::string& id);

  const std::vector<TranscriptEntry>& entries() const { return entries_; }

private:
  std::vector<TranscriptEntry> entries_;
  std::uint64_t clock_ = 0;
};

// One JSON object per line, fixed key order, '\n' terminated, no padding.
std::string write_transcript(const std::vector<TranscriptEntry>& entries);
void write_transcript(const std::vector<TranscriptEntry>& entries, std::ostream& sink);

std::vector<TranscriptEntry> parse_transcript(std::istream& source);
std::vector<TranscriptEntry> parse_transcript_text(const std::string& text);

struct VerifyReport {
  std::size_t checks = 0;
  std::size_t mismatches = 0;     // recomputed equation disagrees with the recorded result
  std::size_t failed_checks = 0;  // checks recorded with result=false
  bool ok() const { return mismatches == 0; }
};

// Re-validates every logged pairing equation against the group parameters in
// the transcript header. Throws EncodingError on a malformed transcript.
VerifyReport verify_transcript(const std::vector<TranscriptEntry>& entries);

}  // namespace keylab::harness
