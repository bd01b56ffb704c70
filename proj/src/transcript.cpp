#include "keylab/transcript.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace keylab::harness {

const std::string* TranscriptEntry::find(const std::string& key) const {
  for (const auto& [k, v] : detail)
    if (k == key) return &v;
  return nullptr;
}

nlohmann::ordered_json TranscriptEntry::to_json() const {
  nlohmann::ordered_json j;
  j["seq"] = seq;
  j["time"] = time;
  j["kind"] = kind;
  j["party"] = party;
  auto d = nlohmann::ordered_json::object();
  for (const auto& [k, v] : detail) d[k] = v;
  j["detail"] = d;
  return j;
}

TranscriptEntry TranscriptEntry::from_json(const nlohmann::ordered_json& j) {
  TranscriptEntry e;
  try {
    e.seq = j.at("seq").get<std::uint64_t>();
    e.time = j.at("time").get<std::uint64_t>();
    e.kind = j.at("kind").get<std::string>();
    e.party = j.at("party").get<std::string>();
    for (const auto& [k, v] : j.at("detail").items())
      e.detail.emplace_back(k, v.get<std::string>());
  } catch (const nlohmann::json::exception& ex) {
    throw EncodingError(std::string("malformed transcript entry: ") + ex.what());
  }
  return e;
}

void TranscriptRecorder::record(std::string kind, std::string party, DetailMap detail) {
  TranscriptEntry e;
  e.seq = entries_.size();
  e.time = clock_;
  e.kind = std::move(kind);
  e.party = std::move(party);
  e.detail = std::move(detail);
  entries_.push_back(std::move(e));
}

void TranscriptRecorder::record_check(const std::string& party, const std::string& name,
                                      const G1Element& lhs_a, const G1Element& lhs_b,
                                      const G1Element& rhs_a, const G1Element& rhs_b, bool result,
                                      DetailMap extra) {
  DetailMap d;
  d.emplace_back("check", name);
  d.emplace_back("lhs_a", lhs_a.hex());
  d.emplace_back("lhs_b", lhs_b.hex());
  d.emplace_back("rhs_a", rhs_a.hex());
  d.emplace_back("rhs_b", rhs_b.hex());
  d.emplace_back("result", result ? "true" : "false");
  d.insert(d.end(), extra.begin(), extra.end());
  record("check", party, std::move(d));
}

void TranscriptRecorder::record_access(const std::string& role, const std::string& action,
                                       const std::string& id) {
  record("access", role, DetailMap{{"action", action}, {"id", id}, {"role", role}});
}

std::string write_transcript(const std::vector<TranscriptEntry>& entries) {
  std::string out;
  for (const TranscriptEntry& e : entries) {
    out += e.to_json().dump();
    out += '\n';
  }
  return out;
}

void write_transcript(const std::vector<TranscriptEntry>& entries, std::ostream& sink) {
  sink << write_transcript(entries);
  if (!sink) throw IoError("transcript write failed");
}

std::vector<TranscriptEntry> parse_transcript(std::istream& source) {
  std::vector<TranscriptEntry> out;
  std::string line;
  while (std::getline(source, line)) {
    if (line.empty()) continue;
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw EncodingError(std::string("transcript line is not valid JSON: ") + ex.what());
    }
    out.push_back(TranscriptEntry::from_json(j));
  }
  return out;
}

std::vector<TranscriptEntry> parse_transcript_text(const std::string& text) {
  std::istringstream s(text);
  return parse_transcript(s);
}

VerifyReport verify_transcript(const std::vector<TranscriptEntry>& entries) {
  const TranscriptEntry* params = nullptr;
  for (const TranscriptEntry& e : entries)
    if (e.kind == "params") {
      params = &e;
      break;
    }
  if (!params) throw EncodingError("transcript has no params entry");
  const std::string* q_hex = params->find("q");
  const std::string* backend = params->find("backend");
  if (!q_hex || !backend) throw EncodingError("params entry lacks group parameters");
  if (*backend != "transparent-v1") throw EncodingError("unknown backend: " + *backend);
  const Group group = Group::transparent(bigint_from_be(from_hex(*q_hex)));

  VerifyReport report;
  for (const TranscriptEntry& e : entries) {
    if (e.kind != "check") continue;
    const std::string* la = e.find("lhs_a");
    const std::string* lb = e.find("lhs_b");
    const std::string* ra = e.find("rhs_a");
    const std::string* rb = e.find("rhs_b");
    const std::string* result = e.find("result");
    if (!la || !lb || !ra || !rb || !result)
      throw EncodingError("check entry lacks pairing operands");
    const bool recomputed = pair(group.g1_from_bytes(from_hex(*la)), group.g1_from_bytes(from_hex(*lb))) ==
                            pair(group.g1_from_bytes(from_hex(*ra)), group.g1_from_bytes(from_hex(*rb)));
    const bool recorded = *result == "true";
    ++report.checks;
    if (recomputed != recorded) ++report.mismatches;
    if (!recorded) ++report.failed_checks;
  }
  return report;
}

}  // namespace keylab::harness
