#pragma once

#include <functional>
#include <string>
#include <vector>

#include "keylab/transcript.hpp"
#include "keylab/wire.hpp"

namespace keylab::harness {

struct Envelope {
  std::uint64_t seq = 0;
  std::string from;
  std::string to;
  Payload payload;
  bool tampered = false;  // set iff an interceptor changed the payload
};

// A wire adversary: matches envelopes in flight and rewrites their payload.
// Transforms must be pure; each interceptor is applied at most once per
// envelope, in registration order.
struct Interceptor {
  std::string label;  // transcript party for the tamper event
  std::function<bool(const Envelope&)> matches;
  std::function<Payload(const Payload&)> transform;
};

// Single routed message channel. Every transmission logs a send entry with
// the full payload, tamper entries for any interceptor rewrites, and a
// deliver entry; the returned envelope is what the recipient sees.
class Channel {
public:
  explicit Channel(TranscriptRecorder& transcript) : transcript_(&transcript) {}

  void add_interceptor(Interceptor interceptor);

  Envelope transmit(const std::string& from, const std::string& to, Payload payload);

private:
  TranscriptRecorder* transcript_;
  std::vector<Interceptor> interceptors_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace keylab::harness
