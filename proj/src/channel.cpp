#include "keylab/channel.hpp"

namespace keylab::harness {

namespace {
DetailMap envelope_detail(const Envelope& env, bool with_payload) {
  DetailMap d;
  d.emplace_back("env", std::to_string(env.seq));
  if (with_payload) {
    d.emplace_back("to", env.to);
    d.emplace_back("type", payload_type(env.payload));
    DetailMap fields = payload_detail(env.payload);
    d.insert(d.end(), fields.begin(), fields.end());
  }
  return d;
}
}  // namespace

void Channel::add_interceptor(Interceptor interceptor) {
  interceptors_.push_back(std::move(interceptor));
}

Envelope Channel::transmit(const std::string& from, const std::string& to, Payload payload) {
  Envelope env{next_seq_++, from, to, std::move(payload), false};
  transcript_->next_step();
  transcript_->record("send", from, envelope_detail(env, true));

  for (const Interceptor& interceptor : interceptors_) {
    if (!interceptor.matches(env)) continue;
    Payload replaced = interceptor.transform(env.payload);
    if (replaced == env.payload) continue;
    env.payload = std::move(replaced);
    env.tampered = true;
    transcript_->record("tamper", interceptor.label, envelope_detail(env, true));
  }

  DetailMap d;
  d.emplace_back("env", std::to_string(env.seq));
  d.emplace_back("from", env.from);
  d.emplace_back("tampered", env.tampered ? "true" : "false");
  transcript_->record("deliver", env.to, std::move(d));
  return env;
}

}  // namespace keylab::harness
