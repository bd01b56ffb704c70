#pragma once

namespace keylab::harness {

// Exit codes: 0 success (honest run passed, or attack matched
// --expect-success), 1 predicate mismatch, 2 usage or configuration error.
int cli_main(int argc, const char* const* argv);

}  // namespace keylab::harness
