#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "keylab/group.hpp"
#include "keylab/rng.hpp"

using namespace keylab;

TEST_CASE("same seed reproduces the same draws") {
  const Group g = Group::transparent(101);
  SeededRng a(42);
  SeededRng b(42);
  for (int i = 0; i < 100; ++i) CHECK(g.random_scalar(a, false) == g.random_scalar(b, false));
}

TEST_CASE("label split is deterministic and labels diverge") {
  SeededRng a = SeededRng::for_label(42, "KGC");
  SeededRng b = SeededRng::for_label(42, "KGC");
  CHECK(a.next_u64() == b.next_u64());

  SeededRng c = SeededRng::for_label(42, "KPA_1");
  SeededRng d = SeededRng::for_label(42, "user:alice");
  SeededRng e = SeededRng::for_label(42, "KGC");
  const auto ev = e.next_u64();
  CHECK(c.next_u64() != ev);
  CHECK(d.next_u64() != ev);
}

TEST_CASE("nonzero draws never produce zero") {
  const Group g = Group::transparent(101);
  SeededRng rng(1);
  for (int i = 0; i < 10000; ++i) CHECK_FALSE(g.random_scalar(rng, true).is_zero());
}

TEST_CASE("residues at q=11 stay within five sigma of uniform") {
  const Group g = Group::transparent(11);
  SeededRng rng(2024);
  constexpr int draws = 100000;
  int counts[11] = {};
  for (int i = 0; i < draws; ++i)
    ++counts[static_cast<std::size_t>(g.random_scalar(rng, false).value())];

  const double p = 1.0 / 11.0;
  const double expected = draws * p;
  const double sigma = std::sqrt(draws * p * (1.0 - p));
  for (int residue = 0; residue < 11; ++residue)
    CHECK(std::abs(counts[residue] - expected) <= 5.0 * sigma);
}

TEST_CASE("uniform_below edge cases") {
  SeededRng rng(5);
  CHECK(rng.uniform_below(1) == 0);
  CHECK_THROWS_AS(rng.uniform_below(0), DomainError);
  for (int i = 0; i < 1000; ++i) {
    const BigInt v = rng.uniform_below(BigInt(12345));
    CHECK(v >= 0);
    CHECK(v < 12345);
  }
}

TEST_CASE("hex_token shape") {
  SeededRng rng(9);
  const std::string token = rng.hex_token();
  CHECK(token.size() == 16);
  for (char c : token) CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
  CHECK(token != rng.hex_token());
}
