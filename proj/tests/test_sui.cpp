#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "keylab/sui.hpp"
#include "oracle.hpp"

using namespace keylab;

namespace {

sui::SystemParams fixed_params(const Group& g, std::int64_t s) {
  return sui::SystemParams{g, g.scalar(s) * g.generator()};
}

oracle::u64 dlog(const G1Element& a) {
  return static_cast<oracle::u64>(a.discrete_log().value());
}

}  // namespace

TEST_CASE("setup publishes P_PKG = sP") {
  const Group g = Group::transparent(101);
  CHECK(fixed_params(g, 1).p_pkg == g.generator());
  CHECK(fixed_params(g, 7).p_pkg == g.scalar(7) * g.generator());

  SeededRng rng(3);
  auto [params, secret] = sui::setup(g, rng);
  CHECK_FALSE(secret.is_zero());
  CHECK(params.p_pkg == secret * g.generator());
  CHECK(pair(params.p_pkg, g.generator()) ==
        pair(g.generator(), g.generator()).pow(secret));
}

TEST_CASE("pending database registration") {
  sui::PendingDatabase db;
  sui::lra_register(db, "alice", "pw1");
  CHECK(db.size() == 1);
  CHECK(db.lookup("alice") == "pw1");
  CHECK_THROWS_AS(sui::lra_register(db, "alice", "pw2"), RegistrationConflict);
  CHECK(db.remove("alice"));
  CHECK(db.empty());
  CHECK_FALSE(db.remove("alice"));
}

TEST_CASE("database snapshots round-trip through JSON") {
  sui::PendingDatabase db;
  sui::lra_register(db, "alice", "pw1");
  sui::lra_register(db, "bob", "pw2");
  const auto j = sui::db_to_json(db);
  CHECK(j.dump() == R"([{"id":"alice","pwd":"pw1"},{"id":"bob","pwd":"pw2"}])");
  CHECK(sui::db_from_json(j) == db);
  CHECK_THROWS_AS(sui::db_from_json(nlohmann::ordered_json::object()), EncodingError);
}

TEST_CASE("blinded requests") {
  const Group g = Group::transparent(101);
  const G1Element h_id = g.hash_to_g1(utf8_bytes("alice"));
  const G1Element h_pwd = g.hash_to_g1(utf8_bytes("pw1"));

  const auto unit = sui::request_with_blinding("alice", "pw1", g.scalar(1), g);
  CHECK(unit.Q == h_id);
  CHECK(unit.T == h_pwd);

  const auto three = sui::request_with_blinding("alice", "pw1", g.scalar(3), g);
  CHECK(three.Q == g.scalar(3) * h_id);
  CHECK(three.T == g.scalar(34) * h_pwd);  // 3^-1 mod 101

  CHECK_THROWS_AS(sui::request_with_blinding("alice", "pw1", g.scalar(0), g), DomainError);

  SeededRng rng(5);
  for (int round = 0; round < 100; ++round) {
    auto [r, req] = sui::user_request("alice", "pw1", g, rng);
    CHECK_FALSE(r.is_zero());
    CHECK(pair(req.Q, req.T) == pair(h_id, h_pwd));
  }
}

TEST_CASE("kgc check and issue") {
  const Group g = Group::transparent(101);
  const auto params = fixed_params(g, 7);
  const Scalar s = g.scalar(7);

  sui::PendingDatabase db;
  sui::lra_register(db, "alice", "pw1");

  const auto req = sui::request_with_blinding("alice", "pw1", g.scalar(3), g);
  std::vector<sui::ScanRecord> scan;
  const auto issued = sui::kgc_check_and_issue(req, db, s, params, &scan);
  CHECK(issued.matched_id == "alice");
  CHECK(scan.size() == 1);
  CHECK(scan[0].matched);

  // S = s*Q = 7 * (3 * u) with u the identity point's bookkeeping value
  const auto u = dlog(g.hash_to_g1(utf8_bytes("alice")));
  CHECK(dlog(issued.S) == oracle::mulmod(oracle::mulmod(3, u, 101), 7, 101));

  // tuple removed: the same request now fails
  CHECK(db.empty());
  CHECK_THROWS_AS(sui::kgc_check_and_issue(req, db, s, params), AuthenticationFailure);
}

TEST_CASE("kgc scan runs in insertion order") {
  const Group g = Group::transparent(101);
  const auto params = fixed_params(g, 7);
  sui::PendingDatabase db;
  sui::lra_register(db, "alice", "pw1");
  sui::lra_register(db, "bob", "pw2");
  sui::lra_register(db, "carol", "pw3");

  const auto req = sui::request_with_blinding("carol", "pw3", g.scalar(5), g);
  std::vector<sui::ScanRecord> scan;
  const auto issued = sui::kgc_check_and_issue(req, db, g.scalar(7), params, &scan);
  CHECK(issued.matched_id == "carol");
  REQUIRE(scan.size() == 3);
  CHECK(scan[0].id == "alice");
  CHECK_FALSE(scan[0].matched);
  CHECK(scan[1].id == "bob");
  CHECK_FALSE(scan[1].matched);
  CHECK(scan[2].matched);
  CHECK(db.size() == 2);
}

TEST_CASE("kgc rejects unregistered requests") {
  const Group g = Group::transparent(101);
  const auto params = fixed_params(g, 7);
  sui::PendingDatabase db;
  sui::lra_register(db, "alice", "pw1");
  const auto req = sui::request_with_blinding("mallory", "pwX", g.scalar(3), g);
  CHECK_THROWS_AS(sui::kgc_check_and_issue(req, db, g.scalar(7), params), AuthenticationFailure);
  CHECK(db.size() == 1);
}

TEST_CASE("user finalize unblinds s*H(id)") {
  const Group g = Group::transparent(101);
  const auto params = fixed_params(g, 7);
  const G1Element h_id = g.hash_to_g1(utf8_bytes("alice"));

  const auto req = sui::request_with_blinding("alice", "pw1", g.scalar(3), g);
  const G1Element blinded = g.scalar(7) * req.Q;
  const G1Element key = sui::user_finalize(blinded, req, g.scalar(3), params);
  CHECK(key == g.scalar(7) * h_id);
  // 34 * 21 = 714 = 7 mod 101
  CHECK(dlog(key) == oracle::mulmod(oracle::invmod(3, 101), dlog(blinded), 101));

  const auto unit = sui::request_with_blinding("alice", "pw1", g.scalar(1), g);
  CHECK(sui::user_finalize(g.scalar(7) * unit.Q, unit, g.scalar(1), params) ==
        g.scalar(7) * h_id);

  CHECK_THROWS_AS(sui::user_finalize(blinded + g.generator(), req, g.scalar(3), params),
                  BlindReplyInvalid);
  CHECK_THROWS_AS(sui::user_finalize(blinded, req, g.scalar(0), params), DomainError);
}

TEST_CASE("honest completeness across seeds") {
  for (const Group& g : {Group::transparent(11), Group::transparent(101), Group::standard()}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SeededRng rng(seed);
      auto [params, s] = sui::setup(g, rng);
      sui::PendingDatabase db;
      sui::lra_register(db, "alice", "pw1");

      auto [r, req] = sui::user_request("alice", "pw1", g, rng);
      const auto issued = sui::kgc_check_and_issue(req, db, s, params);
      const G1Element key = sui::user_finalize(issued.S, req, r, params);

      const G1Element h_id = g.hash_to_g1(utf8_bytes("alice"));
      CHECK(key == s * h_id);
      CHECK(pair(key, g.generator()) == pair(h_id, params.p_pkg));
    }
  }
}

TEST_CASE("kgc check is scale-blind") {
  const Group g = Group::transparent(101);
  const G1Element h_id = g.hash_to_g1(utf8_bytes("alice"));
  const G1Element h_pwd = g.hash_to_g1(utf8_bytes("pw1"));
  const auto req = sui::request_with_blinding("alice", "pw1", g.scalar(3), g);

  for (std::int64_t r_star = 1; r_star < 101; ++r_star) {
    const Scalar rs = g.scalar(r_star);
    const sui::Request scaled{rs * req.Q, rs.inv() * req.T};
    CHECK(sui::check_request(scaled, h_id, h_pwd));
  }
  // non-reciprocal scaling breaks the product and must fail
  const sui::Request broken{g.scalar(2) * req.Q, g.scalar(2) * req.T};
  CHECK_FALSE(sui::check_request(broken, h_id, h_pwd));
}

TEST_CASE("random non-matching requests are never issued") {
  const Group g = Group::transparent(101);
  const auto params = fixed_params(g, 7);
  sui::PendingDatabase db;
  sui::lra_register(db, "alice", "pw1");

  SeededRng rng(13);
  int rejected = 0;
  for (int round = 0; round < 500; ++round) {
    // random wire junk: two arbitrary nonzero points
    const sui::Request junk{g.random_scalar(rng, true) * g.generator(),
                            g.random_scalar(rng, true) * g.generator()};
    const G1Element h_id = g.hash_to_g1(utf8_bytes("alice"));
    const G1Element h_pwd = g.hash_to_g1(utf8_bytes("pw1"));
    if (!sui::check_request(junk, h_id, h_pwd)) {
      ++rejected;
      continue;
    }
    // a matching pair must genuinely satisfy the pairing product
    CHECK(dlog(junk.Q) * dlog(junk.T) % 101 == dlog(h_id) * dlog(h_pwd) % 101);
  }
  CHECK(rejected > 450);  // chance matches are ~1/101 per draw
}
