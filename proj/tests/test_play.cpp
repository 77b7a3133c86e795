#include <doctest.h>

#include <sstream>

#include "permind/play.hpp"
#include "support.hpp"

using namespace permind;
using permind::testing::code;

TEST_CASE("play against a scripted human, n = k = 3, secret 2 3 1") {
  // Answers recorded from the static-codemaker replay of the same secret.
  std::istringstream in("0\n0\n1\n3\n");
  std::ostringstream out;
  const PlayOutcome res = play(in, out, GameConfig::make(3, 3));
  CHECK_FALSE(res.error);
  CHECK(out.str() ==
        "GUESS 1: 1 2 3\n"
        "GUESS 2: 3 1 2\n"
        "GUESS 3: 2 1 3\n"
        "GUESS 4: 2 3 1\n"
        "SECRET: 2 3 1\n");
  CHECK(res.transcript.solved);
  CHECK(res.transcript.queries == 4);
}

TEST_CASE("play reports contradictions with the first unsatisfiable prefix") {
  // 3 then 0 on distinct permutations of 3: no secret fits after answer 2.
  std::istringstream in("1\n1\n0\n0\n0\n");
  std::ostringstream out;
  const PlayOutcome res = play(in, out, GameConfig::make(3, 3));
  REQUIRE(res.error);
  CHECK(*res.error == ErrorCode::InconsistentFeedback);
  const std::string text = out.str();
  CHECK(text.find("ERROR: InconsistentFeedback") != std::string::npos);
  CHECK(text.find("no secret satisfies answers 1..") != std::string::npos);
  CHECK(first_contradiction(res.transcript, 1000).has_value());
}

TEST_CASE("play surfaces stream errors as ERROR lines") {
  std::istringstream in("0\n");
  std::ostringstream out;
  const PlayOutcome res = play(in, out, GameConfig::make(3, 3));
  REQUIRE(res.error);
  CHECK(*res.error == ErrorCode::StreamClosed);
  CHECK(out.str().rfind("ERROR: StreamClosed") != std::string::npos);
}
