#include <doctest.h>

#include <random>
#include <set>

#include "clearmm/game.hpp"
#include "oracles.hpp"

using namespace clearmm;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_input;
}

GameParams full(int k, int n) { return {k, n, default_mode(ModeKind::full)}; }
GameParams perm(int n) { return {n, n, default_mode(ModeKind::permutation)}; }

}  // namespace

TEST_CASE("color feedback on the worked example") {
  CodeString answer = CodeString::parse("1,1,2,3,3");
  CodeString guess = CodeString::parse("1,1,1,2,3");
  CHECK(feedback_pi(guess, answer).to_string() == "GGBYG");
  CHECK(feedback_tau(guess, answer).to_string() == "++--+");
}

TEST_CASE("identical strings are all green, disjoint ones all black") {
  CHECK(feedback_pi(CodeString{3, 1, 2}, CodeString{3, 1, 2}).to_string() == "GGG");
  CHECK(feedback_pi(CodeString{1, 1, 2}, CodeString{3, 4, 4}).to_string() == "BBB");
  CHECK(feedback_pi(CodeString{1, 1, 2}, CodeString{3, 4, 4}).solved() == false);
}

TEST_CASE("yellow marks are consumed left to right") {
  // Only one spare 2 in the answer: the first 2 in the guess takes it.
  CHECK(feedback_pi(CodeString{2, 2, 1}, CodeString{1, 3, 2}).to_string() == "YBY");
  CHECK(feedback_pi(CodeString{2, 2, 2}, CodeString{1, 2, 3}).to_string() == "BGB");
}

TEST_CASE("color feedback matches the counting oracle exhaustively") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 4; ++k) {
      auto all = oracle::all_strings(k, n);
      for (const auto& x : all)
        for (const auto& y : all) {
          REQUIRE(feedback_pi(x, y).to_string() == oracle::feedback_pi(x, y));
          REQUIRE(feedback_tau(x, y).to_string() == oracle::feedback_tau(x, y));
        }
    }
}

TEST_CASE("color feedback invariants on random strings") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20000; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 9);
    const int n = 1 + static_cast<int>(rng() % 8);
    auto x = oracle::random_string(rng, k, n);
    auto y = oracle::random_string(rng, k, n);
    auto pi = feedback_pi(x, y);
    REQUIRE(pi.to_string() == oracle::feedback_pi(x, y));

    int greens = 0;
    for (int i = 0; i < n; ++i) greens += x[i] == y[i];
    CHECK(pi.count(Mark::G) == greens);

    // Greens plus yellows is the multiset intersection size.
    auto cx = code_counts(x, k);
    auto cy = code_counts(y, k);
    int common = 0;
    for (int v = 1; v <= k; ++v) common += std::min(cx[static_cast<Code>(v)], cy[static_cast<Code>(v)]);
    CHECK(pi.count(Mark::G) + pi.count(Mark::Y) == common);
    CHECK(tau_from_pi(pi) == feedback_tau(x, y));
  }
}

TEST_CASE("hit/miss from color feedback") {
  CHECK(tau_from_pi(FeedbackString::parse("GGBYG")).to_string() == "++--+");
  CHECK(tau_from_pi(FeedbackString::parse("BYB")).to_string() == "---");
}

TEST_CASE("color feedback recovered from hit/miss and the code counts") {
  CountVector w({2, 1, 2, 0, 0});
  auto pi = pi_from_tau(MatchString::parse("++--+"), w, CodeString::parse("1,1,1,2,3"));
  CHECK(pi.to_string() == "GGBYG");

  CHECK(pi_from_tau(MatchString::all_hit(3), CountVector({1, 1, 1}), CodeString{2, 3, 1})
            .to_string() == "GGG");

  // A hit on a code the answer does not contain cannot happen.
  CHECK(code_of([] {
          pi_from_tau(MatchString::parse("+--"), CountVector({0, 2, 1}), CodeString{1, 2, 3});
        }) == ErrorCode::inconsistent);
}

TEST_CASE("color feedback recovery agrees with direct computation") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 5; ++k) {
      auto all = oracle::all_strings(k, n);
      for (const auto& x : all)
        for (const auto& y : all)
          REQUIRE(pi_from_tau(feedback_tau(x, y), code_counts(y, k), x).to_string() ==
                  oracle::feedback_pi(x, y));
    }
}

TEST_CASE("both feedback routes match the oracle at every length") {
  // Lengths switch between counting methods; small alphabets force repeats.
  std::mt19937_64 rng(31);
  for (int n = 1; n <= kMaxPositions; ++n)
    for (int k : {1, 2, 3, 5, 17}) {
      for (int trial = 0; trial < 300; ++trial) {
        auto x = oracle::random_string(rng, k, n);
        auto y = oracle::random_string(rng, k, n);
        const auto expect = oracle::feedback_pi(x, y);
        REQUIRE(feedback_pi(x, y).to_string() == expect);
        REQUIRE(pi_from_tau(feedback_tau(x, y), code_counts(y, k), x).to_string() == expect);
      }
      if (k == 1) continue;
      // One hit too many on code 1 is inconsistent at any length.
      std::vector<Code> ones(static_cast<std::size_t>(n), 1);
      std::vector<int> counts(static_cast<std::size_t>(k), 0);
      counts[0] = n - 1;
      counts[1] = 1;
      CHECK(code_of([&] {
              pi_from_tau(MatchString::all_hit(n), CountVector(counts), CodeString(ones));
            }) == ErrorCode::inconsistent);
    }
}

TEST_CASE("code counts") {
  CHECK(code_counts(CodeString::parse("1,1,2,3,3"), 5) == CountVector({2, 1, 2, 0, 0}));
  CHECK(code_counts(CodeString{2, 2}, 2) == CountVector({0, 2}));
  CHECK(code_counts(CodeString{2, 2}, 2).total() == 2);
}

TEST_CASE("text encodings round-trip and reject garbage") {
  CHECK(CodeString::parse("1,1,2,3,3").to_string() == "1,1,2,3,3");
  CHECK(CodeString::parse(" 10, 2 ,255").to_string() == "10,2,255");
  CHECK(FeedbackString::parse("GYB").to_string() == "GYB");
  CHECK(MatchString::parse("+-").to_string() == "+-");
  for (const char* bad : {"", "1,,2", "0,1", "1,256", "a", "1,2,"})
    CHECK_MESSAGE(code_of([&] { CodeString::parse(bad); }) == ErrorCode::invalid_input, bad);
  CHECK(code_of([] { FeedbackString::parse("GGX"); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { MatchString::parse("+-x"); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { validate_code_string(CodeString{1, 4}, 3, 2); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { validate_code_string(CodeString{1, 2}, 3, 3); }) == ErrorCode::invalid_input);
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(full(3, 5).validate());
  CHECK_NOTHROW(perm(4).validate());
  CHECK(code_of([] { GameParams{0, 2, {}}.validate(); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { GameParams{3, 0, {}}.validate(); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { GameParams{3, 2, default_mode(ModeKind::permutation)}.validate(); }) ==
        ErrorCode::invalid_input);
  CHECK(code_of([] { GameParams{3, 2, {ModeKind::full, FeedbackKind::tau}}.validate(); }) ==
        ErrorCode::invalid_input);
}

TEST_CASE("full answer sets") {
  CHECK(full_answer_set(3, 2, ModeKind::full).size() == 9);
  CHECK(full_answer_set(4, 4, ModeKind::permutation).size() == 24);
  CHECK(full_answer_set(1, 5, ModeKind::full).size() == 1);
  for (int k = 1; k <= 4; ++k)
    for (int n = 1; n <= 4; ++n) {
      auto set = full_answer_set(k, n, ModeKind::full);
      auto expect = oracle::all_strings(k, n);
      REQUIRE(set.size() == expect.size());
      CHECK(std::equal(expect.begin(), expect.end(), set.members().begin()));
    }
  auto p = full_answer_set(4, 4, ModeKind::permutation);
  auto expect = oracle::all_permutations(4);
  CHECK(std::equal(expect.begin(), expect.end(), p.members().begin()));
  CHECK(code_of([] { full_answer_set(3, 4, ModeKind::permutation); }) == ErrorCode::invalid_input);
}

TEST_CASE("filtering the worked three-position game") {
  auto p0 = full_answer_set(3, 3, ModeKind::full);
  auto p1 = filter_answer_set(p0, CodeString{1, 1, 1}, FeedbackString::parse("BGB"));
  std::vector<CodeString> e1 = {{2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {3, 1, 3}};
  CHECK(std::vector<CodeString>(p1.members().begin(), p1.members().end()) == e1);

  auto p2 = filter_answer_set(p1, CodeString{2, 1, 2}, FeedbackString::parse("GGB"));
  CHECK(p2.size() == 1);
  CHECK(p2.members()[0] == CodeString{2, 1, 3});

  // Contradictory feedback empties the set.
  CHECK(filter_answer_set(p2, CodeString{2, 1, 3}, FeedbackString::parse("BBB")).empty());
}

TEST_CASE("filtering is sound, shrinking and idempotent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 4);
    const int n = 1 + static_cast<int>(rng() % 4);
    auto params = full(k, n);
    auto set = full_answer_set(params);
    auto answer = oracle::random_string(rng, k, n);
    for (int round = 0; round < 4; ++round) {
      auto guess = oracle::random_string(rng, k, n);
      auto fb = feedback(params, guess, answer);
      auto next = filter_answer_set(set, guess, fb);
      CHECK(next.contains(answer));
      CHECK(next.size() <= set.size());
      CHECK(filter_answer_set(next, guess, fb) == next);
      for (const auto& y : set.members())
        CHECK(next.contains(y) == (oracle::feedback_pi(guess, y) == to_string(fb)));
      set = next;
    }
  }
}

TEST_CASE("replay reproduces incremental filtering") {
  auto params = full(3, 3);
  History h = {{CodeString{1, 1, 1}, FeedbackString::parse("BGB")},
               {CodeString{2, 1, 2}, FeedbackString::parse("GGB")}};
  CHECK(replay(params, h).size() == 1);
  History bad = {{CodeString{1, 1}, FeedbackString::parse("BG")}};
  CHECK(code_of([&] { replay(params, bad); }) == ErrorCode::invalid_input);
  History wrong_kind = {{CodeString{1, 1, 1}, MatchString::parse("-+-")}};
  CHECK(code_of([&] { replay(params, wrong_kind); }) == ErrorCode::invalid_input);
}

TEST_CASE("answer sets sort and deduplicate their members") {
  AnswerSet s(full(3, 2), {CodeString{2, 1}, CodeString{1, 3}, CodeString{2, 1}});
  REQUIRE(s.size() == 2);
  CHECK(s.members()[0] == CodeString{1, 3});
  CHECK(code_of([] { AnswerSet(full(3, 2), {CodeString{4, 1}}); }) == ErrorCode::invalid_input);
}
