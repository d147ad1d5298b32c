#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "clearmm/clearmm.h"

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the CLI through the shell; `input` is fed on stdin.
Run run(const std::string& args, const std::string& input = "") {
  std::string cmd;
  if (!input.empty()) cmd = "printf '" + input + "' | ";
  cmd += std::string(CLEARMM_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("cli feedback") {
  auto pi = run("feedback --answer 1,1,2,3,3 --guess 1,1,1,2,3");
  CHECK(pi.code == 0);
  CHECK(pi.out == "GGBYG\n");
  CHECK(run("feedback --answer 1,1,2,3,3 --guess 1,1,1,2,3 --kind tau").out == "++--+\n");
  CHECK(run("feedback --answer 1,1,2 --guess 1,1").code == 1);
  CHECK(run("feedback --answer 1,1,2").code == 1);
}

TEST_CASE("cli filter") {
  auto r = run("filter --k 3 --n 3 --round 1,2,3=GGB --round 1,2,2=GGB");
  CHECK(r.code == 0);
  CHECK(r.out == "|P|=1\n1,2,1\n");
  auto p = run("filter --k 3 --n 3 --mode permutation --round 1,2,3=---");
  CHECK(p.out == "|P|=2\n2,3,1\n3,1,2\n");
}

TEST_CASE("cli play with a fixed answer") {
  auto r = run("play --k 3 --n 3 --answer 1,2,1 --script -", "# opening\\n1,2,3\\n\\n1,2,2\\n1,2,1\\n");
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{
                           "|P_0|=27",
                           "round 1: guess 1,2,3 feedback GGB |P_1|=2",
                           "round 2: guess 1,2,2 feedback GGB |P_2|=1",
                           "round 3: guess 1,2,1 feedback GGG |P_3|=1",
                           "solved in 3 rounds",
                       });

  auto unsolved = run("play --k 3 --n 3 --answer 1,2,1 --script -", "1,2,3\\n");
  CHECK(unsolved.code == 4);
  CHECK(lines(unsolved.out).back() == "unsolved after 1 rounds");

  auto bad = run("play --k 3 --n 3 --answer 1,2,1 --script -", "1,2\\n");
  CHECK(bad.code == 1);
}

TEST_CASE("cli play against the greedy codemaker") {
  auto r = run("play --k 3 --n 3 --mode permutation --opponent greedy --script -", "1,2,3\\n");
  CHECK(lines(r.out)[1] == "round 1: guess 1,2,3 feedback --- |P_1|=2");

  // Two scripted rounds on four codes never narrow the set to one.
  for (const char* script : {"1,2,3,4\\n2,1,4,3\\n", "1,1,1,1\\n2,2,2,2\\n", "4,3,2,1\\n1,2,3,4\\n"}) {
    auto g = run("play --k 4 --n 4 --mode permutation --opponent greedy --script -", script);
    auto ls = lines(g.out);
    REQUIRE(ls.size() == 4);
    const auto size = std::stoul(ls[2].substr(ls[2].find("|P_2|=") + 6));
    CHECK(size > 1);
    CHECK(g.code == 4);
  }

  auto wrong = run("play --k 6 --n 4 --opponent greedy --script -", "1,2,3,4\\n");
  CHECK(wrong.code == 1);
}

TEST_CASE("cli and library transcripts agree") {
  const char* guesses[] = {"1,1,2,2", "3,4,1,1", "2,4,3,1"};
  auto r = run("play --k 4 --n 4 --answer 2,4,3,1 --script -", "1,1,2,2\\n3,4,1,1\\n2,4,3,1\\n");
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 5);

  cmm_game_config c{};
  c.k = 4;
  c.n = 4;
  c.mode = "full";
  c.opponent = "fixed";
  c.answer = "2,4,3,1";
  cmm_game* g = nullptr;
  REQUIRE(cmm_game_create(&c, &g) == CMM_OK);
  for (int i = 0; i < 3; ++i) {
    cmm_round_result rr;
    REQUIRE(cmm_game_guess(g, guesses[i], &rr) == CMM_OK);
    const std::string expect = "round " + std::to_string(rr.round) + ": guess " + guesses[i] +
                               " feedback " + rr.feedback + " |P_" + std::to_string(rr.round) +
                               "|=" + std::to_string(rr.set_size);
    CHECK(ls[static_cast<std::size_t>(i) + 1] == expect);
  }
  cmm_game_destroy(g);
}

TEST_CASE("cli solve and simulate") {
  auto r = run("solve --k 4 --n 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("value=3") != std::string::npos);
  CHECK(run("solve --k 3 --game G").out.find("value=3") != std::string::npos);
  CHECK(run("solve --k 9 --n 5 --node-cap 100").code == 2);
  CHECK(run("solve --k 4").code == 1);

  auto s = run("simulate --k 6 --n 3 --strategy block_scan");
  CHECK(s.code == 0);
  CHECK(lines(s.out).back().rfind("max_rounds=4 games=216", 0) == 0);
  CHECK(run("simulate --k 5 --n 3 --strategy block_scan").code == 1);
}

TEST_CASE("cli verify") {
  auto r = run("verify --scope theorem2");
  CHECK(r.code == 0);
  CHECK(lines(r.out).back() == "PASS");
  CHECK(run("verify --scope nonsense").code == 1);
}

TEST_CASE("cli usage errors") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("--help").code == 0);
}
