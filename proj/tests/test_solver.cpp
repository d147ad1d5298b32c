#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "clearmm/solver.hpp"
#include "oracles.hpp"

using namespace clearmm;

namespace {

GameParams perm(int n) { return {n, n, default_mode(ModeKind::permutation)}; }
GameParams full(int k, int n) { return {k, n, default_mode(ModeKind::full)}; }

std::vector<CodeString> random_subset(std::mt19937_64& rng, const std::vector<CodeString>& all) {
  std::vector<CodeString> out;
  const unsigned keep = 1 + rng() % 4;  // density keep/5
  for (const auto& y : all)
    if (rng() % 5 < keep) out.push_back(y);
  if (out.empty()) out.push_back(all[rng() % all.size()]);
  return out;
}

CodeString relabel(const CodeString& y, const std::vector<Code>& sigma) {
  std::vector<Code> v;
  for (std::size_t i = 0; i < y.size(); ++i) v.push_back(sigma[y[i] - 1]);
  return CodeString(std::move(v));
}

}  // namespace

TEST_CASE("minimax cost of small sets") {
  Solver solver(full(3, 3));
  CHECK(solver.minimax_cost(AnswerSet(full(3, 3), {CodeString{2, 1, 3}})) == 1);
  CHECK(solver.minimax_cost(AnswerSet(full(3, 3), {CodeString{2, 1, 3}, CodeString{2, 1, 1}})) == 2);
  CHECK(solver.minimax_cost(full_answer_set(full(3, 3))) == 3);
  CHECK_THROWS_AS(solver.minimax_cost(AnswerSet(full(3, 3), {})), Error);
}

TEST_CASE("solver agrees with exhaustive minimax on whole games") {
  for (auto [k, n] : {std::pair{2, 2}, {3, 2}, {2, 3}, {4, 2}, {3, 3}, {2, 4}}) {
    oracle::Minimax naive(oracle::all_strings(k, n), true);
    CAPTURE(k);
    CAPTURE(n);
    CHECK(solve_F(k, n).value == naive.cost(oracle::all_strings(k, n)));
  }
  for (int k = 1; k <= 4; ++k) {
    oracle::Minimax naive(oracle::all_strings(k, k), false);
    CHECK(solve_G(k).value == naive.cost(oracle::all_permutations(k)));
  }
}

TEST_CASE("solver agrees with exhaustive minimax on random answer sets") {
  std::mt19937_64 rng(23);
  for (auto [k, n] : {std::pair{3, 2}, {4, 2}, {3, 3}, {2, 4}}) {
    auto all = oracle::all_strings(k, n);
    oracle::Minimax naive(all, true);
    Solver solver(full(k, n));
    SolverOptions plain;
    plain.canonicalize = plain.code_symmetry = plain.root_symmetry = false;
    Solver unpruned(full(k, n), plain);
    for (int trial = 0; trial < 60; ++trial) {
      auto subset = random_subset(rng, all);
      AnswerSet set(full(k, n), subset);
      const int expect = naive.cost(subset);
      REQUIRE(solver.minimax_cost(set) == expect);
      REQUIRE(unpruned.minimax_cost(set) == expect);

      // The move it recommends really achieves the cost.
      auto move = solver.best_move(set);
      CHECK(move.worst_case == expect);
      std::map<std::string, std::vector<CodeString>> classes;
      for (const auto& y : subset) classes[oracle::feedback_pi(move.guess, y)].push_back(y);
      int worst = 0;
      for (const auto& [fb, members] : classes) {
        const bool solved = members.size() == 1 && members[0] == move.guess;
        worst = std::max(worst, solved ? 1 : 1 + naive.cost(members));
      }
      CHECK(worst == expect);
    }
  }
}

TEST_CASE("published and derived game values") {
  CHECK(solve_F(4, 3).value == 3);
  CHECK(solve_F(5, 3).value == 4);
  CHECK(solve_F(4, 2).value == 3);
  CHECK(solve_F(3, 2).value == 3);
  for (int n = 1; n <= 6; ++n) CHECK(solve_F(1, n).value == 1);
  CHECK(solve_G(1).value == 1);
  CHECK(solve_G(3).value == 3);
  CHECK(solve_G(4).value == 4);
}

TEST_CASE("solve results carry bounds and a record line") {
  auto r = solve_F(4, 3);
  CHECK(r.within_bounds);
  CHECK(r.bounds == Bounds{3, 4});
  REQUIRE(r.first_guess);
  CHECK(r.record().rfind("k=4 n=3 mode=full feedback=pi value=3 lower=3 upper=4 within_bounds=true", 0) == 0);
  CHECK(r.record().find("first_guess=") != std::string::npos);

  auto again = solve_F(4, 3);
  CHECK(again.first_guess == r.first_guess);
  CHECK(again.nodes_expanded == r.nodes_expanded);
}

TEST_CASE("proven bounds") {
  CHECK(theorem_bounds(3, 5) == Bounds{3, 3});
  CHECK(theorem_bounds(6, 3) == Bounds{4, 4});
  // k = 5 = 1 * 3 + 2: c + n - 1 = 3 and c + n = 4.
  CHECK(theorem_bounds(5, 3) == Bounds{3, 4});
  CHECK(theorem_bounds(1, 1) == Bounds{1, 1});
  CHECK(permutation_bounds(5) == Bounds{5, 5});
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= 6; ++k) {
      if (std::pow(k, n) > 300) continue;
      CHECK(theorem_bounds(k, n).contains(solve_F(k, n).value));
    }
}

TEST_CASE("budgets stop the search with the bounds established so far") {
  SolverOptions capped;
  capped.node_cap = 50;
  try {
    solve_F(6, 4, capped);
    FAIL("expected the node cap to trigger");
  } catch (const ResourceError& e) {
    CHECK(e.code() == ErrorCode::resource_exhausted);
    CHECK(e.known().lower >= 1);
    CHECK(e.known().lower <= 4);
    CHECK(e.known().upper >= 4);
  }
}

TEST_CASE("canonical keys identify relabeled sets") {
  auto a = canonicalize(AnswerSet(full(3, 2), {CodeString{2, 2}, CodeString{2, 3}}));
  auto b = canonicalize(AnswerSet(full(3, 2), {CodeString{1, 1}, CodeString{1, 3}}));
  CHECK(a.exact);
  CHECK(a == b);
  auto c = canonicalize(AnswerSet(full(3, 2), {CodeString{1, 1}, CodeString{1, 3}, CodeString{3, 3}}));
  CHECK_FALSE(a == c);
  // Same size, not relabelings of each other: one shares a column, one does not.
  auto d = canonicalize(AnswerSet(full(3, 2), {CodeString{1, 2}, CodeString{2, 1}}));
  CHECK_FALSE(a == d);
}

TEST_CASE("canonical keys are invariant under random relabeling") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 4);
    auto subset = random_subset(rng, oracle::all_strings(k, n));
    std::vector<Code> sigma(static_cast<std::size_t>(k));
    std::iota(sigma.begin(), sigma.end(), Code{1});
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::vector<CodeString> moved;
    for (const auto& y : subset) moved.push_back(relabel(y, sigma));

    auto ka = canonicalize(AnswerSet(full(k, n), subset));
    auto kb = canonicalize(AnswerSet(full(k, n), moved));
    REQUIRE(ka.exact);
    REQUIRE(kb.exact);
    REQUIRE(ka == kb);
  }
}

TEST_CASE("search toggles do not change values") {
  SolverOptions no_canon;
  no_canon.canonicalize = false;
  SolverOptions plain;
  plain.canonicalize = plain.code_symmetry = plain.root_symmetry = false;
  SolverOptions members;
  members.members_only = true;
  for (auto [k, n] : {std::pair{2, 3}, {3, 3}, {4, 2}, {5, 2}, {4, 3}}) {
    const int base = solve_F(k, n).value;
    CHECK(solve_F(k, n, no_canon).value == base);
    CHECK(solve_F(k, n, plain).value == base);
    CHECK(solve_F(k, n, members).value >= base);
  }
  // Guessing only candidates can cost rounds.
  CHECK(solve_F(4, 2, members).value == 4);
  CHECK(solve_F(4, 2).value == 3);
}

TEST_CASE("solver rejects invalid parameters") {
  CHECK_THROWS_AS(solve_F(0, 3), Error);
  CHECK_THROWS_AS(Solver(GameParams{3, 2, default_mode(ModeKind::permutation)}), Error);
  Solver s(perm(3));
  CHECK(s.minimax_cost(full_answer_set(perm(3))) == 3);
}
