#pragma once

// Executable checks of the game's proven properties and computed values. Each
// check returns one line; report() renders them with a final PASS/FAIL line.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "clearmm/solver.hpp"

namespace clearmm {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  std::chrono::duration<double> elapsed{};

  // "<PASS|FAIL> <name>: <detail> (<seconds>s)"
  std::string to_string() const;
};

// Memoizes full-game values across checks within one run.
class ValueTable {
 public:
  explicit ValueTable(SolverOptions options = {}) : options_(options) {}

  // Throws ResourceError when the solver budget runs out.
  const SolveResult& F(int k, int n);
  const std::map<std::pair<int, int>, SolveResult>& values() const noexcept { return values_; }

 private:
  SolverOptions options_;
  std::map<std::pair<int, int>, SolveResult> values_;
};

CheckResult check_feedback_examples();
// Every (guess, answer) pair of every (k, n) with k^n <= max_universe and
// k <= kMaxCodes: converting hit/miss feedback back to G/Y/B reproduces it.
CheckResult check_pi_from_tau(std::uint64_t max_universe = 4096);
CheckResult check_answer_set_example();

// Binary matrices with nonzero permanent and at least two ones per column have
// permanent >= 2: exhaustive up to exhaustive_n, then random n = 5, 6 samples.
CheckResult check_two_ones_permanent(int exhaustive_n, int random_samples, std::uint64_t seed);

// Random-guess games against the greedy codemaker; the tracking-matrix
// permanent equals the answer-set size after every round.
CheckResult check_greedy_permanent(const std::vector<int>& ks, int games, std::uint64_t seed);

// Against the greedy codemaker in the permutation game with k <= max_k: every
// strategy, random guess sequences, and (k <= exhaustive_max_k) every guess
// sequence leave more than one answer after k - 2 rounds, and no game ends
// before round k.
CheckResult check_greedy_lower_bound(int max_k, int random_sequences, int exhaustive_max_k,
                                     std::uint64_t seed);

// F(k, n) == k for every k <= n with k^n <= max_universe (and n <= max_n when
// max_n > 0).
CheckResult check_small_alphabet(ValueTable& table, std::uint64_t max_universe, int max_n);
// F(cn, n) == c + n - 1 on the listed instances.
CheckResult check_multiple_alphabet(ValueTable& table,
                                    const std::vector<std::pair<int, int>>& instances);
// c + n - 1 <= F(cn + b, n) <= c + n on the listed instances.
CheckResult check_remainder_alphabet(ValueTable& table,
                                     const std::vector<std::pair<int, int>>& instances);

enum class TableTier { fast, slow, extended };
TableTier parse_table_tier(std::string_view text);

struct TableEntry {
  int k = 0;
  int n = 0;
  int expected = 0;
};

// Published values for the tier: fast (3,2), (4,3), (5,3); slow adds the n = 4
// row; extended adds the n = 5 row.
std::vector<TableEntry> table_entries(TableTier tier);
// One result per entry, each with its own time limit (0: none).
std::vector<CheckResult> check_table(ValueTable& table, TableTier tier,
                                     std::chrono::seconds per_entry_limit = std::chrono::seconds{0});

// F(k, n) <= F(k + 1, n) along every row. Rows listed in `rows` are first
// filled from k = 1 to max_k.
CheckResult check_monotonicity(ValueTable& table, const std::map<int, int>& rows);
// F(2n - 1, n) == n for each n in the table with that entry computed.
CheckResult check_conjecture(const ValueTable& table);

// Exhaustive honest-answer simulations: constant strategy on the small-alphabet
// instances, block scan on the listed multiples, exclusion strategy for k <= 5.
CheckResult check_strategy_guarantees(std::uint64_t max_universe,
                                      const std::vector<std::pair<int, int>>& block_instances,
                                      int exclusion_max_k, const SolverOptions& solver = {});

// On every full game with k^n <= max_universe: values agree with memo
// canonicalization off and with every symmetry reduction off; restricting
// guesses to the answer set never does better and is strictly worse somewhere.
CheckResult check_solver_toggles(std::uint64_t max_universe);

enum class VerifyScope {
  rules,
  lemma1,
  lemma2,
  props,
  theorem1,
  theorem2,
  theorem3,
  table,
  strategies,
  toggles,
  all,
};

VerifyScope parse_verify_scope(std::string_view text);
const char* to_string(VerifyScope scope) noexcept;

struct VerifyOptions {
  int max_n = 0;                // theorem1: largest n (0: every k^n <= 4096)
  std::vector<int> ks;          // lemma2 / props: values of k (empty: scope default)
  int trials = 0;               // games or samples (0: scope default)
  TableTier tier = TableTier::fast;
  std::uint64_t seed = 20240501;
  SolverOptions solver;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const noexcept;
  // One line per check, then "PASS" or "FAIL".
  std::vector<std::string> lines() const;
};

using CheckSink = std::function<void(const CheckResult&)>;

// Runs the checks of a scope; `sink` sees each result as soon as it is ready.
VerifyReport verify(VerifyScope scope, const VerifyOptions& options = {},
                    const CheckSink& sink = {});

}  // namespace clearmm
