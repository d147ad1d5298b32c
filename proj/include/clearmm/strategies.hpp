#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clearmm/game.hpp"
#include "clearmm/solver.hpp"

namespace clearmm {

enum class StrategyKind { constant, block_scan, lemma3, optimal };

const char* to_string(StrategyKind kind) noexcept;
StrategyKind parse_strategy_kind(std::string_view text);

// Knowledge granted to the codebreaker: the code at `position` is not `code`.
// Both are 1-based.
struct Exclusion {
  int position = 1;
  int code = 1;
};

// The codebreaker's view of a game: parameters, history and the answers still
// consistent with both.
class StrategyState {
 public:
  explicit StrategyState(GameParams params);
  // Starts from `initial` instead of the full answer set.
  explicit StrategyState(AnswerSet initial);

  const GameParams& params() const noexcept { return current_.params(); }
  const History& history() const noexcept { return history_; }
  const AnswerSet& initial() const noexcept { return initial_; }
  const AnswerSet& current() const noexcept { return current_; }
  // 1-based index of the round about to be played.
  int round() const noexcept { return static_cast<int>(history_.size()) + 1; }

  // Records a round answered by a fixed answer (filters the set).
  void apply(const CodeString& guess, const AnyFeedback& feedback);
  // Records a round whose resulting set is already known (adversaries).
  void apply(const CodeString& guess, const AnyFeedback& feedback, AnswerSet next);

 private:
  AnswerSet initial_;
  AnswerSet current_;
  History history_;
};

// Answers consistent with an exclusion, in the permutation game.
AnswerSet lemma3_initial_set(const GameParams& params, Exclusion excluded);

// Round j < k guesses (j, ..., j); a singleton set is guessed directly.
CodeString constant_next(const StrategyState& state);

// Rounds 1..k/n guess consecutive blocks of n codes, then optimal play on what
// is left. Throws invalid_configuration unless n divides k.
CodeString block_scan_next(const StrategyState& state, Solver& solver);

// Permutation game with the exclusion known. Relabels so the exclusion reads
// "position 1 is not code 1", guesses (r+1, r, ..., r) in round r until
// position 1 is hit, then constant strings for the codes still unplaced.
CodeString lemma3_next(const StrategyState& state, Exclusion excluded);

// A guess minimizing the worst-case number of remaining rounds.
CodeString optimal_next(const StrategyState& state, Solver& solver);

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual StrategyKind kind() const noexcept = 0;
  virtual CodeString next_guess(const StrategyState& state) = 0;
};

struct StrategyConfig {
  StrategyKind kind = StrategyKind::constant;
  std::optional<Exclusion> exclusion;  // lemma3 only
  SolverOptions solver;                // block_scan and optimal
};

// Validates the configuration against params.
std::unique_ptr<Strategy> make_strategy(const GameParams& params, const StrategyConfig& config);

// Worst-case round count each strategy guarantees for (k, n).
int guaranteed_rounds(StrategyKind kind, int k, int n);

enum class Opponent { honest_exhaustive, greedy, max_class };

const char* to_string(Opponent opponent) noexcept;
Opponent parse_opponent(std::string_view text);

struct TraceLine {
  int round = 0;
  CodeString guess;
  AnyFeedback feedback;
  std::size_t set_size = 0;

  // "round r: guess <codes> feedback <marks> |P_r|=<count>"
  std::string to_string() const;
};

struct SimulationResult {
  int max_rounds = 0;
  std::size_t games = 0;
  std::optional<CodeString> worst_answer;  // honest-exhaustive only
  std::vector<TraceLine> trace;            // a game reaching max_rounds
};

struct SimulationOptions {
  StrategyConfig strategy;
  int round_cap = 64;  // a game running longer is an error
};

// honest_exhaustive plays one game per possible answer; adversaries play a
// single adaptive game.
SimulationResult simulate_worst_case(const GameParams& params, Opponent opponent,
                                     const SimulationOptions& options);

// Plays one game of `strategy` against a fixed answer.
std::vector<TraceLine> play_against(Strategy& strategy, StrategyState state,
                                    const CodeString& answer, int round_cap = 64);

}  // namespace clearmm
