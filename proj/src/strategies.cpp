#include "clearmm/strategies.hpp"

#include <algorithm>

#include "clearmm/adversary.hpp"

namespace clearmm {

const char* to_string(StrategyKind kind) noexcept {
  switch (kind) {
    case StrategyKind::constant: return "constant";
    case StrategyKind::block_scan: return "block_scan";
    case StrategyKind::lemma3: return "lemma3";
    case StrategyKind::optimal: return "optimal";
  }
  return "unknown";
}

StrategyKind parse_strategy_kind(std::string_view text) {
  if (text == "constant") return StrategyKind::constant;
  if (text == "block_scan" || text == "block-scan") return StrategyKind::block_scan;
  if (text == "lemma3") return StrategyKind::lemma3;
  if (text == "optimal") return StrategyKind::optimal;
  throw Error(ErrorCode::invalid_input, "unknown strategy '" + std::string(text) + "'");
}

const char* to_string(Opponent opponent) noexcept {
  switch (opponent) {
    case Opponent::honest_exhaustive: return "honest";
    case Opponent::greedy: return "greedy";
    case Opponent::max_class: return "max-class";
  }
  return "unknown";
}

Opponent parse_opponent(std::string_view text) {
  if (text == "honest" || text == "honest-exhaustive") return Opponent::honest_exhaustive;
  if (text == "greedy") return Opponent::greedy;
  if (text == "max-class" || text == "max_class") return Opponent::max_class;
  throw Error(ErrorCode::invalid_input, "unknown opponent '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

StrategyState::StrategyState(GameParams params)
    : initial_(full_answer_set(params)), current_(initial_) {}

StrategyState::StrategyState(AnswerSet initial) : initial_(std::move(initial)), current_(initial_) {
  if (initial_.empty()) throw Error(ErrorCode::invalid_input, "empty initial answer set");
}

void StrategyState::apply(const CodeString& guess, const AnyFeedback& feedback) {
  AnswerSet next = filter_answer_set(current_, guess, feedback);
  history_.push_back({guess, feedback});
  current_ = std::move(next);
}

void StrategyState::apply(const CodeString& guess, const AnyFeedback& feedback, AnswerSet next) {
  history_.push_back({guess, feedback});
  current_ = std::move(next);
}

AnswerSet lemma3_initial_set(const GameParams& params, Exclusion excluded) {
  if (params.mode.kind != ModeKind::permutation)
    throw Error(ErrorCode::invalid_configuration, "the exclusion strategy needs the permutation game");
  if (excluded.position < 1 || excluded.position > params.n || excluded.code < 1 ||
      excluded.code > params.k)
    throw Error(ErrorCode::invalid_configuration, "exclusion outside the board");
  AnswerSet all = full_answer_set(params);
  std::vector<CodeString> kept;
  for (const auto& y : all.members())
    if (y[excluded.position - 1] != excluded.code) kept.push_back(y);
  return subset_of(all, std::move(kept));
}

namespace {

CodeString constant_string(int code, int n) {
  return CodeString(std::vector<Code>(static_cast<std::size_t>(n), static_cast<Code>(code)));
}

bool hit_at(const AnyFeedback& feedback, int position) {
  if (const auto* pi = std::get_if<FeedbackString>(&feedback)) return (*pi)[position] == Mark::G;
  return std::get<MatchString>(feedback)[position] == Match::hit;
}

}  // namespace

CodeString constant_next(const StrategyState& state) {
  const auto& set = state.current();
  if (set.size() == 1) return set.members().front();
  const int k = state.params().k;
  const int j = state.round();
  if (j < k) return constant_string(j, state.params().n);
  // Not reachable when the history came from constant guesses.
  return set.members().front();
}

CodeString block_scan_next(const StrategyState& state, Solver& solver) {
  const int k = state.params().k;
  const int n = state.params().n;
  if (k % n != 0)
    throw Error(ErrorCode::invalid_configuration, "block scan needs n to divide k");
  const auto& set = state.current();
  if (set.size() == 1) return set.members().front();
  const int r = state.round();
  if (r <= k / n) {
    std::vector<Code> block(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) block[p] = static_cast<Code>((r - 1) * n + p + 1);
    return CodeString(std::move(block));
  }
  return optimal_next(state, solver);
}

CodeString lemma3_next(const StrategyState& state, Exclusion excluded) {
  const GameParams& p = state.params();
  if (p.mode.kind != ModeKind::permutation)
    throw Error(ErrorCode::invalid_configuration, "the exclusion strategy needs the permutation game");
  if (excluded.position < 1 || excluded.position > p.n || excluded.code < 1 ||
      excluded.code > p.k)
    throw Error(ErrorCode::invalid_configuration, "exclusion outside the board");

  const auto& set = state.current();
  if (set.size() == 1) return set.members().front();

  const int k = p.k;
  const int n = p.n;
  const int pos0 = excluded.position - 1;
  auto position_of = [&](int relabeled) {
    if (relabeled == 0) return pos0;
    if (relabeled == pos0) return 0;
    return relabeled;
  };
  auto code_of = [&](int relabeled) {
    if (relabeled == 1) return excluded.code;
    if (relabeled == excluded.code) return 1;
    return relabeled;
  };

  // First round whose feedback hit the excluded position, if any.
  int hit_round = 0;
  for (std::size_t i = 0; i < state.history().size(); ++i) {
    if (hit_at(state.history()[i].feedback, pos0)) {
      hit_round = static_cast<int>(i) + 1;
      break;
    }
  }

  const int r = state.round();
  if (r + 1 > k) return set.members().front();
  std::vector<int> relabeled(static_cast<std::size_t>(n), hit_round ? r + 1 : r);
  if (!hit_round) relabeled[0] = r + 1;

  std::vector<Code> guess(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) guess[position_of(q)] = static_cast<Code>(code_of(relabeled[q]));
  return CodeString(std::move(guess));
}

CodeString optimal_next(const StrategyState& state, Solver& solver) {
  const auto& set = state.current();
  if (set.size() == 1) return set.members().front();
  return solver.best_move(set).guess;
}

// ---------------------------------------------------------------------------

namespace {

class ConstantStrategy final : public Strategy {
 public:
  StrategyKind kind() const noexcept override { return StrategyKind::constant; }
  CodeString next_guess(const StrategyState& state) override { return constant_next(state); }
};

class BlockScanStrategy final : public Strategy {
 public:
  BlockScanStrategy(const GameParams& params, const SolverOptions& options)
      : solver_(params, options) {}
  StrategyKind kind() const noexcept override { return StrategyKind::block_scan; }
  CodeString next_guess(const StrategyState& state) override {
    return block_scan_next(state, solver_);
  }

 private:
  Solver solver_;
};

class Lemma3Strategy final : public Strategy {
 public:
  explicit Lemma3Strategy(Exclusion excluded) : excluded_(excluded) {}
  StrategyKind kind() const noexcept override { return StrategyKind::lemma3; }
  CodeString next_guess(const StrategyState& state) override {
    return lemma3_next(state, excluded_);
  }

 private:
  Exclusion excluded_;
};

class OptimalStrategy final : public Strategy {
 public:
  OptimalStrategy(const GameParams& params, const SolverOptions& options)
      : solver_(params, options) {}
  StrategyKind kind() const noexcept override { return StrategyKind::optimal; }
  CodeString next_guess(const StrategyState& state) override {
    return optimal_next(state, solver_);
  }

 private:
  Solver solver_;
};

}  // namespace

std::unique_ptr<Strategy> make_strategy(const GameParams& params, const StrategyConfig& config) {
  params.validate();
  switch (config.kind) {
    case StrategyKind::constant:
      return std::make_unique<ConstantStrategy>();
    case StrategyKind::block_scan:
      if (params.k % params.n != 0)
        throw Error(ErrorCode::invalid_configuration, "block scan needs n to divide k");
      return std::make_unique<BlockScanStrategy>(params, config.solver);
    case StrategyKind::lemma3: {
      if (!config.exclusion)
        throw Error(ErrorCode::invalid_configuration, "the exclusion strategy needs an exclusion");
      lemma3_initial_set(params, *config.exclusion);  // validates
      return std::make_unique<Lemma3Strategy>(*config.exclusion);
    }
    case StrategyKind::optimal:
      return std::make_unique<OptimalStrategy>(params, config.solver);
  }
  throw Error(ErrorCode::invalid_configuration, "unknown strategy");
}

int guaranteed_rounds(StrategyKind kind, int k, int n) {
  switch (kind) {
    case StrategyKind::constant: return k;
    case StrategyKind::block_scan: return k / n + n - 1;
    case StrategyKind::lemma3: return k - 1;
    case StrategyKind::optimal: return theorem_bounds(k, n).upper;
  }
  return k;
}

std::string TraceLine::to_string() const {
  return "round " + std::to_string(round) + ": guess " + guess.to_string() + " feedback " +
         clearmm::to_string(feedback) + " |P_" + std::to_string(round) +
         "|=" + std::to_string(set_size);
}

std::vector<TraceLine> play_against(Strategy& strategy, StrategyState state,
                                    const CodeString& answer, int round_cap) {
  std::vector<TraceLine> trace;
  while (true) {
    if (state.round() > round_cap)
      throw Error(ErrorCode::invalid_state, "strategy did not finish within the round cap");
    CodeString guess = strategy.next_guess(state);
    AnyFeedback fb = feedback(state.params(), guess, answer);
    state.apply(guess, fb);
    trace.push_back({state.round() - 1, guess, fb, state.current().size()});
    if (is_solved(fb)) return trace;
  }
}

SimulationResult simulate_worst_case(const GameParams& params, Opponent opponent,
                                     const SimulationOptions& options) {
  params.validate();
  auto strategy = make_strategy(params, options.strategy);
  StrategyState start = options.strategy.kind == StrategyKind::lemma3
                            ? StrategyState(lemma3_initial_set(params, *options.strategy.exclusion))
                            : StrategyState(params);

  SimulationResult result;
  if (opponent == Opponent::honest_exhaustive) {
    for (const auto& answer : start.initial().members()) {
      auto trace = play_against(*strategy, start, answer, options.round_cap);
      ++result.games;
      if (static_cast<int>(trace.size()) > result.max_rounds) {
        result.max_rounds = static_cast<int>(trace.size());
        result.worst_answer = answer;
        result.trace = std::move(trace);
      }
    }
    return result;
  }

  if (opponent == Opponent::greedy && (params.mode.kind != ModeKind::permutation ||
                                       params.mode.feedback != FeedbackKind::tau))
    throw Error(ErrorCode::invalid_configuration,
                "the greedy codemaker needs the permutation game with hit/miss feedback");

  StrategyState state = start;
  while (true) {
    if (state.round() > options.round_cap)
      throw Error(ErrorCode::invalid_state, "strategy did not finish within the round cap");
    CodeString guess = strategy->next_guess(state);
    AnyFeedback fb;
    AnswerSet next;
    if (opponent == Opponent::greedy) {
      auto r = greedy_feedback(state.current(), guess);
      fb = std::move(r.feedback);
      next = std::move(r.next);
    } else {
      auto r = max_class_feedback(state.current(), guess);
      fb = std::move(r.feedback);
      next = std::move(r.next);
    }
    state.apply(guess, fb, std::move(next));
    result.trace.push_back({state.round() - 1, guess, fb, state.current().size()});
    if (is_solved(fb)) break;
  }
  result.games = 1;
  result.max_rounds = static_cast<int>(result.trace.size());
  return result;
}

}  // namespace clearmm
