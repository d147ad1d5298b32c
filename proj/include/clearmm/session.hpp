#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clearmm/game.hpp"
#include "clearmm/solver.hpp"

namespace clearmm {

enum class OpponentKind { fixed, greedy, max_class };
enum class SessionStatus { live, solved, abandoned };

const char* to_string(OpponentKind kind) noexcept;
OpponentKind parse_opponent_kind(std::string_view text);
const char* to_string(SessionStatus status) noexcept;

struct SessionConfig {
  GameParams params;
  OpponentKind opponent = OpponentKind::fixed;
  std::optional<CodeString> answer;  // fixed opponent; drawn from seed if absent
  std::optional<std::uint64_t> seed;
};

struct HintPolicy {
  std::uint64_t max_universe = 4096;  // k^n above this: no hints
  std::uint64_t node_cap = 200000;
  std::chrono::milliseconds time_cap{3000};
};

struct Hint {
  bool available = false;
  std::optional<CodeString> guess;
  int worst_case = 0;
  std::string reason;
};

struct RoundResult {
  AnyFeedback feedback;
  int round = 0;
  std::size_t set_size = 0;
  bool solved = false;
};

// One game between a human (or scripted) codebreaker and a codemaker.
class Session {
 public:
  Session(std::string id, SessionConfig config);
  ~Session();
  Session(Session&&) noexcept;
  Session& operator=(Session&&) noexcept;

  // Throws invalid_state once solved, invalid_input for a malformed guess.
  RoundResult guess(CodeString guess);
  Hint hint(const HintPolicy& policy = {});
  void abandon() noexcept;

  const std::string& id() const noexcept { return id_; }
  const GameParams& params() const noexcept { return config_.params; }
  OpponentKind opponent() const noexcept { return config_.opponent; }
  std::uint64_t seed() const noexcept { return seed_; }
  SessionStatus status() const noexcept { return status_; }
  const History& history() const noexcept { return history_; }
  const std::vector<std::size_t>& set_sizes() const noexcept { return set_sizes_; }
  std::size_t set_size() const noexcept { return current_.size(); }
  int round() const noexcept { return static_cast<int>(history_.size()); }
  const AnswerSet& current() const noexcept { return current_; }
  // Known only to the server; disclosed by callers once the game is solved.
  const std::optional<CodeString>& answer() const noexcept { return answer_; }

  // Rebuilds a session by replaying its guesses.
  static Session replay(std::string id, SessionConfig config,
                        const std::vector<CodeString>& guesses);

 private:
  std::string id_;
  SessionConfig config_;
  std::uint64_t seed_ = 0;
  std::optional<CodeString> answer_;
  AnswerSet current_;
  History history_;
  std::vector<std::size_t> set_sizes_;
  SessionStatus status_ = SessionStatus::live;
  std::unique_ptr<Solver> solver_;
};

}  // namespace clearmm
