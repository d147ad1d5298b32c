#include "clearmm/session.hpp"

#include <random>

#include "clearmm/adversary.hpp"

namespace clearmm {

const char* to_string(OpponentKind kind) noexcept {
  switch (kind) {
    case OpponentKind::fixed: return "fixed";
    case OpponentKind::greedy: return "greedy";
    case OpponentKind::max_class: return "max-class";
  }
  return "unknown";
}

OpponentKind parse_opponent_kind(std::string_view text) {
  if (text == "fixed") return OpponentKind::fixed;
  if (text == "greedy") return OpponentKind::greedy;
  if (text == "max-class" || text == "max_class") return OpponentKind::max_class;
  throw Error(ErrorCode::invalid_input, "unknown opponent '" + std::string(text) + "'");
}

const char* to_string(SessionStatus status) noexcept {
  switch (status) {
    case SessionStatus::live: return "live";
    case SessionStatus::solved: return "solved";
    case SessionStatus::abandoned: return "abandoned";
  }
  return "unknown";
}

Session::Session(std::string id, SessionConfig config)
    : id_(std::move(id)), config_(std::move(config)) {
  const GameParams& p = config_.params;
  p.validate();
  if (config_.opponent == OpponentKind::greedy &&
      (p.mode.kind != ModeKind::permutation || p.mode.feedback != FeedbackKind::tau))
    throw Error(ErrorCode::invalid_input,
                "the greedy codemaker requires permutation mode with hit/miss feedback");
  if (config_.answer && config_.opponent != OpponentKind::fixed)
    throw Error(ErrorCode::invalid_input, "only the fixed codemaker takes an answer");

  current_ = full_answer_set(p);
  seed_ = config_.seed ? *config_.seed : std::random_device{}();
  if (config_.opponent == OpponentKind::fixed) {
    if (config_.answer) {
      validate_code_string(*config_.answer, p.k, p.n);
      if (!current_.contains(*config_.answer))
        throw Error(ErrorCode::invalid_input, "answer is not a permutation");
      answer_ = config_.answer;
    } else {
      std::mt19937_64 rng(seed_);
      std::uniform_int_distribution<std::size_t> pick(0, current_.size() - 1);
      answer_ = current_.members()[pick(rng)];
    }
  }
  set_sizes_.push_back(current_.size());
}

Session::~Session() = default;
Session::Session(Session&&) noexcept = default;
Session& Session::operator=(Session&&) noexcept = default;

RoundResult Session::guess(CodeString guess) {
  if (status_ != SessionStatus::live)
    throw Error(ErrorCode::invalid_state, std::string("game is ") + to_string(status_));
  const GameParams& p = config_.params;
  validate_code_string(guess, p.k, p.n);

  AnyFeedback fb;
  switch (config_.opponent) {
    case OpponentKind::fixed:
      fb = feedback(p, guess, *answer_);
      current_ = filter_answer_set(current_, guess, fb);
      break;
    case OpponentKind::greedy: {
      auto r = greedy_feedback(current_, guess);
      fb = std::move(r.feedback);
      current_ = std::move(r.next);
      break;
    }
    case OpponentKind::max_class: {
      auto r = max_class_feedback(current_, guess);
      fb = std::move(r.feedback);
      current_ = std::move(r.next);
      break;
    }
  }
  history_.push_back({std::move(guess), fb});
  set_sizes_.push_back(current_.size());
  const bool solved = is_solved(fb);
  if (solved) {
    status_ = SessionStatus::solved;
    if (!answer_) answer_ = history_.back().guess;
  }
  return {fb, round(), current_.size(), solved};
}

Hint Session::hint(const HintPolicy& policy) {
  Hint h;
  if (status_ != SessionStatus::live) {
    h.reason = "game is not live";
    return h;
  }
  if (current_.size() == 1) {
    h.available = true;
    h.guess = current_.members().front();
    h.worst_case = 1;
    return h;
  }
  const GameParams& p = config_.params;
  std::uint64_t universe = 1;
  for (int i = 0; i < p.n && universe <= policy.max_universe; ++i)
    universe *= static_cast<std::uint64_t>(p.k);
  if (universe > policy.max_universe) {
    h.reason = "game too large for exact hints";
    return h;
  }
  try {
    if (!solver_) {
      SolverOptions options;
      options.node_cap = policy.node_cap;
      options.time_cap = policy.time_cap;
      solver_ = std::make_unique<Solver>(p, options);
    }
    auto move = solver_->best_move(current_);
    h.available = true;
    h.guess = std::move(move.guess);
    h.worst_case = move.worst_case;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::resource_exhausted) throw;
    h.reason = std::string("hint budget exceeded: ") + e.what();
  }
  return h;
}

void Session::abandon() noexcept {
  if (status_ == SessionStatus::live) status_ = SessionStatus::abandoned;
}

Session Session::replay(std::string id, SessionConfig config,
                        const std::vector<CodeString>& guesses) {
  Session s(std::move(id), std::move(config));
  for (const auto& g : guesses) s.guess(g);
  return s;
}

}  // namespace clearmm
