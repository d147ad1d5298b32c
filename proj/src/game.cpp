#include "clearmm/game.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace clearmm {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::inconsistent: return "inconsistent";
    case ErrorCode::invalid_state: return "invalid_state";
    case ErrorCode::invalid_configuration: return "invalid_configuration";
    case ErrorCode::resource_exhausted: return "resource_exhausted";
    case ErrorCode::not_found: return "not_found";
  }
  return "unknown";
}

namespace {

// Upper bound on enumerated answer sets.
constexpr std::uint64_t kMaxEnumeratedSet = std::uint64_t{1} << 22;

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::invalid_input, message);
}

}  // namespace

GameMode default_mode(ModeKind kind) {
  return {kind, kind == ModeKind::full ? FeedbackKind::pi : FeedbackKind::tau};
}

void GameParams::validate() const {
  if (k < 1 || k > kMaxCodes)
    invalid("k must be in [1, " + std::to_string(kMaxCodes) + "], got " + std::to_string(k));
  if (n < 1 || n > kMaxPositions)
    invalid("n must be in [1, " + std::to_string(kMaxPositions) + "], got " + std::to_string(n));
  if (mode.kind == ModeKind::permutation && k != n)
    invalid("permutation mode requires k == n");
  if (mode.feedback == FeedbackKind::tau && mode.kind != ModeKind::permutation)
    invalid("hit/miss feedback is only available in permutation mode");
}

const char* to_string(ModeKind kind) noexcept {
  return kind == ModeKind::full ? "full" : "permutation";
}

const char* to_string(FeedbackKind kind) noexcept {
  return kind == FeedbackKind::pi ? "pi" : "tau";
}

ModeKind parse_mode_kind(std::string_view text) {
  if (text == "full") return ModeKind::full;
  if (text == "permutation" || text == "perm") return ModeKind::permutation;
  invalid("unknown mode '" + std::string(text) + "'");
}

FeedbackKind parse_feedback_kind(std::string_view text) {
  if (text == "pi") return FeedbackKind::pi;
  if (text == "tau") return FeedbackKind::tau;
  invalid("unknown feedback kind '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Strings

CodeString::CodeString(std::initializer_list<int> codes) {
  codes_.reserve(codes.size());
  for (int c : codes) {
    if (c < 1 || c > kMaxCodes) invalid("code out of range: " + std::to_string(c));
    codes_.push_back(static_cast<Code>(c));
  }
}

CodeString CodeString::parse(std::string_view text) {
  std::vector<Code> codes;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find(',', pos);
    std::string_view item = text.substr(pos, end == std::string_view::npos ? end : end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      invalid("malformed code string '" + std::string(text) + "'");
    if (value < 1 || value > kMaxCodes)
      invalid("code out of range in '" + std::string(text) + "'");
    codes.push_back(static_cast<Code>(value));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return CodeString(std::move(codes));
}

std::string CodeString::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(codes_[i]);
  }
  return out;
}

int CodeString::max_code() const noexcept {
  int m = 0;
  for (Code c : codes_) m = std::max<int>(m, c);
  return m;
}

bool CodeString::is_permutation() const noexcept {
  std::vector<bool> seen(codes_.size() + 1, false);
  for (Code c : codes_) {
    if (c < 1 || c > codes_.size() || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

FeedbackString FeedbackString::parse(std::string_view text) {
  std::vector<Mark> marks;
  for (char ch : text) {
    switch (ch) {
      case 'G': marks.push_back(Mark::G); break;
      case 'Y': marks.push_back(Mark::Y); break;
      case 'B': marks.push_back(Mark::B); break;
      default: invalid("malformed G/Y/B feedback '" + std::string(text) + "'");
    }
  }
  if (marks.empty()) invalid("empty feedback");
  return FeedbackString(std::move(marks));
}

FeedbackString FeedbackString::all_green(int n) {
  return FeedbackString(std::vector<Mark>(static_cast<std::size_t>(n), Mark::G));
}

std::string FeedbackString::to_string() const {
  std::string out;
  out.reserve(marks_.size());
  for (Mark m : marks_) out += "GYB"[static_cast<int>(m)];
  return out;
}

bool FeedbackString::solved() const noexcept {
  return std::all_of(marks_.begin(), marks_.end(), [](Mark m) { return m == Mark::G; });
}

int FeedbackString::count(Mark m) const noexcept {
  return static_cast<int>(std::count(marks_.begin(), marks_.end(), m));
}

MatchString MatchString::parse(std::string_view text) {
  std::vector<Match> marks;
  for (char ch : text) {
    if (ch == '+') {
      marks.push_back(Match::hit);
    } else if (ch == '-') {
      marks.push_back(Match::miss);
    } else {
      invalid("malformed hit/miss feedback '" + std::string(text) + "'");
    }
  }
  if (marks.empty()) invalid("empty feedback");
  return MatchString(std::move(marks));
}

MatchString MatchString::all_hit(int n) {
  return MatchString(std::vector<Match>(static_cast<std::size_t>(n), Match::hit));
}

std::string MatchString::to_string() const {
  std::string out;
  out.reserve(marks_.size());
  for (Match m : marks_) out += m == Match::hit ? '+' : '-';
  return out;
}

bool MatchString::solved() const noexcept {
  return std::all_of(marks_.begin(), marks_.end(), [](Match m) { return m == Match::hit; });
}

std::string to_string(const AnyFeedback& feedback) {
  return std::visit([](const auto& f) { return f.to_string(); }, feedback);
}

bool is_solved(const AnyFeedback& feedback) {
  return std::visit([](const auto& f) { return f.solved(); }, feedback);
}

FeedbackKind kind_of(const AnyFeedback& feedback) {
  return std::holds_alternative<FeedbackString>(feedback) ? FeedbackKind::pi : FeedbackKind::tau;
}

AnyFeedback parse_feedback(std::string_view text, FeedbackKind kind) {
  if (kind == FeedbackKind::pi) return FeedbackString::parse(text);
  return MatchString::parse(text);
}

CountVector::CountVector(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_)
    if (c < 0) invalid("negative code count");
}

int CountVector::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), 0);
}

// ---------------------------------------------------------------------------
// Feedback kernels

namespace {

void check_pair(const CodeString& guess, const CodeString& answer) {
  if (guess.size() == 0 || guess.size() != answer.size())
    invalid("guess and answer lengths differ (" + std::to_string(guess.size()) + " vs " +
            std::to_string(answer.size()) + ")");
  if (guess.size() > static_cast<std::size_t>(kMaxPositions)) invalid("string too long");
  for (Code c : guess.codes())
    if (c == 0) invalid("code out of range");
  for (Code c : answer.codes())
    if (c == 0) invalid("code out of range");
}

}  // namespace

FeedbackString feedback_pi(const CodeString& guess, const CodeString& answer) {
  check_pair(guess, answer);
  std::vector<Mark> out(guess.size());
  std::vector<int> residual(static_cast<std::size_t>(kMaxCodes) + 1, 0);
  compute_pi(guess.codes(), answer.codes(), out, residual);
  return FeedbackString(std::move(out));
}

MatchString feedback_tau(const CodeString& guess, const CodeString& answer) {
  check_pair(guess, answer);
  std::vector<Match> out(guess.size());
  compute_tau(guess.codes(), answer.codes(), out);
  return MatchString(std::move(out));
}

AnyFeedback feedback(const GameParams& params, const CodeString& guess,
                     const CodeString& answer) {
  validate_code_string(guess, params.k, params.n);
  validate_code_string(answer, params.k, params.n);
  if (params.mode.feedback == FeedbackKind::pi) return feedback_pi(guess, answer);
  return feedback_tau(guess, answer);
}

MatchString tau_from_pi(const FeedbackString& pi) {
  std::vector<Match> out;
  out.reserve(pi.size());
  for (Mark m : pi.marks()) out.push_back(m == Mark::G ? Match::hit : Match::miss);
  return MatchString(std::move(out));
}

FeedbackString pi_from_tau(const MatchString& tau, const CountVector& counts,
                           const CodeString& guess) {
  if (tau.size() != guess.size() || guess.size() == 0)
    invalid("feedback and guess lengths differ");
  if (counts.total() != static_cast<int>(guess.size()))
    invalid("code counts must sum to the string length");
  if (guess.max_code() > counts.k()) invalid("guess code exceeds the count vector length");
  for (Code c : guess.codes())
    if (c == 0) invalid("code out of range");
  std::vector<Mark> out(guess.size());
  std::vector<int> residual(static_cast<std::size_t>(kMaxCodes) + 1, 0);
  if (!compute_pi_from_tau(tau.marks(), counts.counts(), guess.codes(), out, residual))
    throw Error(ErrorCode::inconsistent,
                "more hits on a code than the answer contains");
  return FeedbackString(std::move(out));
}

CountVector code_counts(const CodeString& answer, int k) {
  if (k < 1 || answer.max_code() > k) invalid("code exceeds k");
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (Code c : answer.codes()) ++counts[c - 1];
  return CountVector(std::move(counts));
}

void validate_code_string(const CodeString& s, int k, int n) {
  if (static_cast<int>(s.size()) != n)
    invalid("expected " + std::to_string(n) + " codes, got " + std::to_string(s.size()) +
            " in '" + s.to_string() + "'");
  for (Code c : s.codes())
    if (c < 1 || c > k)
      invalid("code " + std::to_string(c) + " outside [1, " + std::to_string(k) + "]");
}

// ---------------------------------------------------------------------------
// Answer sets

AnswerSet::AnswerSet(GameParams params, std::vector<CodeString> members)
    : params_(params), members_(std::move(members)) {
  params_.validate();
  for (const auto& m : members_) {
    validate_code_string(m, params_.k, params_.n);
    if (params_.mode.kind == ModeKind::permutation && !m.is_permutation())
      invalid("permutation-mode answer set member is not a permutation: " + m.to_string());
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool AnswerSet::contains(const CodeString& s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

AnswerSet full_answer_set(const GameParams& params) {
  params.validate();
  const int k = params.k;
  const int n = params.n;
  std::vector<CodeString> members;
  if (params.mode.kind == ModeKind::permutation) {
    std::uint64_t total = 1;
    for (int i = 2; i <= n; ++i) {
      total *= static_cast<std::uint64_t>(i);
      if (total > kMaxEnumeratedSet)
        throw Error(ErrorCode::resource_exhausted, "answer set too large to enumerate");
    }
    std::vector<Code> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), Code{1});
    members.reserve(total);
    do {
      members.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  } else {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
      total *= static_cast<std::uint64_t>(k);
      if (total > kMaxEnumeratedSet)
        throw Error(ErrorCode::resource_exhausted, "answer set too large to enumerate");
    }
    members.reserve(total);
    std::vector<Code> s(static_cast<std::size_t>(n), Code{1});
    while (true) {
      members.emplace_back(s);
      int i = n - 1;
      while (i >= 0 && s[i] == k) s[i--] = 1;
      if (i < 0) break;
      ++s[i];
    }
  }
  return AnswerSet(AnswerSet::Trusted{}, params, std::move(members));
}

AnswerSet full_answer_set(int k, int n, ModeKind mode) {
  return full_answer_set(GameParams{k, n, default_mode(mode)});
}

AnswerSet filter_answer_set(const AnswerSet& set, const CodeString& guess,
                            const AnyFeedback& feedback) {
  const GameParams& p = set.params();
  validate_code_string(guess, p.k, p.n);
  if (kind_of(feedback) != p.mode.feedback)
    invalid(std::string("expected ") + to_string(p.mode.feedback) + " feedback");
  if (std::visit([](const auto& f) { return f.size(); }, feedback) != static_cast<std::size_t>(p.n))
    invalid("feedback length differs from n");

  std::vector<CodeString> kept;
  const std::size_t n = static_cast<std::size_t>(p.n);
  if (const auto* pi = std::get_if<FeedbackString>(&feedback)) {
    std::vector<int> residual(static_cast<std::size_t>(p.k) + 1, 0);
    std::vector<Mark> out(n);
    for (const auto& y : set.members()) {
      compute_pi(guess.codes(), y.codes(), out, residual);
      if (std::equal(out.begin(), out.end(), pi->marks().begin())) kept.push_back(y);
    }
  } else {
    const auto& tau = std::get<MatchString>(feedback);
    std::vector<Match> out(n);
    for (const auto& y : set.members()) {
      compute_tau(guess.codes(), y.codes(), out);
      if (std::equal(out.begin(), out.end(), tau.marks().begin())) kept.push_back(y);
    }
  }
  return AnswerSet(AnswerSet::Trusted{}, p, std::move(kept));
}

AnswerSet subset_of(const AnswerSet& set, std::vector<CodeString> members) {
  return AnswerSet(AnswerSet::Trusted{}, set.params(), std::move(members));
}

AnswerSet replay(const GameParams& params, const History& history) {
  AnswerSet set = full_answer_set(params);
  for (const auto& round : history) set = filter_answer_set(set, round.guess, round.feedback);
  return set;
}

}  // namespace clearmm
