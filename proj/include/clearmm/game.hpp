#pragma once

// Rules of Clear Mastermind: per-position G/Y/B feedback, hit/miss feedback,
// conversions between the two, and answer-set bookkeeping.

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "clearmm/error.hpp"

namespace clearmm {

using Code = std::uint8_t;

inline constexpr int kMaxCodes = 255;
inline constexpr int kMaxPositions = 16;

enum class Mark : std::uint8_t { G = 0, Y = 1, B = 2 };
enum class Match : std::uint8_t { hit = 0, miss = 1 };

enum class ModeKind { full, permutation };
enum class FeedbackKind { pi, tau };

struct GameMode {
  ModeKind kind = ModeKind::full;
  FeedbackKind feedback = FeedbackKind::pi;

  friend bool operator==(const GameMode&, const GameMode&) = default;
};

// Default feedback: G/Y/B for the full game, hit/miss for the permutation game.
GameMode default_mode(ModeKind kind);

struct GameParams {
  int k = 0;
  int n = 0;
  GameMode mode;

  // Throws invalid_input when k or n is out of range, when permutation mode is
  // requested with k != n, or when hit/miss feedback is requested outside it.
  void validate() const;

  friend bool operator==(const GameParams&, const GameParams&) = default;
};

const char* to_string(ModeKind kind) noexcept;
const char* to_string(FeedbackKind kind) noexcept;
ModeKind parse_mode_kind(std::string_view text);
FeedbackKind parse_feedback_kind(std::string_view text);

class CodeString {
 public:
  CodeString() = default;
  explicit CodeString(std::vector<Code> codes) : codes_(std::move(codes)) {}
  CodeString(std::initializer_list<int> codes);

  // "1,1,2,3,3"
  static CodeString parse(std::string_view text);
  std::string to_string() const;

  std::size_t size() const noexcept { return codes_.size(); }
  Code operator[](std::size_t i) const { return codes_[i]; }
  std::span<const Code> codes() const noexcept { return codes_; }
  int max_code() const noexcept;
  bool is_permutation() const noexcept;

  friend auto operator<=>(const CodeString&, const CodeString&) = default;

 private:
  std::vector<Code> codes_;
};

class FeedbackString {
 public:
  FeedbackString() = default;
  explicit FeedbackString(std::vector<Mark> marks) : marks_(std::move(marks)) {}

  // "GGBYG"
  static FeedbackString parse(std::string_view text);
  static FeedbackString all_green(int n);
  std::string to_string() const;

  std::size_t size() const noexcept { return marks_.size(); }
  Mark operator[](std::size_t i) const { return marks_[i]; }
  std::span<const Mark> marks() const noexcept { return marks_; }
  bool solved() const noexcept;
  int count(Mark m) const noexcept;

  friend auto operator<=>(const FeedbackString&, const FeedbackString&) = default;

 private:
  std::vector<Mark> marks_;
};

class MatchString {
 public:
  MatchString() = default;
  explicit MatchString(std::vector<Match> marks) : marks_(std::move(marks)) {}

  // "++--+"
  static MatchString parse(std::string_view text);
  static MatchString all_hit(int n);
  std::string to_string() const;

  std::size_t size() const noexcept { return marks_.size(); }
  Match operator[](std::size_t i) const { return marks_[i]; }
  std::span<const Match> marks() const noexcept { return marks_; }
  bool solved() const noexcept;

  friend auto operator<=>(const MatchString&, const MatchString&) = default;

 private:
  std::vector<Match> marks_;
};

using AnyFeedback = std::variant<FeedbackString, MatchString>;

std::string to_string(const AnyFeedback& feedback);
bool is_solved(const AnyFeedback& feedback);
FeedbackKind kind_of(const AnyFeedback& feedback);
AnyFeedback parse_feedback(std::string_view text, FeedbackKind kind);

// counts[v - 1] is the number of occurrences of code v.
class CountVector {
 public:
  CountVector() = default;
  explicit CountVector(std::vector<int> counts);

  int k() const noexcept { return static_cast<int>(counts_.size()); }
  int operator[](Code v) const { return counts_[v - 1]; }
  std::span<const int> counts() const noexcept { return counts_; }
  int total() const noexcept;

  friend bool operator==(const CountVector&, const CountVector&) = default;

 private:
  std::vector<int> counts_;
};

// Allocation-free, branch-free kernels: in exhaustive sweeps the match pattern
// is close to random and mispredictions dominate otherwise.
//
// A non-green position j is yellow when fewer earlier non-green positions guess
// the same code than the answer has unmatched copies of it. Three ways of
// counting are used, picked by length (a constant once inlined):
//   n <= 5   pairwise comparisons, all in registers;
//   n <= 7   a per-code table, `residual`;
//   longer   per-code position bitmasks. Long strings come with few codes,
//            where table updates form a serial store-to-load chain.
// `residual` must be zero-filled and hold at least max_code + 1 entries; it is
// left zero-filled on return.
namespace detail {

inline constexpr std::size_t kPairwiseMax = 5;
inline constexpr std::size_t kTableMax = 7;

inline Mark mark(int miss, int yellow) noexcept {
  return static_cast<Mark>(miss * (2 - yellow));  // G = 0, Y = 1, B = 2
}

inline int popcount16(std::uint32_t x) noexcept {
  // Portable; std::popcount becomes a library call without -mpopcnt.
  x = x - ((x >> 1) & 0x5555u);
  x = (x & 0x3333u) + ((x >> 2) & 0x3333u);
  x = (x + (x >> 4)) & 0x0F0Fu;
  return static_cast<int>((x + (x >> 8)) & 0x1Fu);
}

// The lowest `r` set bits of m.
inline std::uint32_t lowest_bits(std::uint32_t m, int r) noexcept {
  std::uint32_t out = 0;
  for (; r > 0 && m; --r) {
    out |= m & (~m + 1);
    m &= m - 1;
  }
  return out;
}

inline std::uint32_t positions_of(std::span<const Code> s, Code v) noexcept {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < s.size(); ++i) m |= static_cast<std::uint32_t>(s[i] == v) << i;
  return m;
}

}  // namespace detail

inline void compute_pi(std::span<const Code> guess, std::span<const Code> answer,
                       std::span<Mark> out, std::span<int> residual) noexcept {
  const std::size_t n = guess.size();
  if (n <= detail::kPairwiseMax) {
    for (std::size_t j = 0; j < n; ++j) {
      int unmatched = 0;
      int rank = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const int miss = guess[i] != answer[i];
        unmatched += miss & (answer[i] == guess[j]);
        rank += miss & (guess[i] == guess[j]) & (i < j);
      }
      const int miss = guess[j] != answer[j];
      out[j] = detail::mark(miss, miss & (rank < unmatched));
    }
  } else if (n <= detail::kTableMax) {
    // The multiset of answer codes left unmatched, consumed left to right.
    for (std::size_t i = 0; i < n; ++i) residual[answer[i]] += guess[i] != answer[i];
    for (std::size_t j = 0; j < n; ++j) {
      const int miss = guess[j] != answer[j];
      int& left = residual[guess[j]];
      const int yellow = miss & (left > 0);
      left -= yellow;
      out[j] = detail::mark(miss, yellow);
    }
    for (std::size_t i = 0; i < n; ++i) residual[answer[i]] = 0;
  } else {
    std::uint32_t miss = 0;
    for (std::size_t i = 0; i < n; ++i) miss |= static_cast<std::uint32_t>(guess[i] != answer[i]) << i;
    std::uint32_t yellow = 0;
    for (std::uint32_t todo = miss; todo;) {
      const Code v = guess[std::countr_zero(todo)];
      const std::uint32_t same = detail::positions_of(guess, v);
      yellow |= detail::lowest_bits(same & miss,
                                    detail::popcount16(detail::positions_of(answer, v) & miss));
      todo &= ~same;
    }
    for (std::size_t j = 0; j < n; ++j)
      out[j] = detail::mark(static_cast<int>((miss >> j) & 1u), static_cast<int>((yellow >> j) & 1u));
  }
}

inline void compute_tau(std::span<const Code> guess, std::span<const Code> answer,
                        std::span<Match> out) noexcept {
  for (std::size_t i = 0; i < guess.size(); ++i)
    out[i] = static_cast<Match>(guess[i] != answer[i]);
}

// `residual` follows the same contract; `counts` is indexed by code - 1.
// Returns false when some code is hit more often than the answer contains it.
inline bool compute_pi_from_tau(std::span<const Match> tau, std::span<const int> counts,
                                std::span<const Code> guess, std::span<Mark> out,
                                std::span<int> residual) noexcept {
  const std::size_t n = guess.size();
  int bad = 0;
  if (n <= detail::kPairwiseMax) {
    for (std::size_t j = 0; j < n; ++j) {
      int hits = 0;
      int rank = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const int same = guess[i] == guess[j];
        const int miss = tau[i] != Match::hit;
        hits += same & (1 - miss);
        rank += same & miss & (i < j);
      }
      const int left = counts[guess[j] - 1] - hits;
      const int miss = tau[j] != Match::hit;
      bad |= left < 0;
      out[j] = detail::mark(miss, miss & (rank < left));
    }
  } else if (n <= detail::kTableMax) {
    // residual[v] holds how many occurrences of v have been consumed so far.
    for (std::size_t i = 0; i < n; ++i) {
      const int hit = tau[i] == Match::hit;
      const Code q = guess[i];
      bad |= hit & (counts[q - 1] - residual[q] <= 0);
      residual[q] += hit;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const int miss = tau[j] != Match::hit;
      const Code q = guess[j];
      const int yellow = miss & (counts[q - 1] - residual[q] > 0);
      residual[q] += yellow;
      out[j] = detail::mark(miss, yellow);
    }
    for (std::size_t i = 0; i < n; ++i) residual[guess[i]] = 0;
  } else {
    std::uint32_t miss = 0;
    for (std::size_t i = 0; i < n; ++i) miss |= static_cast<std::uint32_t>(tau[i] != Match::hit) << i;
    std::uint32_t yellow = 0;
    for (std::uint32_t todo = (std::uint32_t{1} << n) - 1; todo;) {
      const Code v = guess[std::countr_zero(todo)];
      const std::uint32_t same = detail::positions_of(guess, v);
      const int left = counts[v - 1] - detail::popcount16(same & ~miss);
      bad |= left < 0;
      yellow |= detail::lowest_bits(same & miss, left);
      todo &= ~same;
    }
    for (std::size_t j = 0; j < n; ++j)
      out[j] = detail::mark(static_cast<int>((miss >> j) & 1u), static_cast<int>((yellow >> j) & 1u));
  }
  return bad == 0;
}

FeedbackString feedback_pi(const CodeString& guess, const CodeString& answer);
MatchString feedback_tau(const CodeString& guess, const CodeString& answer);
AnyFeedback feedback(const GameParams& params, const CodeString& guess,
                     const CodeString& answer);

MatchString tau_from_pi(const FeedbackString& pi);
FeedbackString pi_from_tau(const MatchString& tau, const CountVector& counts,
                           const CodeString& guess);

CountVector code_counts(const CodeString& answer, int k);

// Throws invalid_input unless `s` has length n with every code in [1, k].
void validate_code_string(const CodeString& s, int k, int n);

class AnswerSet {
 public:
  AnswerSet() = default;
  // Members are validated against params, sorted and deduplicated.
  AnswerSet(GameParams params, std::vector<CodeString> members);

  const GameParams& params() const noexcept { return params_; }
  std::span<const CodeString> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(const CodeString& s) const;

  friend bool operator==(const AnswerSet&, const AnswerSet&) = default;

 private:
  struct Trusted {};
  AnswerSet(Trusted, GameParams params, std::vector<CodeString> members)
      : params_(params), members_(std::move(members)) {}

  GameParams params_;
  std::vector<CodeString> members_;

  friend AnswerSet full_answer_set(const GameParams& params);
  friend AnswerSet filter_answer_set(const AnswerSet& set, const CodeString& guess,
                                     const AnyFeedback& feedback);
  friend AnswerSet subset_of(const AnswerSet& set, std::vector<CodeString> members);
};

// Enumerates [k]^n (full mode) or the n! permutations (permutation mode), in
// lexicographic order.
AnswerSet full_answer_set(const GameParams& params);
AnswerSet full_answer_set(int k, int n, ModeKind mode);

// Keeps exactly the members y with feedback(guess, y) == feedback. May return
// an empty set.
AnswerSet filter_answer_set(const AnswerSet& set, const CodeString& guess,
                            const AnyFeedback& feedback);

// Builds a set from members already known to be valid, sorted, and drawn from
// `set`.
AnswerSet subset_of(const AnswerSet& set, std::vector<CodeString> members);

struct Round {
  CodeString guess;
  AnyFeedback feedback;
};

using History = std::vector<Round>;

// Replays a history from the full answer set. Throws invalid_input when a
// guess or feedback does not fit the parameters.
AnswerSet replay(const GameParams& params, const History& history);

}  // namespace clearmm
