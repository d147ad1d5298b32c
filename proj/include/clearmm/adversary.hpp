#pragma once

// Adaptive codemakers. The greedy codemaker answers permutation-game guesses
// with hit/miss marks, marking miss at each position whenever some candidate
// survives it; its tracking matrix permanent always equals the answer-set size.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clearmm/game.hpp"

namespace clearmm {

class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(int rows, int cols, bool fill);

  static BinaryMatrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool at(int r, int c) const { return cells_[index(r, c)] != 0; }
  void set(int r, int c, bool v) { cells_[index(r, c)] = v ? 1 : 0; }
  int column_ones(int c) const;
  int row_ones(int r) const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

inline constexpr int kMaxPermanentDim = 20;

// Ryser's formula over Gray-code subset order. Throws invalid_input for a
// non-square matrix or one larger than kMaxPermanentDim.
std::uint64_t permanent(const BinaryMatrix& m);

// Row = position, column = code. Entry (i, v-1) is 1 while code v is still
// possible at position i.
class TrackingMatrix {
 public:
  explicit TrackingMatrix(int n) : cells_(n, n, true) {}

  int n() const noexcept { return cells_.rows(); }
  bool possible(int position, Code code) const { return cells_.at(position, code - 1); }
  const BinaryMatrix& matrix() const noexcept { return cells_; }

  friend bool operator==(const TrackingMatrix&, const TrackingMatrix&) = default;

 private:
  BinaryMatrix cells_;
  friend TrackingMatrix update_tracking_matrix(TrackingMatrix m, const CodeString& guess,
                                               const MatchString& tau);
};

TrackingMatrix update_tracking_matrix(TrackingMatrix m, const CodeString& guess,
                                      const MatchString& tau);

struct GreedyResult {
  MatchString feedback;
  AnswerSet next;
};

// Requires a nonempty permutation-mode set with hit/miss feedback.
GreedyResult greedy_feedback(const AnswerSet& current, const CodeString& guess);

// Element j holds the members consistent with the first j marks of
// (guess, feedback); element 0 is `current`, element n the filtered set.
std::vector<AnswerSet> q_answer_sets(const AnswerSet& current, const CodeString& guess,
                                     const AnyFeedback& feedback);

struct MaxClassResult {
  AnyFeedback feedback;
  AnswerSet next;
};

// Replies with the feedback whose class is largest; ties go to the
// lexicographically smallest feedback (G < Y < B, hit < miss).
MaxClassResult max_class_feedback(const AnswerSet& current, const CodeString& guess);

enum class AuditExpectation {
  equality,     // feedback came from the greedy codemaker
  upper_bound,  // any consistent feedback: permanent >= |P_r|
};

struct AuditRecord {
  int round = 0;
  std::size_t set_size = 0;
  std::uint64_t permanent = 0;
  bool pass = false;
};

struct AuditReport {
  std::vector<AuditRecord> records;
  std::optional<int> first_violation;

  bool passed() const noexcept { return !first_violation.has_value(); }
  // "round=<r> set_size=<|P_r|> permanent=<perm> status=<pass|fail>"
  std::vector<std::string> lines() const;
};

// Replays a permutation-mode hit/miss trace, checking the tracking-matrix
// permanent against the answer-set size after every round (round 0 included).
AuditReport audit_lemma2(const GameParams& params, const History& trace,
                         AuditExpectation expectation = AuditExpectation::equality);

}  // namespace clearmm
