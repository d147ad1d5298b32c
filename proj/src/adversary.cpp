#include "clearmm/adversary.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace clearmm {

BinaryMatrix::BinaryMatrix(int rows, int cols, bool fill)
    : rows_(rows), cols_(cols),
      cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill ? 1 : 0) {
  if (rows < 0 || cols < 0) throw Error(ErrorCode::invalid_input, "negative matrix dimension");
}

BinaryMatrix BinaryMatrix::identity(int n) {
  BinaryMatrix m(n, n, false);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

int BinaryMatrix::column_ones(int c) const {
  int total = 0;
  for (int r = 0; r < rows_; ++r) total += at(r, c);
  return total;
}

int BinaryMatrix::row_ones(int r) const {
  int total = 0;
  for (int c = 0; c < cols_; ++c) total += at(r, c);
  return total;
}

std::uint64_t permanent(const BinaryMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::invalid_input, "permanent needs a square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  if (n > kMaxPermanentDim)
    throw Error(ErrorCode::invalid_input, "matrix too large for an exact permanent");

  std::vector<std::uint32_t> column_mask(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (m.at(r, c)) column_mask[c] |= std::uint32_t{1} << r;

  // row_sum[i] = number of selected columns with a one in row i.
  std::vector<std::int64_t> row_sum(static_cast<std::size_t>(n), 0);
  __int128 total = 0;
  std::uint32_t gray = 0;
  const std::uint32_t subsets = std::uint32_t{1} << n;
  for (std::uint32_t g = 1; g < subsets; ++g) {
    const int col = std::countr_zero(g);
    const std::uint32_t bit = std::uint32_t{1} << col;
    gray ^= bit;
    const std::int64_t delta = (gray & bit) ? 1 : -1;
    for (std::uint32_t rows = column_mask[col]; rows; rows &= rows - 1)
      row_sum[std::countr_zero(rows)] += delta;

    __int128 product = 1;
    for (int i = 0; i < n && product != 0; ++i) product *= row_sum[i];
    if (product == 0) continue;
    if ((std::popcount(gray) & 1) == (n & 1)) {
      total += product;
    } else {
      total -= product;
    }
  }
  return static_cast<std::uint64_t>(total);
}

TrackingMatrix update_tracking_matrix(TrackingMatrix m, const CodeString& guess,
                                      const MatchString& tau) {
  const int n = m.n();
  validate_code_string(guess, n, n);
  if (tau.size() != static_cast<std::size_t>(n))
    throw Error(ErrorCode::invalid_input, "feedback length differs from n");
  for (int i = 0; i < n; ++i)
    if (tau[i] == Match::miss) m.cells_.set(i, guess[i] - 1, false);
  return m;
}

GreedyResult greedy_feedback(const AnswerSet& current, const CodeString& guess) {
  const GameParams& p = current.params();
  if (p.mode.kind != ModeKind::permutation || p.mode.feedback != FeedbackKind::tau)
    throw Error(ErrorCode::invalid_configuration,
                "greedy feedback requires the permutation game with hit/miss feedback");
  if (current.empty()) throw Error(ErrorCode::invalid_state, "greedy feedback on an empty set");
  validate_code_string(guess, p.k, p.n);

  std::vector<CodeString> q(current.members().begin(), current.members().end());
  std::vector<Match> marks(static_cast<std::size_t>(p.n));
  for (int i = 0; i < p.n; ++i) {
    const Code x = guess[i];
    const auto matching = std::count_if(q.begin(), q.end(),
                                        [&](const CodeString& a) { return a[i] == x; });
    if (static_cast<std::size_t>(matching) == q.size()) {
      marks[i] = Match::hit;
    } else {
      marks[i] = Match::miss;
      std::erase_if(q, [&](const CodeString& a) { return a[i] == x; });
    }
  }
  if (q.empty()) throw Error(ErrorCode::invalid_state, "greedy feedback emptied the answer set");
  return {MatchString(std::move(marks)), subset_of(current, std::move(q))};
}

std::vector<AnswerSet> q_answer_sets(const AnswerSet& current, const CodeString& guess,
                                     const AnyFeedback& feedback) {
  const GameParams& p = current.params();
  // Validates guess and feedback kind; also yields Q_{i,n}.
  AnswerSet last = filter_answer_set(current, guess, feedback);

  const auto n = static_cast<std::size_t>(p.n);
  // Length of the feedback prefix each member agrees with.
  std::vector<std::size_t> agree;
  agree.reserve(current.size());
  for (const auto& y : current.members()) {
    AnyFeedback f = clearmm::feedback(p, guess, y);
    const std::string mine = to_string(f);
    const std::string want = to_string(feedback);
    std::size_t j = 0;
    while (j < n && mine[j] == want[j]) ++j;
    agree.push_back(j);
  }

  std::vector<AnswerSet> out;
  out.reserve(n + 1);
  out.push_back(current);
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<CodeString> kept;
    for (std::size_t m = 0; m < current.size(); ++m)
      if (agree[m] >= j) kept.push_back(current.members()[m]);
    out.push_back(subset_of(current, std::move(kept)));
  }
  if (n >= 1) out.push_back(std::move(last));
  return out;
}

MaxClassResult max_class_feedback(const AnswerSet& current, const CodeString& guess) {
  if (current.empty()) throw Error(ErrorCode::invalid_state, "max-class feedback on an empty set");
  const GameParams& p = current.params();
  validate_code_string(guess, p.k, p.n);

  std::map<AnyFeedback, std::vector<CodeString>> classes;
  for (const auto& y : current.members()) classes[feedback(p, guess, y)].push_back(y);

  auto best = classes.begin();
  for (auto it = classes.begin(); it != classes.end(); ++it)
    if (it->second.size() > best->second.size()) best = it;
  return {best->first, subset_of(current, std::move(best->second))};
}

std::vector<std::string> AuditReport::lines() const {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back("round=" + std::to_string(r.round) + " set_size=" + std::to_string(r.set_size) +
                  " permanent=" + std::to_string(r.permanent) +
                  " status=" + (r.pass ? "pass" : "fail"));
  }
  return out;
}

AuditReport audit_lemma2(const GameParams& params, const History& trace,
                         AuditExpectation expectation) {
  params.validate();
  if (params.mode.kind != ModeKind::permutation || params.mode.feedback != FeedbackKind::tau)
    throw Error(ErrorCode::invalid_configuration,
                "the permanent audit applies to the permutation game with hit/miss feedback");

  AuditReport report;
  TrackingMatrix matrix(params.n);
  AnswerSet set = full_answer_set(params);
  auto record = [&](int round) {
    AuditRecord r{round, set.size(), permanent(matrix.matrix()), false};
    r.pass = expectation == AuditExpectation::equality ? r.permanent == r.set_size
                                                       : r.permanent >= r.set_size;
    if (!r.pass && !report.first_violation) report.first_violation = round;
    report.records.push_back(r);
  };

  record(0);
  int round = 0;
  for (const auto& step : trace) {
    const auto* tau = std::get_if<MatchString>(&step.feedback);
    if (tau == nullptr) throw Error(ErrorCode::invalid_input, "audit trace needs hit/miss feedback");
    matrix = update_tracking_matrix(std::move(matrix), step.guess, *tau);
    set = filter_answer_set(set, step.guess, step.feedback);
    record(++round);
  }
  return report;
}

}  // namespace clearmm
