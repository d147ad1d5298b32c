#include "clearmm/solver.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace clearmm {

Bounds theorem_bounds(int k, int n) {
  if (k < 1 || n < 1) throw Error(ErrorCode::invalid_input, "k and n must be positive");
  if (k <= n) return {k, k};
  const int c = k / n;
  const int b = k % n;
  if (b == 0) return {c + n - 1, c + n - 1};
  return {c + n - 1, std::min(c + n, k)};
}

Bounds permutation_bounds(int k) {
  if (k < 1) throw Error(ErrorCode::invalid_input, "k must be positive");
  return {k, k};
}

std::string SolveResult::record() const {
  std::ostringstream out;
  out << "k=" << params.k << " n=" << params.n << " mode=" << to_string(params.mode.kind)
      << " feedback=" << to_string(params.mode.feedback) << " value=" << value
      << " lower=" << bounds.lower << " upper=" << bounds.upper
      << " within_bounds=" << (within_bounds ? "true" : "false") << " nodes=" << nodes_expanded
      << " memo_hits=" << memo_hits << " elapsed_ms="
      << static_cast<long long>(elapsed.count() * 1000.0);
  if (first_guess) out << " first_guess=" << first_guess->to_string();
  return out.str();
}

namespace {

using Index = std::uint32_t;
using Set = std::vector<Index>;

constexpr std::uint64_t kMaxUniverse = std::uint64_t{1} << 16;
constexpr int kMaxSolverPositions = 12;
constexpr std::size_t kTableLimit = 4096;
constexpr int kMaxDepth = 256;  // values never exceed k <= 255
constexpr std::uint64_t kSaturated = std::uint64_t{1} << 62;
// Work limits for the exhaustive tie-break in canonical forms.
constexpr std::uint64_t kCanonMaxArrangements = 40320;
constexpr std::uint64_t kCanonMaxWork = std::uint64_t{1} << 22;

std::uint64_t checked_power(int base, int exp) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= static_cast<std::uint64_t>(base);
    if (v > kMaxUniverse) return kMaxUniverse + 1;
  }
  return v;
}

// All strings of [k]^n with their digits (code - 1) and pairwise feedback.
class Universe {
 public:
  Universe(int k, int n, FeedbackKind kind, bool with_table) : k_(k), n_(n), kind_(kind) {
    const std::uint64_t size = checked_power(k, n);
    if (size > kMaxUniverse || n > kMaxSolverPositions)
      throw Error(ErrorCode::resource_exhausted,
                  "k^n = " + std::to_string(k) + "^" + std::to_string(n) +
                      " is beyond exact-search scale");
    size_ = static_cast<Index>(size);
    digits_.resize(static_cast<std::size_t>(size_) * n_);
    for (Index u = 0; u < size_; ++u) {
      Index v = u;
      for (int p = n_ - 1; p >= 0; --p) {
        digits_[static_cast<std::size_t>(u) * n_ + p] = static_cast<Code>(v % k_);
        v /= k_;
      }
    }
    weights_.assign(static_cast<std::size_t>(n_), 1);
    for (int p = n_ - 2; p >= 0; --p) weights_[p] = weights_[p + 1] * static_cast<Index>(k_);

    patterns_ = 1;
    for (int p = 0; p < n_; ++p) patterns_ *= kind_ == FeedbackKind::pi ? 3 : 2;
    residual_.assign(static_cast<std::size_t>(k_), 0);

    if (with_table && size_ <= kTableLimit) {
      table_.resize(static_cast<std::size_t>(size_) * size_);
      for (Index g = 0; g < size_; ++g)
        for (Index a = 0; a < size_; ++a)
          table_[static_cast<std::size_t>(g) * size_ + a] = compute(g, a);
    }
  }

  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  Index size() const noexcept { return size_; }
  Index patterns() const noexcept { return patterns_; }
  FeedbackKind kind() const noexcept { return kind_; }
  const Code* digits(Index u) const noexcept { return &digits_[static_cast<std::size_t>(u) * n_]; }
  Index weight(int p) const noexcept { return weights_[p]; }

  Index feedback(Index g, Index a) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(g) * size_ + a];
    return compute(g, a);
  }

  Index index_of(const CodeString& s) const {
    Index u = 0;
    for (int p = 0; p < n_; ++p) u += static_cast<Index>(s[p] - 1) * weights_[p];
    return u;
  }

  CodeString string_of(Index u) const {
    std::vector<Code> codes(static_cast<std::size_t>(n_));
    for (int p = 0; p < n_; ++p) codes[p] = static_cast<Code>(digits(u)[p] + 1);
    return CodeString(std::move(codes));
  }

 private:
  // Pattern code: sum of mark_i * base^i with G/hit = 0, so all-G is 0.
  Index compute(Index g, Index a) const {
    const Code* x = digits(g);
    const Code* y = digits(a);
    Index code = 0;
    if (kind_ == FeedbackKind::tau) {
      for (int i = n_ - 1; i >= 0; --i) code = code * 2 + (x[i] == y[i] ? 0 : 1);
      return code;
    }
    for (int i = 0; i < n_; ++i)
      if (x[i] != y[i]) ++residual_[y[i]];
    Index scale = 1;
    for (int j = 0; j < n_; ++j, scale *= 3) {
      if (x[j] == y[j]) continue;
      int& left = residual_[x[j]];
      if (left > 0) {
        --left;
        code += scale;
      } else {
        code += 2 * scale;
      }
    }
    for (int i = 0; i < n_; ++i) residual_[y[i]] = 0;
    return code;
  }

  int k_;
  int n_;
  FeedbackKind kind_;
  Index size_ = 0;
  Index patterns_ = 1;
  std::vector<Code> digits_;
  std::vector<Index> weights_;
  std::vector<Index> table_;
  mutable std::vector<int> residual_;
};

// Multiplicity patterns of n into at most k parts, as guesses 1..1 2..2 ...
void multiplicity_guesses(int remaining, int max_part, int parts_left, std::vector<int>& parts,
                          std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(parts);
    return;
  }
  if (parts_left == 0) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    parts.push_back(part);
    multiplicity_guesses(remaining - part, part, parts_left - 1, parts, out);
    parts.pop_back();
  }
}

struct KeyHash {
  std::size_t operator()(const CanonicalKey* key) const noexcept { return key->hash; }
};
struct KeyEq {
  bool operator()(const CanonicalKey* a, const CanonicalKey* b) const noexcept { return *a == *b; }
};

std::size_t hash_form(const std::vector<Index>& form) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ form.size();
  for (Index v : form) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

}  // namespace

// ---------------------------------------------------------------------------

class Solver::Impl {
 public:
  Impl(GameParams params, SolverOptions options, bool with_table = true)
      : params_(params), options_(options),
        universe_((params.validate(), params.k), params.n, params.mode.feedback, with_table) {
    const int k = params_.k;
    const int n = params_.n;
    if (params_.mode.kind == ModeKind::permutation) {
      initial_size_ = 1;
      for (int i = 2; i <= n; ++i) initial_size_ *= static_cast<std::uint64_t>(i);
    } else {
      initial_size_ = universe_.size();
    }
    const std::uint64_t patterns =
        params_.mode.feedback == FeedbackKind::pi
            ? static_cast<std::uint64_t>(universe_.patterns()) - static_cast<std::uint64_t>(n)
            : static_cast<std::uint64_t>(universe_.patterns());
    capacity_.push_back(0);
    capacity_.push_back(1);
    for (int d = 2; d < 256; ++d) {
      const std::uint64_t prev = capacity_.back();
      std::uint64_t next = kSaturated;
      if (prev < kSaturated / std::max<std::uint64_t>(patterns, 1)) next = 1 + (patterns - 1) * prev;
      capacity_.push_back(std::min(next, kSaturated));
    }
    class_count_.assign(universe_.patterns(), 0);
    stamp_.assign(universe_.patterns(), 0);
    class_slot_.assign(universe_.patterns(), 0);
    member_mark_.assign(universe_.size(), 0);
    sig_.assign(static_cast<std::size_t>(k) * n, 0);
  }

  const GameParams& params() const noexcept { return params_; }
  const SolverOptions& options() const noexcept { return options_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  std::uint64_t hits() const noexcept { return memo_hits_; }
  std::size_t memo_size() const noexcept { return lru_.size(); }

  Set to_indices(const AnswerSet& set) const {
    if (!(set.params() == params_))
      throw Error(ErrorCode::invalid_input, "answer set parameters differ from the solver's");
    Set out;
    out.reserve(set.size());
    for (const auto& s : set.members()) out.push_back(universe_.index_of(s));
    std::sort(out.begin(), out.end());
    return out;
  }

  CodeString string_of(Index u) const { return universe_.string_of(u); }

  Set full_set() const {
    if (params_.mode.kind == ModeKind::full) {
      Set s(universe_.size());
      std::iota(s.begin(), s.end(), Index{0});
      return s;
    }
    return to_indices(full_answer_set(params_));
  }

  int cost(const Set& s, int upper_hint) {
    if (s.empty()) throw Error(ErrorCode::invalid_input, "empty answer set");
    if (s.size() == 1) return 1;
    int d = 2;
    while (capacity_[d] < s.size()) ++d;
    if (const Entry* e = peek(s)) d = std::max<int>(d, e->lb);
    start_clock();
    try {
      while (!solvable(s, d)) {
        if (++d >= kMaxDepth) throw Error(ErrorCode::resource_exhausted, "search depth limit");
      }
    } catch (const ResourceError& err) {
      throw ResourceError(err.what(), Bounds{d, std::max(d, upper_hint)});
    }
    return d;
  }

  Solver::Move best_move(const Set& s) {
    const int c = cost(s, static_cast<int>(s.size()));
    if (s.size() == 1) return {string_of(s.front()), 1};
    NodeInfo info = analyse(s);
    start_clock();
    for (const auto& cand : ordered_candidates(s, info, c)) {
      if (guess_works(s, cand.guess, c)) return {string_of(cand.guess), c};
    }
    throw Error(ErrorCode::invalid_state, "no guess achieves the computed cost");
  }

  CanonicalKey key_for(const Set& s) {
    NodeInfo info = analyse(s);
    return make_key(s, info);
  }

 private:
  struct Entry {
    std::uint8_t lb = 1;
    std::uint8_t ub = 255;
  };

  struct NodeInfo {
    std::vector<int> order;               // codes by signature
    std::vector<int> group_start;         // tie groups as ranges of `order`
    std::vector<int> cls;                 // swap class id per code
    std::vector<std::vector<int>> class_codes;  // codes per class, ascending
  };

  struct Candidate {
    Index max_class = 0;
    Index guess = 0;
  };

  // --- budget ---------------------------------------------------------------

  void start_clock() {
    if (!clock_running_) {
      started_ = std::chrono::steady_clock::now();
      clock_running_ = true;
    }
  }

  void check_budget() {
    if (options_.node_cap != 0 && nodes_ >= options_.node_cap)
      throw ResourceError("node cap reached", {});
    if (options_.time_cap.count() > 0 && (nodes_ & 63) == 0 &&
        std::chrono::steady_clock::now() - started_ > options_.time_cap)
      throw ResourceError("time cap reached", {});
  }

 public:
  void reset_clock() { clock_running_ = false; }

 private:
  // --- symmetry -------------------------------------------------------------

  bool swap_invariant(const Set& s, int a, int b) {
    ++mark_gen_;
    if (mark_gen_ == 0) {
      std::fill(member_mark_.begin(), member_mark_.end(), 0);
      mark_gen_ = 1;
    }
    for (Index u : s) member_mark_[u] = mark_gen_;
    const int n = universe_.n();
    for (Index u : s) {
      const Code* d = universe_.digits(u);
      Index v = 0;
      bool moved = false;
      for (int p = 0; p < n; ++p) {
        int c = d[p];
        if (c == a) {
          c = b;
          moved = true;
        } else if (c == b) {
          c = a;
          moved = true;
        }
        v += static_cast<Index>(c) * universe_.weight(p);
      }
      if (moved && member_mark_[v] != mark_gen_) return false;
    }
    return true;
  }

  NodeInfo analyse(const Set& s) {
    const int k = universe_.k();
    const int n = universe_.n();
    std::fill(sig_.begin(), sig_.end(), 0);
    for (Index u : s) {
      const Code* d = universe_.digits(u);
      for (int p = 0; p < n; ++p) ++sig_[static_cast<std::size_t>(d[p]) * n + p];
    }
    auto sig_of = [&](int c) { return &sig_[static_cast<std::size_t>(c) * n]; };
    auto sig_less = [&](int a, int b) {
      // Descending by signature so the most used codes get the lowest labels.
      return std::lexicographical_compare(sig_of(b), sig_of(b) + n, sig_of(a), sig_of(a) + n);
    };
    auto sig_equal = [&](int a, int b) { return std::equal(sig_of(a), sig_of(a) + n, sig_of(b)); };

    NodeInfo info;
    info.order.resize(static_cast<std::size_t>(k));
    std::iota(info.order.begin(), info.order.end(), 0);
    std::stable_sort(info.order.begin(), info.order.end(), sig_less);
    for (int i = 0; i < k; ++i)
      if (i == 0 || !sig_equal(info.order[i - 1], info.order[i])) info.group_start.push_back(i);
    info.group_start.push_back(k);

    info.cls.assign(static_cast<std::size_t>(k), -1);
    const bool want_swaps = options_.code_symmetry || options_.canonicalize;
    for (std::size_t g = 0; g + 1 < info.group_start.size(); ++g) {
      const int lo = info.group_start[g];
      const int hi = info.group_start[g + 1];
      const bool absent = std::all_of(sig_of(info.order[lo]), sig_of(info.order[lo]) + n,
                                      [](int v) { return v == 0; });
      std::vector<int> reps;
      for (int i = lo; i < hi; ++i) {
        const int c = info.order[i];
        int joined = -1;
        if (want_swaps) {
          for (int r : reps) {
            if (absent || swap_invariant(s, r, c)) {
              joined = info.cls[r];
              break;
            }
          }
        }
        if (joined < 0) {
          joined = static_cast<int>(info.class_codes.size());
          info.class_codes.emplace_back();
          reps.push_back(c);
        }
        info.cls[c] = joined;
        info.class_codes[joined].push_back(c);
      }
    }
    for (auto& codes : info.class_codes) std::sort(codes.begin(), codes.end());
    return info;
  }

  CanonicalKey make_key(const Set& s, const NodeInfo& info) {
    CanonicalKey key;
    if (!options_.canonicalize) {
      key.form = s;
      key.hash = hash_form(key.form);
      return key;
    }
    const int k = universe_.k();
    const int n = universe_.n();

    // Per tie group, every distinct arrangement of its swap classes.
    std::vector<std::vector<std::vector<int>>> arrangements;
    std::uint64_t total = 1;
    bool exact = true;
    for (std::size_t g = 0; g + 1 < info.group_start.size(); ++g) {
      std::vector<int> ids;
      for (int i = info.group_start[g]; i < info.group_start[g + 1]; ++i)
        ids.push_back(info.cls[info.order[i]]);
      std::sort(ids.begin(), ids.end());
      std::vector<std::vector<int>> perms;
      do {
        perms.push_back(ids);
        if (perms.size() > kCanonMaxArrangements) break;
      } while (std::next_permutation(ids.begin(), ids.end()));
      total *= perms.size();
      if (perms.size() > kCanonMaxArrangements || total > kCanonMaxArrangements ||
          total * s.size() > kCanonMaxWork) {
        exact = false;
        break;
      }
      arrangements.push_back(std::move(perms));
    }
    if (!exact) {
      arrangements.clear();
      for (std::size_t g = 0; g + 1 < info.group_start.size(); ++g) {
        std::vector<int> ids;
        for (int i = info.group_start[g]; i < info.group_start[g + 1]; ++i)
          ids.push_back(info.cls[info.order[i]]);
        arrangements.push_back({ids});
      }
    }

    std::vector<int> label(static_cast<std::size_t>(k));
    std::vector<std::size_t> pick(arrangements.size(), 0);
    std::vector<int> used(info.class_codes.size());
    Set form(s.size());
    bool have_best = false;
    while (true) {
      std::fill(used.begin(), used.end(), 0);
      for (std::size_t g = 0; g < arrangements.size(); ++g) {
        const auto& ids = arrangements[g][pick[g]];
        for (std::size_t j = 0; j < ids.size(); ++j) {
          const int cls = ids[j];
          const int code = info.class_codes[cls][used[cls]++];
          label[code] = info.group_start[g] + static_cast<int>(j);
        }
      }
      for (std::size_t m = 0; m < s.size(); ++m) {
        const Code* d = universe_.digits(s[m]);
        Index v = 0;
        for (int p = 0; p < n; ++p) v += static_cast<Index>(label[d[p]]) * universe_.weight(p);
        form[m] = v;
      }
      std::sort(form.begin(), form.end());
      if (!have_best || form < key.form) {
        key.form = form;
        have_best = true;
      }
      std::size_t g = 0;
      while (g < pick.size() && ++pick[g] == arrangements[g].size()) pick[g++] = 0;
      if (g == pick.size()) break;
    }
    key.exact = exact;
    key.hash = hash_form(key.form);
    return key;
  }

  // --- memo -----------------------------------------------------------------

  using Lru = std::list<std::pair<CanonicalKey, Entry>>;

  Entry* find(const CanonicalKey& key) {
    auto it = index_.find(&key);
    if (it == index_.end()) return nullptr;
    lru_.splice(lru_.begin(), lru_, it->second);
    return &it->second->second;
  }

  Entry& insert(CanonicalKey key) {
    lru_.emplace_front(std::move(key), Entry{});
    index_.emplace(&lru_.front().first, lru_.begin());
    while (options_.memo_cap != 0 && lru_.size() > options_.memo_cap) {
      index_.erase(&lru_.back().first);
      lru_.pop_back();
    }
    return lru_.front().second;
  }

  const Entry* peek(const Set& s) {
    if (s.size() < 3) return nullptr;
    NodeInfo info = analyse(s);
    return find(make_key(s, info));
  }

  // --- search ---------------------------------------------------------------

  // Canonical representatives of guesses under the swap classes, ascending.
  std::vector<Index> candidate_guesses(const Set& s, const NodeInfo& info) {
    std::vector<Index> out;
    const int k = universe_.k();
    const int n = universe_.n();
    const bool root = options_.root_symmetry && s.size() == initial_size_;
    if (root) {
      std::vector<std::vector<int>> patterns;
      std::vector<int> parts;
      multiplicity_guesses(n, n, k, parts, patterns);
      for (const auto& pat : patterns) {
        Index u = 0;
        int p = 0;
        for (std::size_t c = 0; c < pat.size(); ++c)
          for (int r = 0; r < pat[c]; ++r) u += static_cast<Index>(c) * universe_.weight(p++);
        out.push_back(u);
      }
      std::sort(out.begin(), out.end());
    } else if (!options_.code_symmetry) {
      out.resize(universe_.size());
      std::iota(out.begin(), out.end(), Index{0});
    } else {
      std::vector<int> next(info.class_codes.size(), 0);
      std::vector<int> seen(static_cast<std::size_t>(k), 0);
      std::vector<int> digits(static_cast<std::size_t>(n), 0);
      // Depth-first over positions; a code new to the guess must be the
      // smallest unused member of its swap class.
      auto rec = [&](auto&& self, int p, Index acc) -> void {
        if (p == n) {
          out.push_back(acc);
          return;
        }
        for (int c = 0; c < k; ++c) {
          const int cl = info.cls[c];
          const bool fresh = seen[c] == 0;
          if (fresh && info.class_codes[cl][next[cl]] != c) continue;
          if (fresh) {
            ++next[cl];
          }
          ++seen[c];
          self(self, p + 1, acc + static_cast<Index>(c) * universe_.weight(p));
          --seen[c];
          if (fresh) --next[cl];
        }
      };
      rec(rec, 0, 0);
    }
    if (options_.members_only) {
      std::erase_if(out, [&](Index u) { return !std::binary_search(s.begin(), s.end(), u); });
    }
    return out;
  }

  std::vector<Candidate> ordered_candidates(const Set& s, const NodeInfo& info, int d) {
    std::vector<Candidate> out;
    const std::uint64_t child_cap = capacity_[d - 1];
    for (Index g : candidate_guesses(s, info)) {
      Index max_class = 0;
      Index classes = 0;
      touched_.clear();
      for (Index a : s) {
        const Index f = universe_.feedback(g, a);
        if (class_count_[f]++ == 0) touched_.push_back(f);
      }
      for (Index f : touched_) {
        ++classes;
        if (f != 0) max_class = std::max(max_class, class_count_[f]);
        class_count_[f] = 0;
      }
      const bool member = std::binary_search(s.begin(), s.end(), g);
      if (classes == 1 && !member) continue;  // learns nothing
      if (max_class > child_cap) continue;
      out.push_back({max_class, g});
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
      return a.max_class != b.max_class ? a.max_class < b.max_class : a.guess < b.guess;
    });
    return out;
  }

  std::vector<Set> partition(const Set& s, Index g) {
    touched_.clear();
    feedback_buf_.resize(s.size());
    for (std::size_t m = 0; m < s.size(); ++m) {
      const Index f = universe_.feedback(g, s[m]);
      feedback_buf_[m] = f;
      if (class_count_[f]++ == 0) touched_.push_back(f);
    }
    std::vector<Set> classes;
    classes.reserve(touched_.size());
    for (Index f : touched_) {
      if (f != 0) {
        classes.emplace_back();
        classes.back().reserve(class_count_[f]);
        class_slot_[f] = static_cast<Index>(classes.size());
      }
      class_count_[f] = 0;
    }
    for (std::size_t m = 0; m < s.size(); ++m) {
      const Index f = feedback_buf_[m];
      if (f != 0) classes[class_slot_[f] - 1].push_back(s[m]);
    }
    std::sort(classes.begin(), classes.end(),
              [](const Set& a, const Set& b) { return a.size() > b.size(); });
    return classes;
  }

  bool guess_works(const Set& s, Index g, int d) {
    for (const Set& cls : partition(s, g))
      if (!solvable(cls, d - 1)) return false;
    return true;
  }

  bool separates(const Set& s, Index g) {
    ++sep_gen_;
    if (sep_gen_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      sep_gen_ = 1;
    }
    for (Index a : s) {
      const Index f = universe_.feedback(g, a);
      if (stamp_[f] == sep_gen_) return false;
      stamp_[f] = sep_gen_;
    }
    return true;
  }

  bool separable(const Set& s, const NodeInfo& info) {
    for (Index g : s)
      if (separates(s, g)) return true;
    if (options_.members_only) return false;
    for (Index g : candidate_guesses(s, info))
      if (!std::binary_search(s.begin(), s.end(), g) && separates(s, g)) return true;
    return false;
  }

 public:
  bool solvable(const Set& s, int d) {
    if (s.size() <= 1) return d >= 1 || s.empty();
    if (d <= 1) return false;
    if (s.size() == 2) return true;
    if (capacity_[d] < s.size()) return false;
    check_budget();

    NodeInfo info = analyse(s);
    CanonicalKey key = make_key(s, info);
    if (Entry* e = find(key)) {
      ++memo_hits_;
      if (d >= e->ub) return true;
      if (d < e->lb) return false;
    }
    ++nodes_;

    bool ok = false;
    if (d == 2) {
      ok = separable(s, info);
    } else {
      for (const auto& cand : ordered_candidates(s, info, d)) {
        if (guess_works(s, cand.guess, d)) {
          ok = true;
          break;
        }
      }
    }

    Entry* e = find(key);
    if (e == nullptr) e = &insert(std::move(key));
    if (ok) {
      e->ub = static_cast<std::uint8_t>(std::min<int>(e->ub, d));
    } else {
      e->lb = static_cast<std::uint8_t>(std::max<int>(e->lb, d + 1));
    }
    return ok;
  }

  std::uint64_t initial_size() const noexcept { return initial_size_; }

 private:
  GameParams params_;
  SolverOptions options_;
  Universe universe_;
  std::uint64_t initial_size_ = 0;
  std::vector<std::uint64_t> capacity_;

  Lru lru_;
  std::unordered_map<const CanonicalKey*, Lru::iterator, KeyHash, KeyEq> index_;

  std::vector<Index> class_count_;
  std::vector<Index> stamp_;
  std::vector<Index> class_slot_;
  std::vector<Index> touched_;
  std::vector<Index> feedback_buf_;
  std::vector<Index> member_mark_;
  std::vector<int> sig_;
  Index mark_gen_ = 0;
  Index sep_gen_ = 0;

  std::uint64_t nodes_ = 0;
  std::uint64_t memo_hits_ = 0;
  bool clock_running_ = false;
  std::chrono::steady_clock::time_point started_;
};

// ---------------------------------------------------------------------------

Solver::Solver(GameParams params, SolverOptions options)
    : impl_(std::make_unique<Impl>(params, options)) {}
Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

const GameParams& Solver::params() const noexcept { return impl_->params(); }
const SolverOptions& Solver::options() const noexcept { return impl_->options(); }
std::uint64_t Solver::nodes_expanded() const noexcept { return impl_->nodes(); }
std::uint64_t Solver::memo_hits() const noexcept { return impl_->hits(); }
std::size_t Solver::memo_size() const noexcept { return impl_->memo_size(); }

int Solver::minimax_cost(const AnswerSet& set) {
  impl_->reset_clock();
  const auto s = impl_->to_indices(set);
  return impl_->cost(s, static_cast<int>(s.size()));
}

Solver::Move Solver::best_move(const AnswerSet& set) {
  impl_->reset_clock();
  return impl_->best_move(impl_->to_indices(set));
}

SolveResult Solver::solve() {
  impl_->reset_clock();
  const auto started = std::chrono::steady_clock::now();
  const GameParams& p = impl_->params();
  const Bounds bounds = p.mode.kind == ModeKind::full ? theorem_bounds(p.k, p.n)
                                                       : permutation_bounds(p.k);
  SolveResult result;
  result.params = p;
  result.bounds = bounds;
  const Set s = impl_->full_set();
  result.value = impl_->cost(s, bounds.upper);
  if (s.size() > 1) {
    impl_->reset_clock();
    result.first_guess = impl_->best_move(s).guess;
  } else {
    result.first_guess = impl_->string_of(s.front());
  }
  result.within_bounds = bounds.contains(result.value);
  result.nodes_expanded = impl_->nodes();
  result.memo_hits = impl_->hits();
  result.elapsed = std::chrono::steady_clock::now() - started;
  return result;
}

SolveResult solve_F(int k, int n, const SolverOptions& options) {
  Solver solver(GameParams{k, n, default_mode(ModeKind::full)}, options);
  return solver.solve();
}

SolveResult solve_G(int k, const SolverOptions& options) {
  Solver solver(GameParams{k, k, default_mode(ModeKind::permutation)}, options);
  return solver.solve();
}

CanonicalKey canonicalize(const AnswerSet& set) {
  const GameParams& p = set.params();
  Solver::Impl impl(p, SolverOptions{}, false);
  return impl.key_for(impl.to_indices(set));
}

}  // namespace clearmm
