#include "clearmm/verify.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "clearmm/adversary.hpp"
#include "clearmm/strategies.hpp"

namespace clearmm {

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  std::chrono::duration<double> elapsed() const { return Clock::now() - start_; }

 private:
  Clock::time_point start_ = Clock::now();
};

CheckResult finish(std::string name, bool pass, std::string detail, const Timer& timer) {
  return {std::move(name), pass, std::move(detail), timer.elapsed()};
}

std::uint64_t power(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    v *= base;
  }
  return v;
}

std::string pair_text(int k, int n) {
  return "(" + std::to_string(k) + "," + std::to_string(n) + ")";
}

CodeString random_guess(std::mt19937_64& rng, int k, int n) {
  std::uniform_int_distribution<int> code(1, k);
  std::vector<Code> g(static_cast<std::size_t>(n));
  for (auto& c : g) c = static_cast<Code>(code(rng));
  return CodeString(std::move(g));
}

CodeString random_permutation(std::mt19937_64& rng, int n) {
  std::vector<Code> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = static_cast<Code>(i + 1);
  std::shuffle(g.begin(), g.end(), rng);
  return CodeString(std::move(g));
}

GameParams permutation_game(int k) { return {k, k, default_mode(ModeKind::permutation)}; }
GameParams full_game(int k, int n) { return {k, n, default_mode(ModeKind::full)}; }

}  // namespace

std::string CheckResult::to_string() const {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", elapsed.count());
  return std::string(pass ? "PASS " : "FAIL ") + name + ": " + detail + " (" + secs + "s)";
}

const SolveResult& ValueTable::F(int k, int n) {
  const auto key = std::make_pair(k, n);
  auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  return values_.emplace(key, solve_F(k, n, options_)).first->second;
}

// ---------------------------------------------------------------------------

CheckResult check_feedback_examples() {
  Timer t;
  const std::string a = feedback_pi({1, 1, 1, 2, 3}, {1, 1, 2, 3, 3}).to_string();
  const std::string b = feedback_pi({2, 2, 2, 2, 4}, {2, 1, 3, 4, 2}).to_string();
  const bool pass = a == "GGBYG" && b == "GYBBY";
  return finish("feedback examples", pass,
                "(1,1,1,2,3)/(1,1,2,3,3) -> " + a + ", (2,2,2,2,4)/(2,1,3,4,2) -> " + b, t);
}

namespace {

struct SweepTally {
  std::uint64_t mismatches = 0;
  std::string first_bad;
};

template <int N>
std::vector<Code> all_strings(int k, std::uint64_t size) {
  std::vector<Code> all(size * N);
  std::vector<Code> cur(N, 1);
  for (std::uint64_t s = 0; s < size; ++s) {
    std::copy(cur.begin(), cur.end(), all.begin() + static_cast<std::ptrdiff_t>(s * N));
    for (int p = N - 1; p >= 0; --p) {
      if (cur[p] < k) {
        ++cur[p];
        break;
      }
      cur[p] = 1;
    }
  }
  return all;
}

template <int N>
bool routes_agree(std::span<const Code, N> guess, std::span<const Code, N> answer,
                  std::span<const int> counts, std::span<int> residual) {
  Match tau[N];
  Mark via_tau[N];
  Mark direct[N];
  compute_tau(guess, answer, std::span<Match, N>(tau));
  const bool ok = compute_pi_from_tau(std::span<const Match, N>(tau), counts, guess,
                                      std::span<Mark, N>(via_tau), residual);
  compute_pi(guess, answer, std::span<Mark, N>(direct), residual);
  return ok && std::equal(via_tau, via_tau + N, direct);
}

// Off the fast path: describes the first pair where the routes differ.
template <int N>
[[gnu::noinline]] std::string first_mismatch(int k, const std::vector<Code>& all,
                                             std::uint64_t size) {
  std::array<int, kMaxCodes + 1> residual{};
  std::array<int, kMaxCodes> counts{};
  auto text = [](std::span<const Code, N> s) {
    return CodeString(std::vector<Code>(s.begin(), s.end())).to_string();
  };
  for (std::uint64_t a = 0; a < size; ++a) {
    std::span<const Code, N> answer(all.data() + a * N, N);
    counts.fill(0);
    for (Code c : answer) ++counts[c - 1];
    for (std::uint64_t g = 0; g < size; ++g) {
      std::span<const Code, N> guess(all.data() + g * N, N);
      if (!routes_agree<N>(guess, answer, std::span<const int>(counts.data(), k), residual))
        return "k=" + std::to_string(k) + " n=" + std::to_string(N) + " guess " + text(guess) +
               " answer " + text(answer);
    }
  }
  return {};
}

// Compares both routes to G/Y/B feedback over every pair of [k]^N. N is a
// template parameter so the kernels unroll.
template <int N>
void sweep_pairs(int k, std::uint64_t size, SweepTally& tally) {
  const std::vector<Code> all = all_strings<N>(k, size);
  std::array<int, kMaxCodes + 1> residual{};
  std::array<int, kMaxCodes> counts_storage{};
  const std::span<const int> counts(counts_storage.data(), static_cast<std::size_t>(k));
  std::uint64_t bad = 0;
  for (std::uint64_t a = 0; a < size; ++a) {
    std::span<const Code, N> answer(all.data() + a * N, N);
    counts_storage.fill(0);
    for (Code c : answer) ++counts_storage[c - 1];
    for (std::uint64_t g = 0; g < size; ++g)
      bad += !routes_agree<N>(std::span<const Code, N>(all.data() + g * N, N), answer, counts,
                              residual);
  }
  if (bad && tally.mismatches == 0) tally.first_bad = first_mismatch<N>(k, all, size);
  tally.mismatches += bad;
}

// One entry per string length. Calling through the table keeps each sweep a
// separate function; expanding them all into one caller exhausts the inliner
// and leaves the kernels out of line, at twice the cost.
using SweepFn = void (*)(int, std::uint64_t, SweepTally&);

template <int... Ns>
constexpr std::array<SweepFn, sizeof...(Ns)> sweep_table(std::integer_sequence<int, Ns...>) {
  return {&sweep_pairs<Ns + 1>...};
}

}  // namespace

CheckResult check_pi_from_tau(std::uint64_t max_universe) {
  static constexpr auto kSweeps = sweep_table(std::make_integer_sequence<int, kMaxPositions>{});
  Timer t;
  std::uint64_t pairs = 0;
  int games = 0;
  SweepTally tally;
  for (int n = 1; n <= kMaxPositions; ++n) {
    if (power(2, n, max_universe) > max_universe) break;
    for (int k = 1; k <= kMaxCodes; ++k) {
      const std::uint64_t size = power(static_cast<std::uint64_t>(k), n, max_universe);
      if (size > max_universe) break;
      ++games;
      kSweeps[static_cast<std::size_t>(n) - 1](k, size, tally);
      pairs += size * size;
    }
  }
  std::string detail = std::to_string(pairs) + " pairs over " + std::to_string(games) +
                       " (k,n) games with k^n <= " + std::to_string(max_universe) + ", " +
                       std::to_string(tally.mismatches) + " mismatches";
  if (tally.mismatches) detail += "; first: " + tally.first_bad;
  return finish("pi from tau", tally.mismatches == 0, detail, t);
}

CheckResult check_answer_set_example() {
  Timer t;
  const GameParams p = full_game(3, 3);
  const AnswerSet p0 = full_answer_set(p);
  const AnswerSet p1 = filter_answer_set(p0, {1, 2, 3}, FeedbackString::parse("GGB"));
  const AnswerSet p2 = filter_answer_set(p1, {1, 2, 2}, FeedbackString::parse("GGB"));
  const AnswerSet want1(p, {{1, 2, 1}, {1, 2, 2}});
  const AnswerSet want2(p, {{1, 2, 1}});
  auto text = [](const AnswerSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
      out += (i ? " " : "") + ("(" + s.members()[i].to_string() + ")");
    return out + "}";
  };
  return finish("answer set example", p1 == want1 && p2 == want2,
                "P1=" + text(p1) + " P2=" + text(p2), t);
}

CheckResult check_two_ones_permanent(int exhaustive_n, int random_samples, std::uint64_t seed) {
  Timer t;
  std::uint64_t examined = 0;
  std::uint64_t qualifying = 0;
  std::uint64_t violations = 0;

  auto examine = [&](const BinaryMatrix& m) {
    ++examined;
    for (int c = 0; c < m.cols(); ++c)
      if (m.column_ones(c) < 2) return;
    const std::uint64_t perm = permanent(m);
    if (perm == 0) return;
    ++qualifying;
    if (perm < 2) ++violations;
  };

  for (int n = 1; n <= exhaustive_n; ++n) {
    const int cells = n * n;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
      BinaryMatrix m(n, n, false);
      for (int i = 0; i < cells; ++i)
        if ((bits >> i) & 1) m.set(i / n, i % n, true);
      examine(m);
    }
  }
  std::mt19937_64 rng(seed);
  for (int n : {5, 6}) {
    for (int s = 0; s < random_samples; ++s) {
      // Alternate densities so sparse matrices near the two-ones threshold show up.
      std::bernoulli_distribution cell(s % 2 ? 0.5 : 0.3);
      BinaryMatrix m(n, n, false);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m.set(r, c, cell(rng));
      examine(m);
    }
  }
  return finish("two ones per column", violations == 0,
                std::to_string(examined) + " matrices (all n<=" + std::to_string(exhaustive_n) +
                    ", " + std::to_string(random_samples) + " random each for n=5,6), " +
                    std::to_string(qualifying) + " qualifying, " + std::to_string(violations) +
                    " with permanent < 2",
                t);
}

CheckResult check_greedy_permanent(const std::vector<int>& ks, int games, std::uint64_t seed) {
  Timer t;
  std::mt19937_64 rng(seed);
  std::uint64_t rounds = 0;
  int violations = 0;
  std::string first_bad;
  for (int k : ks) {
    const GameParams p = permutation_game(k);
    const AnswerSet p0 = full_answer_set(p);
    for (int g = 0; g < games; ++g) {
      AnswerSet current = p0;
      History trace;
      for (int r = 0; r < 4 * k; ++r) {
        CodeString guess = current.size() == 1       ? current.members().front()
                           : std::bernoulli_distribution(0.5)(rng) ? random_permutation(rng, k)
                                                                   : random_guess(rng, k, k);
        auto step = greedy_feedback(current, guess);
        trace.push_back({guess, step.feedback});
        current = std::move(step.next);
        if (step.feedback.solved()) break;
      }
      const AuditReport report = audit_lemma2(p, trace, AuditExpectation::equality);
      rounds += report.records.size();
      if (!report.passed() && violations++ == 0)
        first_bad = "k=" + std::to_string(k) + " game " + std::to_string(g) + " round " +
                    std::to_string(*report.first_violation);
    }
  }
  std::string ks_text;
  for (int k : ks) ks_text += (ks_text.empty() ? "" : ",") + std::to_string(k);
  std::string detail = std::to_string(games) + " games per k in {" + ks_text + "}, " +
                       std::to_string(rounds) + " audited rounds, " + std::to_string(violations) +
                       " violations";
  if (violations) detail += "; first: " + first_bad;
  return finish("greedy permanent audit", violations == 0, detail, t);
}

CheckResult check_greedy_lower_bound(int max_k, int random_sequences, int exhaustive_max_k,
                                     std::uint64_t seed) {
  Timer t;
  std::mt19937_64 rng(seed);
  int violations = 0;
  std::string first_bad;
  auto fail = [&](std::string what) {
    if (violations++ == 0) first_bad = std::move(what);
  };
  std::uint64_t strategy_games = 0;
  std::uint64_t random_games = 0;
  std::uint64_t exhaustive_states = 0;

  for (int k = 2; k <= max_k; ++k) {
    const GameParams p = permutation_game(k);
    const AnswerSet p0 = full_answer_set(p);

    // Named strategies play to the end.
    for (StrategyKind kind : {StrategyKind::constant, StrategyKind::block_scan, StrategyKind::optimal}) {
      SimulationOptions options;
      options.strategy.kind = kind;
      const SimulationResult r = simulate_worst_case(p, Opponent::greedy, options);
      ++strategy_games;
      const std::size_t after = k - 2 == 0 ? p0.size() : r.trace[k - 3].set_size;
      if (after <= 1 || r.max_rounds < k)
        fail(std::string(to_string(kind)) + " k=" + std::to_string(k) + " rounds=" +
             std::to_string(r.max_rounds));
    }

    // Random guess sequences over rounds 1..k-1.
    for (int s = 0; s < random_sequences; ++s) {
      AnswerSet current = p0;
      ++random_games;
      for (int r = 1; r <= k - 1; ++r) {
        CodeString guess = std::bernoulli_distribution(0.5)(rng) ? random_permutation(rng, k)
                                                                 : random_guess(rng, k, k);
        auto step = greedy_feedback(current, guess);
        current = std::move(step.next);
        if (step.feedback.solved()) {
          fail("random k=" + std::to_string(k) + " solved in round " + std::to_string(r));
          break;
        }
        if (r == k - 2 && current.size() <= 1)
          fail("random k=" + std::to_string(k) + " singleton after round " + std::to_string(r));
      }
    }

    // Every guess sequence, merging sequences that reach the same set.
    if (k <= exhaustive_max_k) {
      const AnswerSet guesses = full_answer_set(full_game(k, k));
      std::set<std::vector<CodeString>> frontier{{p0.members().begin(), p0.members().end()}};
      for (int r = 1; r <= k - 1; ++r) {
        std::set<std::vector<CodeString>> next;
        for (const auto& members : frontier) {
          const AnswerSet current(p, members);
          for (const auto& guess : guesses.members()) {
            auto step = greedy_feedback(current, guess);
            ++exhaustive_states;
            if (step.feedback.solved())
              fail("exhaustive k=" + std::to_string(k) + " solved in round " + std::to_string(r));
            if (r <= k - 2 && step.next.size() <= 1)
              fail("exhaustive k=" + std::to_string(k) + " singleton after round " +
                   std::to_string(r));
            next.emplace(step.next.members().begin(), step.next.members().end());
          }
        }
        frontier = std::move(next);
      }
    }
  }
  std::string detail = "k<=" + std::to_string(max_k) + ": " + std::to_string(strategy_games) +
                       " strategy games, " + std::to_string(random_games) +
                       " random sequences, " + std::to_string(exhaustive_states) +
                       " exhaustive (set, guess) steps for k<=" + std::to_string(exhaustive_max_k) +
                       ", " + std::to_string(violations) + " violations";
  if (violations) detail += "; first: " + first_bad;
  return finish("greedy lower bound", violations == 0, detail, t);
}

// ---------------------------------------------------------------------------

namespace {

struct InstanceTally {
  int checked = 0;
  int failed = 0;
  std::string failures;
  std::string values;

  void record(int k, int n, int value, bool ok) {
    ++checked;
    values += (values.empty() ? "" : " ") + ("F" + pair_text(k, n) + "=" + std::to_string(value));
    if (!ok) {
      ++failed;
      failures += (failures.empty() ? "" : " ") + ("F" + pair_text(k, n));
    }
  }

  void resource(int k, int n, const std::string& what) {
    ++checked;
    ++failed;
    failures += (failures.empty() ? "" : " ") + ("F" + pair_text(k, n) + " (" + what + ")");
  }
};

}  // namespace

CheckResult check_small_alphabet(ValueTable& table, std::uint64_t max_universe, int max_n) {
  Timer t;
  InstanceTally tally;
  const int top_n = max_n > 0 ? std::min(max_n, 12) : 12;
  for (int n = 1; n <= top_n; ++n) {
    for (int k = 1; k <= n; ++k) {
      if (power(static_cast<std::uint64_t>(k), n, max_universe) > max_universe) break;
      try {
        const int v = table.F(k, n).value;
        tally.record(k, n, v, v == k);
      } catch (const Error& e) {
        tally.resource(k, n, e.what());
      }
    }
  }
  std::string detail = std::to_string(tally.checked) + " instances with k<=n, k^n<=" +
                       std::to_string(max_universe) +
                       (max_n > 0 ? ", n<=" + std::to_string(max_n) : std::string()) + ": " +
                       tally.values;
  if (tally.failed) detail += "; wrong: " + tally.failures;
  return finish("F(k,n) = k for k <= n", tally.failed == 0 && tally.checked > 0, detail, t);
}

CheckResult check_multiple_alphabet(ValueTable& table,
                                    const std::vector<std::pair<int, int>>& instances) {
  Timer t;
  InstanceTally tally;
  for (auto [k, n] : instances) {
    try {
      const int v = table.F(k, n).value;
      tally.record(k, n, v, k % n == 0 && v == k / n + n - 1);
    } catch (const Error& e) {
      tally.resource(k, n, e.what());
    }
  }
  std::string detail = tally.values;
  if (tally.failed) detail += "; wrong: " + tally.failures;
  return finish("F(cn,n) = c+n-1", tally.failed == 0, detail, t);
}

CheckResult check_remainder_alphabet(ValueTable& table,
                                     const std::vector<std::pair<int, int>>& instances) {
  Timer t;
  InstanceTally tally;
  for (auto [k, n] : instances) {
    try {
      const int v = table.F(k, n).value;
      const int c = k / n;
      tally.record(k, n, v, k % n != 0 && c >= 1 && c + n - 1 <= v && v <= c + n);
    } catch (const Error& e) {
      tally.resource(k, n, e.what());
    }
  }
  std::string detail = tally.values;
  if (tally.failed) detail += "; outside [c+n-1, c+n]: " + tally.failures;
  return finish("c+n-1 <= F(cn+b,n) <= c+n", tally.failed == 0, detail, t);
}

TableTier parse_table_tier(std::string_view text) {
  if (text == "fast") return TableTier::fast;
  if (text == "slow") return TableTier::slow;
  if (text == "extended") return TableTier::extended;
  throw Error(ErrorCode::invalid_input, "unknown tier '" + std::string(text) + "'");
}

std::vector<TableEntry> table_entries(TableTier tier) {
  std::vector<TableEntry> out{{3, 2, 3}, {4, 3, 3}, {5, 3, 4}};
  if (tier == TableTier::fast) return out;
  out.insert(out.end(), {{5, 4, 4}, {6, 4, 4}, {7, 4, 4}});
  if (tier == TableTier::slow) return out;
  out.insert(out.end(), {{6, 5, 5}, {7, 5, 5}, {8, 5, 5}, {9, 5, 5}});
  return out;
}

std::vector<CheckResult> check_table(ValueTable& table, TableTier tier,
                                     std::chrono::seconds per_entry_limit) {
  std::vector<CheckResult> out;
  for (const auto& e : table_entries(tier)) {
    Timer t;
    const std::string name = "table F" + pair_text(e.k, e.n);
    try {
      const SolveResult& r = table.F(e.k, e.n);
      bool pass = r.value == e.expected && r.within_bounds;
      std::string detail = "value " + std::to_string(r.value) + ", published " +
                           std::to_string(e.expected) + ", nodes " +
                           std::to_string(r.nodes_expanded);
      if (per_entry_limit.count() > 0 && r.elapsed > per_entry_limit) {
        pass = false;
        detail += ", over the " + std::to_string(per_entry_limit.count()) + "s limit";
      }
      out.push_back({name, pass, detail, r.elapsed});
    } catch (const Error& e2) {
      out.push_back(finish(name, false, e2.what(), t));
    }
  }
  return out;
}

CheckResult check_monotonicity(ValueTable& table, const std::map<int, int>& rows) {
  Timer t;
  std::string errors;
  for (auto [n, max_k] : rows) {
    for (int k = 1; k <= max_k; ++k) {
      try {
        table.F(k, n);
      } catch (const Error& e) {
        errors += (errors.empty() ? "" : " ") + ("F" + pair_text(k, n) + " unavailable");
      }
    }
  }
  int comparisons = 0;
  std::string violations;
  std::map<int, std::string> row_text;
  const auto& values = table.values();
  for (const auto& [key, result] : values) {
    const auto [k, n] = key;
    row_text[n] += (row_text[n].empty() ? "" : ",") + std::to_string(result.value);
    auto next = values.find({k + 1, n});
    if (next == values.end()) continue;
    ++comparisons;
    if (result.value > next->second.value)
      violations += (violations.empty() ? "" : " ") + ("F" + pair_text(k, n) + ">F" + pair_text(k + 1, n));
  }
  std::string detail = std::to_string(comparisons) + " adjacent pairs;";
  for (const auto& [n, text] : row_text) detail += " n=" + std::to_string(n) + ":[" + text + "]";
  if (!violations.empty()) detail += "; violations: " + violations;
  if (!errors.empty()) detail += "; " + errors;
  return finish("monotone rows", violations.empty() && errors.empty() && comparisons > 0, detail, t);
}

CheckResult check_conjecture(const ValueTable& table) {
  Timer t;
  std::string detail;
  bool pass = true;
  for (int n = 4; n <= 12; ++n) {
    auto it = table.values().find({2 * n - 1, n});
    if (it == table.values().end()) continue;
    const bool holds = it->second.value == n;
    pass = pass && holds;
    detail += (detail.empty() ? "" : ", ") + ("F" + pair_text(2 * n - 1, n) + "=" +
                                               std::to_string(it->second.value) +
                                               (holds ? " holds" : " counterexample"));
  }
  if (detail.empty()) detail = "no F(2n-1,n) with n>3 computed in this run";
  return finish("F(2n-1,n) = n", pass, detail, t);
}

// ---------------------------------------------------------------------------

CheckResult check_strategy_guarantees(std::uint64_t max_universe,
                                      const std::vector<std::pair<int, int>>& block_instances,
                                      int exclusion_max_k, const SolverOptions& solver) {
  Timer t;
  int violations = 0;
  std::string constant_text;
  std::string block_text;
  std::string exclusion_text;
  std::string failures;
  auto fail = [&](const std::string& what) {
    ++violations;
    failures += (failures.empty() ? "" : " ") + what;
  };

  int constant_games = 0;
  for (int n = 1; n <= 12; ++n) {
    for (int k = 1; k <= n; ++k) {
      if (power(static_cast<std::uint64_t>(k), n, max_universe) > max_universe) break;
      SimulationOptions options;
      options.strategy.kind = StrategyKind::constant;
      const auto r = simulate_worst_case(full_game(k, n), Opponent::honest_exhaustive, options);
      ++constant_games;
      if (r.max_rounds != k) fail("constant" + pair_text(k, n) + "=" + std::to_string(r.max_rounds));
    }
  }
  constant_text = "constant == k on " + std::to_string(constant_games) + " instances";

  for (auto [k, n] : block_instances) {
    SimulationOptions options;
    options.strategy.kind = StrategyKind::block_scan;
    options.strategy.solver = solver;
    const auto r = simulate_worst_case(full_game(k, n), Opponent::honest_exhaustive, options);
    const int want = k / n + n - 1;
    block_text += (block_text.empty() ? "" : " ") + pair_text(k, n) + "=" + std::to_string(r.max_rounds);
    if (r.max_rounds != want) fail("block_scan" + pair_text(k, n) + "=" + std::to_string(r.max_rounds));
  }

  int exclusion_worst = 0;
  int exclusion_games = 0;
  for (int k = 2; k <= exclusion_max_k; ++k) {
    int worst = 0;
    for (int pos = 1; pos <= k; ++pos) {
      for (int code = 1; code <= k; ++code) {
        SimulationOptions options;
        options.strategy.kind = StrategyKind::lemma3;
        options.strategy.exclusion = Exclusion{pos, code};
        const auto r = simulate_worst_case(permutation_game(k), Opponent::honest_exhaustive, options);
        exclusion_games += static_cast<int>(r.games);
        worst = std::max(worst, r.max_rounds);
        if (r.max_rounds > k - 1)
          fail("exclusion k=" + std::to_string(k) + " (" + std::to_string(pos) + "," +
               std::to_string(code) + ")=" + std::to_string(r.max_rounds));
      }
    }
    exclusion_worst = std::max(exclusion_worst, worst);
    exclusion_text += (exclusion_text.empty() ? "" : " ") + ("k=" + std::to_string(k) + ":" + std::to_string(worst));
  }

  std::string detail = constant_text + "; block_scan == c+n-1: " + block_text +
                       "; exclusion <= k-1 over " + std::to_string(exclusion_games) +
                       " games: " + exclusion_text;
  if (violations) detail += "; violations: " + failures;
  return finish("strategy guarantees", violations == 0, detail, t);
}

CheckResult check_solver_toggles(std::uint64_t max_universe) {
  Timer t;
  int instances = 0;
  int disagreements = 0;
  int strictly_worse = 0;
  std::string failures;
  std::string witnesses;
  for (int n = 1; n <= 12; ++n) {
    for (int k = 2; k <= kMaxCodes; ++k) {
      if (power(static_cast<std::uint64_t>(k), n, max_universe) > max_universe) break;
      ++instances;
      SolverOptions base;
      SolverOptions no_canon = base;
      no_canon.canonicalize = false;
      SolverOptions plain = no_canon;
      plain.code_symmetry = false;
      plain.root_symmetry = false;
      SolverOptions members = base;
      members.members_only = true;

      const int v = solve_F(k, n, base).value;
      const int v_canon = solve_F(k, n, no_canon).value;
      const int v_plain = solve_F(k, n, plain).value;
      const int v_members = solve_F(k, n, members).value;
      if (v != v_canon || v != v_plain || v_members < v) {
        ++disagreements;
        failures += (failures.empty() ? "" : " ") +
                    ("F" + pair_text(k, n) + "=" + std::to_string(v) + "/" +
                     std::to_string(v_canon) + "/" + std::to_string(v_plain) + "/" +
                     std::to_string(v_members));
      }
      if (v_members > v) {
        if (strictly_worse++ < 4)
          witnesses += (witnesses.empty() ? "" : " ") +
                       ("F" + pair_text(k, n) + " " + std::to_string(v) + "->" + std::to_string(v_members));
      }
    }
  }
  std::string detail = std::to_string(instances) + " games with k^n<=" +
                       std::to_string(max_universe) +
                       ": canonical memo off and all symmetry off agree; restricting guesses to "
                       "the answer set is worse on " +
                       std::to_string(strictly_worse) + " (e.g. " + witnesses + ")";
  if (disagreements) detail += "; disagreements (on/memo off/plain/restricted): " + failures;
  return finish("solver toggles", disagreements == 0 && strictly_worse > 0, detail, t);
}

// ---------------------------------------------------------------------------

VerifyScope parse_verify_scope(std::string_view text) {
  static const std::pair<const char*, VerifyScope> names[] = {
      {"rules", VerifyScope::rules},         {"lemma1", VerifyScope::lemma1},
      {"lemma2", VerifyScope::lemma2},       {"props", VerifyScope::props},
      {"theorem1", VerifyScope::theorem1},   {"theorem2", VerifyScope::theorem2},
      {"theorem3", VerifyScope::theorem3},   {"table", VerifyScope::table},
      {"strategies", VerifyScope::strategies}, {"toggles", VerifyScope::toggles},
      {"all", VerifyScope::all},
  };
  for (const auto& [name, scope] : names)
    if (text == name) return scope;
  throw Error(ErrorCode::invalid_input, "unknown scope '" + std::string(text) + "'");
}

const char* to_string(VerifyScope scope) noexcept {
  switch (scope) {
    case VerifyScope::rules: return "rules";
    case VerifyScope::lemma1: return "lemma1";
    case VerifyScope::lemma2: return "lemma2";
    case VerifyScope::props: return "props";
    case VerifyScope::theorem1: return "theorem1";
    case VerifyScope::theorem2: return "theorem2";
    case VerifyScope::theorem3: return "theorem3";
    case VerifyScope::table: return "table";
    case VerifyScope::strategies: return "strategies";
    case VerifyScope::toggles: return "toggles";
    case VerifyScope::all: return "all";
  }
  return "unknown";
}

bool VerifyReport::passed() const noexcept {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> VerifyReport::lines() const {
  std::vector<std::string> out;
  for (const auto& c : checks) out.push_back(c.to_string());
  out.push_back(passed() ? "PASS" : "FAIL");
  return out;
}

VerifyReport verify(VerifyScope scope, const VerifyOptions& options, const CheckSink& sink) {
  VerifyReport report;
  ValueTable table(options.solver);
  auto emit = [&](CheckResult r) {
    if (sink) sink(r);
    report.checks.push_back(std::move(r));
  };
  auto wants = [&](VerifyScope s) { return scope == s || scope == VerifyScope::all; };
  auto trials = [&](int fallback) { return options.trials > 0 ? options.trials : fallback; };
  auto ks = [&](std::vector<int> fallback) { return options.ks.empty() ? fallback : options.ks; };

  if (wants(VerifyScope::rules)) {
    emit(check_feedback_examples());
    emit(check_pi_from_tau(4096));
    emit(check_answer_set_example());
  }
  if (wants(VerifyScope::lemma1)) emit(check_two_ones_permanent(4, trials(100000), options.seed));
  if (wants(VerifyScope::lemma2)) emit(check_greedy_permanent(ks({3, 4, 5, 6}), trials(500), options.seed));
  if (wants(VerifyScope::props)) {
    const auto k = ks({5});
    emit(check_greedy_lower_bound(*std::max_element(k.begin(), k.end()), trials(10000), 4,
                                  options.seed));
  }
  if (wants(VerifyScope::theorem1)) emit(check_small_alphabet(table, 4096, options.max_n));
  if (wants(VerifyScope::theorem2))
    emit(check_multiple_alphabet(table, {{4, 2}, {6, 2}, {8, 2}, {6, 3}}));
  if (wants(VerifyScope::theorem3))
    emit(check_remainder_alphabet(
        table, {{3, 2}, {5, 2}, {7, 2}, {9, 2}, {4, 3}, {5, 3}, {7, 3}, {8, 3}, {5, 4}, {6, 4}, {7, 4}}));
  if (wants(VerifyScope::table)) {
    for (auto& r : check_table(table, options.tier)) emit(std::move(r));
    std::map<int, int> rows{{1, 8}, {2, 9}, {3, 8}};
    if (options.tier != TableTier::fast) rows[4] = 7;
    if (options.tier == TableTier::extended) rows[5] = 9;
    emit(check_monotonicity(table, rows));
    emit(check_conjecture(table));
  }
  if (wants(VerifyScope::strategies))
    emit(check_strategy_guarantees(4096, {{4, 2}, {6, 2}, {6, 3}}, 5, options.solver));
  if (wants(VerifyScope::toggles)) emit(check_solver_toggles(256));
  return report;
}

}  // namespace clearmm
