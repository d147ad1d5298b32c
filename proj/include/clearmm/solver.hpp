#pragma once

// Exact worst-case search for the least number of rounds that guarantees a
// win. Decides "can this answer set be finished within d rounds?" by depth-first
// search over guesses, deepening d from a counting lower bound, with results
// memoized under a code-relabeling canonical form.

#include <chrono>
#include <cstdint>
#include <list>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "clearmm/game.hpp"

namespace clearmm {

struct Bounds {
  int lower = 1;
  int upper = 1;

  bool contains(int v) const noexcept { return lower <= v && v <= upper; }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

// Proven bounds on the full game value for k codes and n positions.
Bounds theorem_bounds(int k, int n);

// Bounds on the permutation game value: exactly k.
Bounds permutation_bounds(int k);

struct SolverOptions {
  std::uint64_t node_cap = 0;               // 0: unlimited
  std::chrono::milliseconds time_cap{0};    // 0: unlimited
  std::size_t memo_cap = std::size_t{1} << 20;
  bool canonicalize = true;   // memo keys up to code relabeling
  bool code_symmetry = true;  // skip guesses equivalent under set automorphisms
  bool root_symmetry = true;  // one first guess per multiplicity pattern
  bool members_only = false;  // restrict guesses to the current answer set
};

// Thrown when a node or time cap is hit. Carries what was established so far.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& message, Bounds known)
      : Error(ErrorCode::resource_exhausted, message), known_(known) {}
  Bounds known() const noexcept { return known_; }

 private:
  Bounds known_;
};

struct SolveResult {
  GameParams params;
  int value = 0;
  Bounds bounds;
  bool within_bounds = false;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t memo_hits = 0;
  std::chrono::duration<double> elapsed{};
  std::optional<CodeString> first_guess;

  // One line of key=value pairs, as appended to the results table.
  std::string record() const;
};

// Fingerprint of an answer set up to relabeling of codes.
struct CanonicalKey {
  std::vector<std::uint32_t> form;
  std::size_t hash = 0;
  // False when the tie-break search was cut short; the key is then still sound
  // for memoization but not guaranteed invariant under relabeling.
  bool exact = true;

  friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) {
    return a.hash == b.hash && a.form == b.form;
  }
};

CanonicalKey canonicalize(const AnswerSet& set);

class Solver {
 public:
  explicit Solver(GameParams params, SolverOptions options = {});
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  const GameParams& params() const noexcept;
  const SolverOptions& options() const noexcept;

  // Least worst-case number of rounds for a nonempty set, counting the round
  // in which the answer is guessed.
  int minimax_cost(const AnswerSet& set);

  // A guess achieving minimax_cost(set); the first in heuristic order.
  struct Move {
    CodeString guess;
    int worst_case = 0;
  };
  Move best_move(const AnswerSet& set);

  // Solves from the full answer set of params().
  SolveResult solve();

  std::uint64_t nodes_expanded() const noexcept;
  std::uint64_t memo_hits() const noexcept;
  std::size_t memo_size() const noexcept;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;

  friend CanonicalKey canonicalize(const AnswerSet& set);
};

SolveResult solve_F(int k, int n, const SolverOptions& options = {});
SolveResult solve_G(int k, const SolverOptions& options = {});

}  // namespace clearmm
