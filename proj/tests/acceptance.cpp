// Acceptance run: one PASS/FAIL line per headline criterion, each with its own
// time budget. Exit status is nonzero when any line fails.
//
//   clearmm_acceptance [--extended]
//
// --extended also solves the five-position row of the table (about a minute).

#include <chrono>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "clearmm/game.hpp"
#include "clearmm/verify.hpp"

using namespace clearmm;
using Clock = std::chrono::steady_clock;
using std::chrono::seconds;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail,
            std::chrono::duration<double> elapsed, seconds budget) {
  const bool in_time = budget.count() == 0 || elapsed <= budget;
  const bool ok = pass && in_time;
  if (!ok) ++failures;
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2fs", elapsed.count());
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << " (" << secs;
  if (budget.count()) std::cout << ", budget " << budget.count() << "s";
  if (!in_time) std::cout << ", over budget";
  std::cout << ")" << std::endl;
}

void report(const std::string& name, const CheckResult& r, seconds budget) {
  report(name, r.pass, r.detail, r.elapsed, budget);
}

}  // namespace

int main(int argc, char** argv) {
  bool extended = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--extended") == 0) {
      extended = true;
    } else {
      std::cerr << "usage: " << argv[0] << " [--extended]\n";
      return 2;
    }
  }
  const std::uint64_t seed = 20240501;
  ValueTable table;

  {
    const auto start = Clock::now();
    const auto a = feedback_pi(CodeString{1, 1, 1, 2, 3}, CodeString{1, 1, 2, 3, 3}).to_string();
    const auto b = feedback_pi(CodeString{2, 2, 2, 2, 4}, CodeString{2, 1, 3, 4, 2}).to_string();
    report("color feedback examples", a == "GGBYG" && b == "GYBBY",
           "(1,1,1,2,3)|(1,1,2,3,3)=" + a + " (2,2,2,2,4)|(2,1,3,4,2)=" + b,
           Clock::now() - start, seconds{1});
  }

  report("feedback recovery from hit/miss", check_pi_from_tau(4096), seconds{10});
  report("answer sets of the two-round script", check_answer_set_example(), seconds{1});
  report("two ones per column", check_two_ones_permanent(4, 100000, seed), seconds{60});
  report("greedy permanent audit", check_greedy_permanent({3, 4, 5, 6}, 500, seed), seconds{60});
  report("greedy codemaker lower bound", check_greedy_lower_bound(5, 10000, 4, seed), seconds{0});
  report("small alphabets F(k,n)=k", check_small_alphabet(table, 4096, 0), seconds{300});
  report("alphabet multiples F(cn,n)=c+n-1",
         check_multiple_alphabet(table, {{4, 2}, {6, 2}, {8, 2}, {6, 3}}), seconds{600});

  {
    // Both gated tiers on one line; each entry must finish within a minute.
    const auto start = Clock::now();
    const auto tier = extended ? TableTier::extended : TableTier::slow;
    const auto rows = check_table(table, tier, seconds{extended ? 0 : 60});
    bool pass = true;
    std::ostringstream detail;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      pass = pass && rows[i].pass;
      char secs[32];
      std::snprintf(secs, sizeof secs, "%.2fs", rows[i].elapsed.count());
      detail << (i ? "; " : "") << rows[i].name.substr(6) << " " << rows[i].detail << " " << secs;
    }
    report(extended ? "table values (fast, slow and n=5 rows)" : "table values (fast and slow tiers)",
           pass, detail.str(), Clock::now() - start, seconds{0});
  }

  report("strategy guarantees",
         check_strategy_guarantees(4096, {{4, 2}, {6, 2}, {6, 3}}, 5), seconds{0});

  std::map<int, int> rows = {{1, 8}, {2, 9}, {3, 8}, {4, 7}};
  if (extended) rows[5] = 9;
  report("monotonicity along rows", check_monotonicity(table, rows), seconds{0});

  report("solver toggles", check_solver_toggles(256), seconds{0});

  std::cout << (failures ? "FAIL" : "PASS") << std::endl;
  return failures ? 1 : 0;
}
