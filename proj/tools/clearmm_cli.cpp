// Command-line front end. Links only the C API.
//
// Exit codes: 0 success, 1 usage or input error, 2 engine error, 3 failed
// verification, 4 scripted play ended without solving.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "clearmm/clearmm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitEngine = 2;
constexpr int kExitVerify = 3;
constexpr int kExitUnsolved = 4;

int report(cmm_status status) {
  std::cerr << "error: " << cmm_status_name(status) << ": " << cmm_last_error() << '\n';
  switch (status) {
    case CMM_INVALID_INPUT:
    case CMM_INCONSISTENT:
    case CMM_INVALID_CONFIGURATION:
      return kExitUsage;
    default:
      return kExitEngine;
  }
}

void print_line(const char* line, void*) { std::cout << line << '\n'; }

struct SolverFlags {
  std::uint64_t node_cap = 0;
  std::uint64_t time_cap_ms = 0;
  bool no_canonical = false;
  bool no_symmetry = false;
  bool members_only = false;

  void attach(CLI::App* app) {
    app->add_option("--node-cap", node_cap, "Stop after this many search nodes (0: no cap)");
    app->add_option("--time-cap-ms", time_cap_ms, "Stop after this many milliseconds (0: no cap)");
    app->add_flag("--no-canonical", no_canonical, "Memoize exact sets, not relabeling classes");
    app->add_flag("--no-symmetry", no_symmetry, "Try every guess, ignoring symmetries");
    app->add_flag("--members-only", members_only, "Restrict guesses to the current answer set");
  }

  cmm_solver_options options() const {
    cmm_solver_options o;
    cmm_solver_options_init(&o);
    o.node_cap = node_cap;
    o.time_cap_ms = time_cap_ms;
    o.canonicalize = !no_canonical;
    o.code_symmetry = !no_symmetry;
    o.root_symmetry = !no_symmetry;
    o.members_only = members_only;
    return o;
  }
};

// ---------------------------------------------------------------------------

struct FeedbackCmd {
  std::string answer;
  std::string guess;
  std::string kind = "pi";

  int run() const {
    char out[64];
    if (cmm_status s = cmm_feedback(answer.c_str(), guess.c_str(), kind.c_str(), out, sizeof out))
      return report(s);
    std::cout << out << '\n';
    return kExitOk;
  }
};

struct FilterCmd {
  int k = 0;
  int n = 0;
  std::string mode = "full";
  std::vector<std::string> rounds;
  std::size_t limit = 100;

  int run() const {
    cmm_answer_set* set = nullptr;
    if (cmm_status s = cmm_answer_set_full(k, n, mode.c_str(), &set)) return report(s);
    for (const auto& r : rounds) {
      const auto eq = r.find('=');
      if (eq == std::string::npos) {
        cmm_answer_set_destroy(set);
        std::cerr << "error: round '" << r << "' is not GUESS=FEEDBACK\n";
        return kExitUsage;
      }
      cmm_answer_set* next = nullptr;
      const cmm_status s =
          cmm_answer_set_filter(set, r.substr(0, eq).c_str(), r.substr(eq + 1).c_str(), &next);
      cmm_answer_set_destroy(set);
      if (s) return report(s);
      set = next;
    }
    const std::size_t size = cmm_answer_set_size(set);
    std::cout << "|P|=" << size << '\n';
    char buf[CMM_CODE_TEXT];
    for (std::size_t i = 0; i < size && i < limit; ++i) {
      cmm_answer_set_member(set, i, buf, sizeof buf);
      std::cout << buf << '\n';
    }
    if (size > limit) std::cout << "... " << size - limit << " more\n";
    cmm_answer_set_destroy(set);
    return kExitOk;
  }
};

struct PlayCmd {
  int k = 0;
  int n = 0;
  std::string mode = "full";
  std::string feedback;
  std::string opponent = "fixed";
  std::string answer;
  std::string script;
  std::uint64_t seed = 0;
  bool has_seed = false;
  bool hide_set_size = false;

  int run() const {
    cmm_game_config config{};
    config.k = k;
    config.n = n;
    config.mode = mode.c_str();
    config.feedback = feedback.empty() ? nullptr : feedback.c_str();
    config.opponent = opponent.c_str();
    config.answer = answer.empty() ? nullptr : answer.c_str();
    config.has_seed = has_seed;
    config.seed = seed;
    cmm_game* game = nullptr;
    if (cmm_status s = cmm_game_create(&config, &game)) return report(s);
    const int code = loop(game);
    cmm_game_destroy(game);
    return code;
  }

 private:
  int loop(cmm_game* game) const {
    std::ifstream file;
    std::istream* in = &std::cin;
    const bool scripted = !script.empty() && script != "-";
    if (scripted) {
      file.open(script);
      if (!file) {
        std::cerr << "error: cannot read " << script << '\n';
        return kExitUsage;
      }
      in = &file;
    }
    const bool interactive = !scripted && isatty(STDIN_FILENO);
    if (!hide_set_size) std::cout << "|P_0|=" << cmm_game_set_size(game) << '\n';

    std::string line;
    while (true) {
      if (interactive) std::cerr << "guess> " << std::flush;
      if (!std::getline(*in, line)) break;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
      if (line == "quit") break;
      if (line == "hint") {
        cmm_hint hint;
        if (cmm_status s = cmm_game_hint(game, 0, 0, &hint)) return report(s);
        if (hint.available)
          std::cout << "hint: " << hint.guess << " (worst case " << hint.worst_case
                    << " rounds)\n";
        else
          std::cout << "hint unavailable: " << hint.reason << '\n';
        continue;
      }
      cmm_round_result r;
      if (cmm_status s = cmm_game_guess(game, line.c_str(), &r)) {
        if (interactive && s == CMM_INVALID_INPUT) {
          std::cerr << "invalid guess: " << cmm_last_error() << '\n';
          continue;
        }
        return report(s);
      }
      std::cout << "round " << r.round << ": guess " << line << " feedback " << r.feedback;
      if (!hide_set_size) std::cout << " |P_" << r.round << "|=" << r.set_size;
      std::cout << '\n';
      if (r.solved) {
        std::cout << "solved in " << r.round << (r.round == 1 ? " round\n" : " rounds\n");
        return kExitOk;
      }
    }
    std::cout << "unsolved after " << cmm_game_round(game) << " rounds\n";
    return kExitUnsolved;
  }
};

struct SimulateCmd {
  int k = 0;
  int n = 0;
  std::string mode = "full";
  std::string strategy = "constant";
  std::string opponent = "honest";
  std::vector<int> exclusion;
  int round_cap = 0;
  SolverFlags solver;

  int run() const {
    cmm_simulation_config config{};
    config.strategy = strategy.c_str();
    config.opponent = opponent.c_str();
    if (exclusion.size() == 2) {
      config.exclusion_position = exclusion[0];
      config.exclusion_code = exclusion[1];
    } else if (!exclusion.empty()) {
      std::cerr << "error: --exclusion takes POSITION,CODE\n";
      return kExitUsage;
    }
    config.round_cap = round_cap;
    config.solver = solver.options();
    cmm_simulation_result result;
    if (cmm_status s = cmm_simulate(k, n, mode.c_str(), &config, &result, print_line, nullptr))
      return report(s);
    std::cout << "max_rounds=" << result.max_rounds << " games=" << result.games;
    if (result.worst_answer[0]) std::cout << " worst_answer=" << result.worst_answer;
    std::cout << '\n';
    return kExitOk;
  }
};

struct SolveCmd {
  int k = 0;
  int n = 0;
  std::string game = "F";
  std::string record_file;
  SolverFlags solver;

  int run() const {
    const cmm_solver_options options = solver.options();
    cmm_solve_result result;
    cmm_status s;
    if (game == "G") {
      if (n != 0 && n != k) {
        std::cerr << "error: the permutation game has n = k\n";
        return kExitUsage;
      }
      s = cmm_solve_G(k, &options, &result);
    } else {
      if (n < 1) {
        std::cerr << "error: --n is required for the full game\n";
        return kExitUsage;
      }
      s = cmm_solve_F(k, n, &options, &result);
    }
    if (s == CMM_RESOURCE_EXHAUSTED) {
      std::cerr << "budget exhausted; value known to lie in [" << result.known_lower << ", "
                << result.known_upper << "]\n";
      return report(s);
    }
    if (s) return report(s);
    std::cout << result.record << '\n';
    if (!record_file.empty()) {
      std::ofstream out(record_file, std::ios::app);
      if (!out) {
        std::cerr << "error: cannot append to " << record_file << '\n';
        return kExitUsage;
      }
      out << result.record << '\n';
    }
    return kExitOk;
  }
};

struct VerifyCmd {
  std::string scope = "all";
  int max_n = 0;
  std::vector<int> ks;
  int trials = 0;
  std::string tier = "fast";
  std::uint64_t seed = 0;
  SolverFlags solver;

  int run() const {
    cmm_verify_config config{};
    config.scope = scope.c_str();
    config.max_n = max_n;
    config.ks = ks.empty() ? nullptr : ks.data();
    config.ks_count = ks.size();
    config.trials = trials;
    config.tier = tier.c_str();
    config.seed = seed;
    config.solver = solver.options();
    int passed = 0;
    auto line = [](const char* text, void*) { std::cout << text << std::endl; };
    if (cmm_status s = cmm_verify(&config, &passed, line, nullptr)) return report(s);
    return passed ? kExitOk : kExitVerify;
  }
};

struct ServeCmd {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::uint64_t idle_ttl = 0;
  std::uint64_t max_sessions = 0;
  std::string snapshot;

  int run() const {
    // Block the stop signals before the server spawns threads so sigwait sees them.
    sigset_t stop;
    sigemptyset(&stop);
    sigaddset(&stop, SIGINT);
    sigaddset(&stop, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &stop, nullptr);

    cmm_server_config config{};
    config.host = host.c_str();
    config.port = port;
    config.idle_ttl_s = idle_ttl;
    config.max_sessions = max_sessions;
    config.snapshot_path = snapshot.empty() ? nullptr : snapshot.c_str();
    cmm_server* server = nullptr;
    int bound = 0;
    if (cmm_status s = cmm_server_start(&config, &server, &bound)) return report(s);
    std::cout << "listening on http://" << host << ':' << bound << std::endl;

    int sig = 0;
    sigwait(&stop, &sig);
    std::cout << "stopping" << std::endl;
    const cmm_status s = cmm_server_stop(server);
    cmm_server_destroy(server);
    return s ? report(s) : kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clear Mastermind: feedback rules, adversaries, strategies and exact solving"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cmm_version());

  FeedbackCmd feedback;
  auto* fb = app.add_subcommand("feedback", "Print the feedback for a guess against an answer");
  fb->add_option("--answer", feedback.answer, "Answer, e.g. 1,1,2,3,3")->required();
  fb->add_option("--guess", feedback.guess, "Guess, e.g. 1,1,1,2,3")->required();
  fb->add_option("--kind", feedback.kind, "pi (G/Y/B) or tau (+/-)")
      ->check(CLI::IsMember({"pi", "tau"}));

  FilterCmd filter;
  auto* fl = app.add_subcommand("filter", "List the answers consistent with some rounds");
  fl->add_option("--k", filter.k, "Number of codes")->required();
  fl->add_option("--n", filter.n, "Number of positions")->required();
  fl->add_option("--mode", filter.mode)->check(CLI::IsMember({"full", "permutation"}));
  fl->add_option("--round", filter.rounds, "GUESS=FEEDBACK, e.g. 1,2,3=GGB (repeatable)");
  fl->add_option("--limit", filter.limit, "Print at most this many members");

  PlayCmd play;
  auto* pl = app.add_subcommand("play", "Play against a codemaker, reading one guess per line");
  pl->add_option("--k", play.k, "Number of codes")->required();
  pl->add_option("--n", play.n, "Number of positions")->required();
  pl->add_option("--mode", play.mode)->check(CLI::IsMember({"full", "permutation"}));
  pl->add_option("--feedback", play.feedback, "pi or tau (default: the mode's)")
      ->check(CLI::IsMember({"pi", "tau"}));
  pl->add_option("--opponent", play.opponent)
      ->check(CLI::IsMember({"fixed", "greedy", "max-class"}));
  pl->add_option("--answer", play.answer, "Answer for the fixed codemaker");
  auto* seed_opt = pl->add_option("--seed", play.seed, "Seed for a drawn answer");
  pl->add_option("--script", play.script, "File of guesses ('-' for stdin)");
  pl->add_flag("--hide-set-size", play.hide_set_size, "Do not print answer-set sizes");

  SimulateCmd simulate;
  auto* sm = app.add_subcommand("simulate", "Worst case of a strategy against a codemaker");
  sm->add_option("--k", simulate.k, "Number of codes")->required();
  sm->add_option("--n", simulate.n, "Number of positions")->required();
  sm->add_option("--mode", simulate.mode)->check(CLI::IsMember({"full", "permutation"}));
  sm->add_option("--strategy", simulate.strategy)
      ->check(CLI::IsMember({"constant", "block_scan", "block-scan", "lemma3", "optimal"}));
  sm->add_option("--opponent", simulate.opponent)
      ->check(CLI::IsMember({"honest", "greedy", "max-class"}));
  sm->add_option("--exclusion", simulate.exclusion, "POSITION,CODE known not to match (lemma3)")
      ->delimiter(',')
      ->expected(2);
  sm->add_option("--round-cap", simulate.round_cap);
  simulate.solver.attach(sm);

  SolveCmd solve;
  auto* sv = app.add_subcommand("solve", "Compute the least guaranteed number of rounds");
  sv->add_option("--k", solve.k, "Number of codes")->required();
  sv->add_option("--n", solve.n, "Number of positions (F only)");
  sv->add_option("--game", solve.game, "F (full game) or G (permutation game)")
      ->check(CLI::IsMember({"F", "G"}));
  sv->add_option("--record-file", solve.record_file, "Append the result record to this file");
  solve.solver.attach(sv);

  VerifyCmd verify;
  auto* vf = app.add_subcommand("verify", "Run a verification suite");
  vf->add_option("--scope", verify.scope)
      ->check(CLI::IsMember({"rules", "lemma1", "lemma2", "props", "theorem1", "theorem2",
                             "theorem3", "table", "strategies", "toggles", "all"}));
  vf->add_option("--max-n", verify.max_n, "theorem1: largest n");
  vf->add_option("--k", verify.ks, "lemma2/props: values of k (repeatable)");
  vf->add_option("--trials", verify.trials, "Games or samples per configuration");
  vf->add_option("--tier", verify.tier)->check(CLI::IsMember({"fast", "slow", "extended"}));
  vf->add_option("--seed", verify.seed);
  verify.solver.attach(vf);

  ServeCmd serve;
  auto* se = app.add_subcommand("serve", "Run the HTTP session service until interrupted");
  se->add_option("--host", serve.host);
  se->add_option("--port", serve.port, "0 picks a free port");
  se->add_option("--idle-ttl", serve.idle_ttl, "Seconds before an idle session is dropped");
  se->add_option("--max-sessions", serve.max_sessions);
  se->add_option("--snapshot", serve.snapshot, "Write sessions here on shutdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }
  play.has_seed = seed_opt->count() > 0;

  if (*fb) return feedback.run();
  if (*fl) return filter.run();
  if (*pl) return play.run();
  if (*sm) return simulate.run();
  if (*sv) return solve.run();
  if (*vf) return verify.run();
  if (*se) return serve.run();
  return kExitUsage;
}
