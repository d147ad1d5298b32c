#include "clearmm/clearmm.h"

#include <cstring>
#include <new>
#include <string>

#include "clearmm/adversary.hpp"
#include "clearmm/service.hpp"
#include "clearmm/session.hpp"
#include "clearmm/strategies.hpp"
#include "clearmm/verify.hpp"

using namespace clearmm;

struct cmm_answer_set {
  AnswerSet set;
};

struct cmm_game {
  Session session;
};

struct cmm_server {
  explicit cmm_server(ServiceOptions options) : server(std::move(options)) {}
  HttpServer server;
};

namespace {

thread_local std::string last_error;

cmm_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return CMM_INVALID_INPUT;
    case ErrorCode::inconsistent: return CMM_INCONSISTENT;
    case ErrorCode::invalid_state: return CMM_INVALID_STATE;
    case ErrorCode::invalid_configuration: return CMM_INVALID_CONFIGURATION;
    case ErrorCode::resource_exhausted: return CMM_RESOURCE_EXHAUSTED;
    case ErrorCode::not_found: return CMM_NOT_FOUND;
  }
  return CMM_INTERNAL;
}

cmm_status fail(cmm_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
cmm_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CMM_RESOURCE_EXHAUSTED, "out of memory");
  } catch (const std::exception& e) {
    return fail(CMM_INTERNAL, e.what());
  } catch (...) {
    return fail(CMM_INTERNAL, "unknown error");
  }
}

cmm_status copy_out(const std::string& text, char* out, std::size_t capacity) {
  if (out == nullptr || capacity <= text.size())
    return fail(CMM_BUFFER_TOO_SMALL,
                "buffer needs " + std::to_string(text.size() + 1) + " bytes");
  std::memcpy(out, text.c_str(), text.size() + 1);
  return CMM_OK;
}

// Copies into a fixed array member, truncating (only used for bounded texts).
template <std::size_t N>
void copy_fixed(const std::string& text, char (&out)[N]) {
  const std::size_t len = std::min(text.size(), N - 1);
  std::memcpy(out, text.data(), len);
  out[len] = '\0';
}

cmm_status require(const void* p, const char* what) {
  if (p == nullptr) return fail(CMM_INVALID_INPUT, std::string(what) + " is null");
  return CMM_OK;
}

SolverOptions solver_options(const cmm_solver_options* o) {
  SolverOptions s;
  if (o == nullptr) return s;
  s.node_cap = o->node_cap;
  s.time_cap = std::chrono::milliseconds(o->time_cap_ms);
  if (o->memo_cap) s.memo_cap = o->memo_cap;
  s.canonicalize = o->canonicalize != 0;
  s.code_symmetry = o->code_symmetry != 0;
  s.root_symmetry = o->root_symmetry != 0;
  s.members_only = o->members_only != 0;
  return s;
}

void fill_result(const SolveResult& r, cmm_solve_result* out) {
  out->k = r.params.k;
  out->n = r.params.n;
  out->value = r.value;
  out->lower = r.bounds.lower;
  out->upper = r.bounds.upper;
  out->within_bounds = r.within_bounds ? 1 : 0;
  out->known_lower = r.value;
  out->known_upper = r.value;
  out->nodes_expanded = r.nodes_expanded;
  out->memo_hits = r.memo_hits;
  out->elapsed_ms = r.elapsed.count() * 1000.0;
  copy_fixed(r.first_guess ? r.first_guess->to_string() : std::string(), out->first_guess);
  copy_fixed(r.record(), out->record);
}

template <typename Solve>
cmm_status run_solve(int k, int n, cmm_solve_result* out, Solve&& solve) {
  return guarded([&] {
    if (cmm_status s = require(out, "result"); s != CMM_OK) return s;
    *out = cmm_solve_result{};
    out->k = k;
    out->n = n;
    try {
      fill_result(solve(), out);
    } catch (const ResourceError& e) {
      out->known_lower = e.known().lower;
      out->known_upper = e.known().upper;
      throw;
    }
    return CMM_OK;
  });
}

}  // namespace

extern "C" {

const char* cmm_version(void) { return kVersion; }

const char* cmm_status_name(cmm_status status) {
  switch (status) {
    case CMM_OK: return "ok";
    case CMM_INVALID_INPUT: return "invalid_input";
    case CMM_INCONSISTENT: return "inconsistent";
    case CMM_INVALID_STATE: return "invalid_state";
    case CMM_INVALID_CONFIGURATION: return "invalid_configuration";
    case CMM_RESOURCE_EXHAUSTED: return "resource_exhausted";
    case CMM_NOT_FOUND: return "not_found";
    case CMM_BUFFER_TOO_SMALL: return "buffer_too_small";
    case CMM_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* cmm_last_error(void) { return last_error.c_str(); }

cmm_status cmm_feedback(const char* answer, const char* guess, const char* kind, char* out,
                        size_t capacity) {
  return guarded([&] {
    if (cmm_status s = require(answer, "answer"); s != CMM_OK) return s;
    if (cmm_status s = require(guess, "guess"); s != CMM_OK) return s;
    const CodeString a = CodeString::parse(answer);
    const CodeString g = CodeString::parse(guess);
    const int k = std::max(a.max_code(), g.max_code());
    validate_code_string(g, k, static_cast<int>(a.size()));
    const FeedbackKind fk = parse_feedback_kind(kind ? kind : "pi");
    const std::string text =
        fk == FeedbackKind::pi ? feedback_pi(g, a).to_string() : feedback_tau(g, a).to_string();
    return copy_out(text, out, capacity);
  });
}

cmm_status cmm_tau_from_pi(const char* pi, char* out, size_t capacity) {
  return guarded([&] {
    if (cmm_status s = require(pi, "feedback"); s != CMM_OK) return s;
    return copy_out(tau_from_pi(FeedbackString::parse(pi)).to_string(), out, capacity);
  });
}

cmm_status cmm_pi_from_tau(const char* tau, const int* counts, int k, const char* guess,
                           char* out, size_t capacity) {
  return guarded([&] {
    if (cmm_status s = require(tau, "feedback"); s != CMM_OK) return s;
    if (cmm_status s = require(counts, "counts"); s != CMM_OK) return s;
    if (cmm_status s = require(guess, "guess"); s != CMM_OK) return s;
    if (k < 1 || k > kMaxCodes) return fail(CMM_INVALID_INPUT, "k out of range");
    const CountVector w(std::vector<int>(counts, counts + k));
    return copy_out(pi_from_tau(MatchString::parse(tau), w, CodeString::parse(guess)).to_string(),
                    out, capacity);
  });
}

cmm_status cmm_answer_set_full(int k, int n, const char* mode, cmm_answer_set** out) {
  return guarded([&] {
    if (cmm_status s = require(out, "out"); s != CMM_OK) return s;
    *out = nullptr;
    const ModeKind kind = parse_mode_kind(mode ? mode : "full");
    *out = new cmm_answer_set{full_answer_set(k, n, kind)};
    return CMM_OK;
  });
}

cmm_status cmm_answer_set_filter(const cmm_answer_set* set, const char* guess,
                                 const char* feedback, cmm_answer_set** out) {
  return guarded([&] {
    if (cmm_status s = require(set, "set"); s != CMM_OK) return s;
    if (cmm_status s = require(guess, "guess"); s != CMM_OK) return s;
    if (cmm_status s = require(feedback, "feedback"); s != CMM_OK) return s;
    if (cmm_status s = require(out, "out"); s != CMM_OK) return s;
    *out = nullptr;
    const GameParams& p = set->set.params();
    const CodeString g = CodeString::parse(guess);
    validate_code_string(g, p.k, p.n);
    const AnyFeedback fb = parse_feedback(feedback, p.mode.feedback);
    *out = new cmm_answer_set{filter_answer_set(set->set, g, fb)};
    return CMM_OK;
  });
}

size_t cmm_answer_set_size(const cmm_answer_set* set) { return set ? set->set.size() : 0; }

cmm_status cmm_answer_set_member(const cmm_answer_set* set, size_t index, char* out,
                                 size_t capacity) {
  return guarded([&] {
    if (cmm_status s = require(set, "set"); s != CMM_OK) return s;
    if (index >= set->set.size()) return fail(CMM_NOT_FOUND, "index out of range");
    return copy_out(set->set.members()[index].to_string(), out, capacity);
  });
}

void cmm_answer_set_destroy(cmm_answer_set* set) { delete set; }

void cmm_solver_options_init(cmm_solver_options* options) {
  if (options == nullptr) return;
  const SolverOptions d;
  options->node_cap = d.node_cap;
  options->time_cap_ms = static_cast<uint64_t>(d.time_cap.count());
  options->memo_cap = d.memo_cap;
  options->canonicalize = d.canonicalize;
  options->code_symmetry = d.code_symmetry;
  options->root_symmetry = d.root_symmetry;
  options->members_only = d.members_only;
}

cmm_status cmm_solve_F(int k, int n, const cmm_solver_options* options, cmm_solve_result* out) {
  return run_solve(k, n, out, [&] { return solve_F(k, n, solver_options(options)); });
}

cmm_status cmm_solve_G(int k, const cmm_solver_options* options, cmm_solve_result* out) {
  return run_solve(k, k, out, [&] { return solve_G(k, solver_options(options)); });
}

cmm_status cmm_theorem_bounds(int k, int n, int* lower, int* upper) {
  return guarded([&] {
    if (cmm_status s = require(lower, "lower"); s != CMM_OK) return s;
    if (cmm_status s = require(upper, "upper"); s != CMM_OK) return s;
    const Bounds b = theorem_bounds(k, n);
    *lower = b.lower;
    *upper = b.upper;
    return CMM_OK;
  });
}

cmm_status cmm_game_create(const cmm_game_config* config, cmm_game** out) {
  return guarded([&] {
    if (cmm_status s = require(config, "config"); s != CMM_OK) return s;
    if (cmm_status s = require(out, "out"); s != CMM_OK) return s;
    *out = nullptr;
    SessionConfig c;
    c.params.k = config->k;
    c.params.n = config->n;
    c.params.mode = default_mode(parse_mode_kind(config->mode ? config->mode : "full"));
    if (config->feedback) c.params.mode.feedback = parse_feedback_kind(config->feedback);
    c.opponent = parse_opponent_kind(config->opponent ? config->opponent : "fixed");
    if (config->answer) c.answer = CodeString::parse(config->answer);
    if (config->has_seed) c.seed = config->seed;
    *out = new cmm_game{Session("local", std::move(c))};
    return CMM_OK;
  });
}

cmm_status cmm_game_guess(cmm_game* game, const char* guess, cmm_round_result* out) {
  return guarded([&] {
    if (cmm_status s = require(game, "game"); s != CMM_OK) return s;
    if (cmm_status s = require(guess, "guess"); s != CMM_OK) return s;
    if (cmm_status s = require(out, "out"); s != CMM_OK) return s;
    const RoundResult r = game->session.guess(CodeString::parse(guess));
    copy_fixed(to_string(r.feedback), out->feedback);
    out->round = r.round;
    out->set_size = r.set_size;
    out->solved = r.solved ? 1 : 0;
    return CMM_OK;
  });
}

cmm_status cmm_game_hint(cmm_game* game, uint64_t node_cap, uint64_t time_cap_ms, cmm_hint* out) {
  return guarded([&] {
    if (cmm_status s = require(game, "game"); s != CMM_OK) return s;
    if (cmm_status s = require(out, "out"); s != CMM_OK) return s;
    HintPolicy policy;
    if (node_cap) policy.node_cap = node_cap;
    if (time_cap_ms) policy.time_cap = std::chrono::milliseconds(time_cap_ms);
    const Hint h = game->session.hint(policy);
    *out = cmm_hint{};
    out->available = h.available ? 1 : 0;
    if (h.guess) copy_fixed(h.guess->to_string(), out->guess);
    out->worst_case = h.worst_case;
    copy_fixed(h.reason, out->reason);
    return CMM_OK;
  });
}

int cmm_game_round(const cmm_game* game) { return game ? game->session.round() : 0; }

uint64_t cmm_game_set_size(const cmm_game* game) { return game ? game->session.set_size() : 0; }

const char* cmm_game_status(const cmm_game* game) {
  return game ? to_string(game->session.status()) : "unknown";
}

uint64_t cmm_game_seed(const cmm_game* game) { return game ? game->session.seed() : 0; }

cmm_status cmm_game_answer(const cmm_game* game, char* out, size_t capacity) {
  return guarded([&] {
    if (cmm_status s = require(game, "game"); s != CMM_OK) return s;
    if (game->session.status() != SessionStatus::solved || !game->session.answer())
      return fail(CMM_INVALID_STATE, "the answer is disclosed once the game is solved");
    return copy_out(game->session.answer()->to_string(), out, capacity);
  });
}

cmm_status cmm_game_audit(const cmm_game* game, int* passed, cmm_line_callback line, void* user) {
  return guarded([&] {
    if (cmm_status s = require(game, "game"); s != CMM_OK) return s;
    if (cmm_status s = require(passed, "passed"); s != CMM_OK) return s;
    const Session& session = game->session;
    if (session.params().mode.kind != ModeKind::permutation)
      return fail(CMM_INVALID_CONFIGURATION, "the audit applies to the permutation game");
    const AuditExpectation expectation = session.opponent() == OpponentKind::greedy
                                             ? AuditExpectation::equality
                                             : AuditExpectation::upper_bound;
    const AuditReport report = audit_lemma2(session.params(), session.history(), expectation);
    if (line)
      for (const auto& l : report.lines()) line(l.c_str(), user);
    *passed = report.passed() ? 1 : 0;
    return CMM_OK;
  });
}

void cmm_game_destroy(cmm_game* game) { delete game; }

cmm_status cmm_simulate(int k, int n, const char* mode, const cmm_simulation_config* config,
                        cmm_simulation_result* out, cmm_line_callback trace, void* user) {
  return guarded([&] {
    if (cmm_status s = require(config, "config"); s != CMM_OK) return s;
    if (cmm_status s = require(out, "out"); s != CMM_OK) return s;
    GameParams params{k, n, default_mode(parse_mode_kind(mode ? mode : "full"))};
    SimulationOptions options;
    options.strategy.kind = parse_strategy_kind(config->strategy ? config->strategy : "constant");
    if (options.strategy.kind == StrategyKind::lemma3)
      options.strategy.exclusion = Exclusion{config->exclusion_position, config->exclusion_code};
    options.strategy.solver = solver_options(&config->solver);
    if (config->round_cap > 0) options.round_cap = config->round_cap;
    const Opponent opponent = parse_opponent(config->opponent ? config->opponent : "honest");
    const SimulationResult r = simulate_worst_case(params, opponent, options);
    *out = cmm_simulation_result{};
    out->max_rounds = r.max_rounds;
    out->games = r.games;
    if (r.worst_answer) copy_fixed(r.worst_answer->to_string(), out->worst_answer);
    if (trace)
      for (const auto& l : r.trace) trace(l.to_string().c_str(), user);
    return CMM_OK;
  });
}

cmm_status cmm_verify(const cmm_verify_config* config, int* passed, cmm_line_callback line,
                      void* user) {
  return guarded([&] {
    if (cmm_status s = require(config, "config"); s != CMM_OK) return s;
    if (cmm_status s = require(passed, "passed"); s != CMM_OK) return s;
    VerifyOptions options;
    options.max_n = config->max_n;
    if (config->ks && config->ks_count) options.ks.assign(config->ks, config->ks + config->ks_count);
    options.trials = config->trials;
    if (config->tier) options.tier = parse_table_tier(config->tier);
    if (config->seed) options.seed = config->seed;
    options.solver = solver_options(&config->solver);
    const VerifyScope scope = parse_verify_scope(config->scope ? config->scope : "all");
    const VerifyReport report = verify(scope, options, [&](const CheckResult& r) {
      if (line) line(r.to_string().c_str(), user);
    });
    if (line) line(report.passed() ? "PASS" : "FAIL", user);
    *passed = report.passed() ? 1 : 0;
    return CMM_OK;
  });
}

cmm_status cmm_server_start(const cmm_server_config* config, cmm_server** out, int* bound_port) {
  return guarded([&] {
    if (cmm_status s = require(config, "config"); s != CMM_OK) return s;
    if (cmm_status s = require(out, "out"); s != CMM_OK) return s;
    *out = nullptr;
    ServiceOptions options;
    if (config->idle_ttl_s) options.idle_ttl = std::chrono::seconds(config->idle_ttl_s);
    if (config->max_sessions) options.max_sessions = config->max_sessions;
    if (config->snapshot_path) options.snapshot_path = config->snapshot_path;
    auto server = std::make_unique<cmm_server>(std::move(options));
    const int port = server->server.start(config->host ? config->host : "127.0.0.1", config->port);
    if (bound_port) *bound_port = port;
    *out = server.release();
    return CMM_OK;
  });
}

cmm_status cmm_server_stop(cmm_server* server) {
  return guarded([&] {
    if (cmm_status s = require(server, "server"); s != CMM_OK) return s;
    server->server.stop();
    return CMM_OK;
  });
}

void cmm_server_destroy(cmm_server* server) {
  if (server == nullptr) return;
  try {
    server->server.stop();
  } catch (...) {
  }
  delete server;
}

}  // extern "C"
