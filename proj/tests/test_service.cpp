#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "clearmm/adversary.hpp"
#include "clearmm/service.hpp"
#include "clearmm/session.hpp"

using namespace clearmm;
using nlohmann::json;

namespace {

GameParams perm(int n) { return {n, n, default_mode(ModeKind::permutation)}; }
GameParams full(int k, int n) { return {k, n, default_mode(ModeKind::full)}; }

SessionConfig fixed(GameParams p, CodeString answer) {
  return {p, OpponentKind::fixed, std::move(answer), std::nullopt};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_input;
}

struct Call {
  int status;
  json body;
};

Call call(SessionService& s, std::string_view method, std::string_view path, const json& body = {}) {
  auto r = s.handle(method, path, body.is_null() ? "" : body.dump());
  return {r.status, json::parse(r.body)};
}

std::string create(SessionService& s, const json& body) {
  auto r = call(s, "POST", "/games", body);
  REQUIRE(r.status == 201);
  return r.body["id"].get<std::string>();
}

}  // namespace

TEST_CASE("sessions start with the whole answer set") {
  Session g("a", {perm(4), OpponentKind::greedy, std::nullopt, std::nullopt});
  CHECK(g.set_size() == 24);
  CHECK(g.status() == SessionStatus::live);
  Session f("b", {full(3, 3), OpponentKind::fixed, std::nullopt, 5});
  CHECK(f.set_size() == 27);
  CHECK(f.history().empty());
  CHECK(f.answer().has_value());
  CHECK(code_of([] { Session("c", {full(6, 4), OpponentKind::greedy, std::nullopt, std::nullopt}); }) ==
        ErrorCode::invalid_input);
}

TEST_CASE("seeded sessions draw the same answer") {
  Session a("a", {full(5, 4), OpponentKind::fixed, std::nullopt, 42});
  Session b("b", {full(5, 4), OpponentKind::fixed, std::nullopt, 42});
  CHECK(a.seed() == 42);
  CHECK(a.answer() == b.answer());
}

TEST_CASE("fixed-answer rounds") {
  Session s("a", fixed(full(3, 5), CodeString::parse("1,1,2,3,3")));
  auto r = s.guess(CodeString::parse("1,1,1,2,3"));
  CHECK(to_string(r.feedback) == "GGBYG");
  CHECK_FALSE(r.solved);
  CHECK(r.round == 1);
  auto done = s.guess(CodeString::parse("1,1,2,3,3"));
  CHECK(to_string(done.feedback) == "GGGGG");
  CHECK(done.solved);
  CHECK(s.status() == SessionStatus::solved);
  CHECK(code_of([&] { s.guess(CodeString::parse("1,1,2,3,3")); }) == ErrorCode::invalid_state);
  Session t("b", fixed(full(3, 5), CodeString::parse("1,1,2,3,3")));
  CHECK(code_of([&] { t.guess(CodeString::parse("1,1,4,3,3")); }) == ErrorCode::invalid_input);
  CHECK(code_of([&] { t.guess(CodeString::parse("1,1")); }) == ErrorCode::invalid_input);
  CHECK(t.round() == 0);
}

TEST_CASE("two-guess script leaves one candidate") {
  Session s("a", fixed(full(3, 3), CodeString{1, 2, 1}));
  CHECK(to_string(s.guess(CodeString{1, 2, 3}).feedback) == "GGB");
  auto r = s.guess(CodeString{1, 2, 2});
  CHECK(to_string(r.feedback) == "GGB");
  CHECK(r.set_size == 1);
  CHECK(s.history().size() == 2);
  CHECK(s.current().members()[0] == CodeString{1, 2, 1});
  CHECK(s.set_sizes() == std::vector<std::size_t>{27, 2, 1});
}

TEST_CASE("adversarial sessions") {
  Session g("a", {perm(3), OpponentKind::greedy, std::nullopt, std::nullopt});
  auto r = g.guess(CodeString{1, 2, 3});
  CHECK(to_string(r.feedback) == "---");
  CHECK(r.set_size == 2);
  g.guess(CodeString{2, 3, 1});
  CHECK(g.set_size() >= 1);
  CHECK(audit_lemma2(g.params(), g.history()).passed());

  Session m("b", {full(6, 3), OpponentKind::max_class, std::nullopt, std::nullopt});
  CHECK(to_string(m.guess(CodeString{1, 2, 3}).feedback) == "BBB");
  CHECK(m.set_size() == 27);
  for (int i = 0; i < 12 && m.status() == SessionStatus::live; ++i) {
    m.guess(m.current().members()[0]);
    CHECK(m.set_size() >= 1);
  }
  CHECK(m.status() == SessionStatus::solved);
}

TEST_CASE("hints") {
  Session s("a", fixed(full(3, 3), CodeString{1, 2, 1}));
  auto fresh = s.hint();
  CHECK(fresh.available);
  CHECK(fresh.worst_case == 3);
  s.guess(CodeString{1, 2, 3});
  s.guess(CodeString{1, 2, 2});
  auto last = s.hint();
  CHECK(last.available);
  CHECK(last.guess == CodeString{1, 2, 1});
  CHECK(last.worst_case == 1);

  Session big("b", {full(9, 5), OpponentKind::fixed, std::nullopt, 1});
  auto h = big.hint();
  CHECK_FALSE(h.available);
  CHECK_FALSE(h.reason.empty());
  CHECK(big.round() == 0);
}

TEST_CASE("replaying a session reproduces it") {
  Session live("a", fixed(full(4, 3), CodeString{4, 1, 1}));
  std::vector<CodeString> guesses = {{1, 1, 2}, {3, 4, 1}, {4, 1, 1}};
  for (const auto& g : guesses) live.guess(g);
  auto again = Session::replay("a", fixed(full(4, 3), CodeString{4, 1, 1}), guesses);
  CHECK(again.set_sizes() == live.set_sizes());
  CHECK(again.status() == live.status());

  Session greedy("g", {perm(5), OpponentKind::greedy, std::nullopt, std::nullopt});
  std::vector<CodeString> gg = {{1, 2, 3, 4, 5}, {2, 3, 4, 5, 1}};
  for (const auto& g : gg) greedy.guess(g);
  auto greedy2 =
      Session::replay("g", {perm(5), OpponentKind::greedy, std::nullopt, std::nullopt}, gg);
  CHECK(greedy2.set_sizes() == greedy.set_sizes());
}

TEST_CASE("service endpoints") {
  SessionService svc;
  auto health = call(svc, "GET", "/health");
  CHECK(health.status == 200);
  CHECK(health.body["status"] == "ok");
  CHECK(health.body["version"] == kVersion);

  auto id = create(svc, {{"k", 3}, {"n", 5}, {"mode", "full"}, {"answer", "1,1,2,3,3"}});
  auto state = call(svc, "GET", "/games/" + id);
  CHECK(state.status == 200);
  CHECK(state.body["set_size"] == 243);
  CHECK(state.body["history"].empty());
  CHECK_FALSE(state.body.contains("answer"));

  auto g = call(svc, "POST", "/games/" + id + "/guess", {{"guess", "1,1,1,2,3"}});
  CHECK(g.status == 200);
  CHECK(g.body["feedback"] == "GGBYG");
  CHECK(g.body["solved"] == false);
  CHECK(g.body["round"] == 1);
  // Same bytes as the library produces.
  CHECK(g.body["feedback"] == feedback_pi(CodeString::parse("1,1,1,2,3"),
                                          CodeString::parse("1,1,2,3,3")).to_string());

  auto done = call(svc, "POST", "/games/" + id + "/guess", {{"guess", "1,1,2,3,3"}});
  CHECK(done.body["solved"] == true);
  auto after = call(svc, "GET", "/games/" + id);
  CHECK(after.body["status"] == "solved");
  CHECK(after.body["answer"] == "1,1,2,3,3");
  CHECK(after.body["history"].size() == 2);

  auto late = call(svc, "POST", "/games/" + id + "/guess", {{"guess", "1,1,2,3,3"}});
  CHECK(late.status == 409);
  CHECK(late.body["error"]["code"] == "invalid_state");
}

TEST_CASE("service errors") {
  SessionService svc;
  auto bad = call(svc, "POST", "/games", {{"k", 6}, {"n", 4}, {"opponent", "greedy"}});
  CHECK(bad.status == 400);
  CHECK(bad.body["error"]["code"] == "invalid_input");
  CHECK_FALSE(bad.body["error"]["message"].get<std::string>().empty());

  CHECK(call(svc, "POST", "/games", {{"n", 4}}).status == 400);
  CHECK(svc.handle("POST", "/games", "{not json").status == 400);
  CHECK(call(svc, "GET", "/games/nope").status == 404);
  CHECK(call(svc, "GET", "/games/nope").body["error"]["code"] == "not_found");
  CHECK(call(svc, "POST", "/games/nope/guess", {{"guess", "1"}}).status == 404);
  CHECK(call(svc, "GET", "/elsewhere").status == 404);
  CHECK(call(svc, "DELETE", "/games").status == 405);

  auto id = create(svc, {{"k", 3}, {"n", 3}});
  CHECK(call(svc, "POST", "/games/" + id + "/guess", {{"guess", "1,2"}}).status == 400);
  CHECK(call(svc, "POST", "/games/" + id + "/guess", {{"guess", "a,b,c"}}).status == 400);
  CHECK(call(svc, "POST", "/games/" + id + "/guess", json::object()).status == 400);
  CHECK(call(svc, "GET", "/games/" + id).body["round"] == 0);
}

TEST_CASE("service adversaries and hints") {
  SessionService svc;
  auto greedy = create(svc, {{"k", 3}, {"n", 3}, {"mode", "permutation"}, {"opponent", "greedy"}});
  CHECK(call(svc, "GET", "/games/" + greedy).body["set_size"] == 6);
  auto r = call(svc, "POST", "/games/" + greedy + "/guess", {{"guess", "1,2,3"}});
  CHECK(r.body["feedback"] == "---");
  CHECK(r.body["set_size"] == 2);

  auto big = create(svc, {{"k", 4}, {"n", 4}, {"mode", "permutation"}, {"opponent", "greedy"}});
  CHECK(call(svc, "GET", "/games/" + big).body["set_size"] == 24);

  auto small = create(svc, {{"k", 3}, {"n", 3}, {"seed", 9}});
  auto hint = call(svc, "GET", "/games/" + small + "/hint");
  CHECK(hint.status == 200);
  CHECK(hint.body["available"] == true);
  CHECK(hint.body["worst_case"] == 3);
  CHECK(CodeString::parse(hint.body["guess"].get<std::string>()).size() == 3);

  auto huge = create(svc, {{"k", 9}, {"n", 5}});
  auto none = call(svc, "GET", "/games/" + huge + "/hint");
  CHECK(none.status == 200);
  CHECK(none.body["available"] == false);
  CHECK(none.body.contains("reason"));
}

TEST_CASE("service sessions are independent under concurrent use") {
  SessionService svc;
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(create(svc, {{"k", 4}, {"n", 3}, {"answer", "4,1,1"}}));
  auto shared = create(svc, {{"k", 6}, {"n", 4}, {"answer", "6,6,6,6"}});

  std::atomic<int> failures{0};
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&, t] {
      for (const char* g : {"1,1,2", "3,4,1", "4,1,1"}) {
        auto r = svc.handle("POST", "/games/" + ids[t] + "/guess", json{{"guess", g}}.dump());
        if (r.status != 200) ++failures;
      }
      for (int i = 0; i < 5; ++i) {
        auto r = svc.handle("POST", "/games/" + shared + "/guess", json{{"guess", "1,2,3,4"}}.dump());
        if (r.status != 200) ++failures;
      }
    });
  for (auto& w : workers) w.join();
  CHECK(failures == 0);
  for (const auto& id : ids) {
    auto s = call(svc, "GET", "/games/" + id);
    CHECK(s.body["status"] == "solved");
    CHECK(s.body["history"].size() == 3);
  }
  auto s = call(svc, "GET", "/games/" + shared);
  CHECK(s.body["round"] == 20);
  CHECK(s.body["history"].size() == 20);
  CHECK(svc.session_count() == 5);
}

TEST_CASE("idle sessions expire and snapshots list every session") {
  ServiceOptions opts;
  opts.idle_ttl = std::chrono::seconds(0);
  SessionService svc(opts);
  create(svc, {{"k", 2}, {"n", 2}, {"answer", "1,2"}});
  std::this_thread::sleep_for(std::chrono::milliseconds(5));
  CHECK(svc.expire_idle() == 1);
  CHECK(svc.session_count() == 0);

  SessionService keep;
  auto id = create(keep, {{"k", 2}, {"n", 2}, {"answer", "1,2"}});
  auto path = std::filesystem::temp_directory_path() / "clearmm_snapshot_test.json";
  keep.snapshot(path.string());
  std::ifstream in(path);
  auto doc = json::parse(in);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["id"] == id);
  CHECK(doc[0]["answer"] == "1,2");
  std::filesystem::remove(path);

  ServiceOptions capped;
  capped.max_sessions = 1;
  SessionService full_svc(capped);
  create(full_svc, {{"k", 2}, {"n", 2}});
  CHECK(call(full_svc, "POST", "/games", {{"k", 2}, {"n", 2}}).status == 503);
}

TEST_CASE("http server round trip") {
  HttpServer server;
  const int port = server.start("127.0.0.1", 0);
  REQUIRE(port > 0);
  CHECK(server.running());

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(health->get_header_value("Access-Control-Allow-Origin") == "*");

  auto made = client.Post("/games", json{{"k", 3}, {"n", 3}, {"mode", "permutation"}, {"opponent", "greedy"}}.dump(),
                          "application/json");
  REQUIRE(made);
  CHECK(made->status == 201);
  auto id = json::parse(made->body)["id"].get<std::string>();
  auto g = client.Post("/games/" + id + "/guess", json{{"guess", "1,2,3"}}.dump(), "application/json");
  REQUIRE(g);
  auto body = json::parse(g->body);
  CHECK(body["feedback"] == "---");
  CHECK(body["set_size"] == 2);

  auto missing = client.Get("/games/unknown");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  auto pre = client.Options("/games");
  REQUIRE(pre);
  CHECK(pre->status == 204);

  server.stop();
  CHECK_FALSE(server.running());
}
