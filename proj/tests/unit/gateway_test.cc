#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <regex>

#include "gateway_fixtures.h"

namespace voxsync::gateway {
namespace {

using voxsync::testing::DefaultKeystoreText;
using voxsync::testing::FakeUpstream;
using voxsync::testing::KeyLine;
using voxsync::testing::kDisabledKey;
using voxsync::testing::kValidKey;
using voxsync::testing::TempDir;
using voxsync::testing::TestGatewayConfig;
using voxsync::testing::WriteKeystore;

const auto kNoEnv = [](const char*) -> std::optional<std::string> { return std::nullopt; };

// ---- keystore ----

TEST(Keystore, HashIsSha256Hex) {
  EXPECT_EQ(HashApiKey("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(HashApiKey(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Keystore, ParsesRecordsAndSkipsComments) {
  const std::string text = "# comment\n\n" + KeyLine("a", "alpha", true) +
                           KeyLine("b", "beta team", false) + HashApiKey("c") + "\tc\t1\r\n";
  const auto records = ParseKeystore(text);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0], (ApiKeyRecord{HashApiKey("a"), "alpha", true}));
  EXPECT_EQ(records[1], (ApiKeyRecord{HashApiKey("b"), "beta team", false}));
  EXPECT_TRUE(records[2].enabled);
  EXPECT_EQ(records[2].label, "c");
}

TEST(Keystore, MalformedLinesReportLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      ParseKeystore(text);
    } catch (const KeystoreError& e) {
      return e.line();
    }
    return 0;
  };
  const std::string good = KeyLine("a", "alpha", true);
  EXPECT_EQ(line_of(good + HashApiKey("b") + "\tbeta\n"), 2u);
  EXPECT_EQ(line_of(good + "# x\n" + "nothex\tb\ttrue\n"), 3u);
  EXPECT_EQ(line_of(good + "BA7816BF8F01CFEA414140DE5DAE2223B00361A396177A9CB410FF61F20015AD\tb\t1\n"),
            2u);
  EXPECT_EQ(line_of(HashApiKey("b") + "\tbeta\tyes\n"), 1u);
  EXPECT_EQ(line_of(good + good), 2u);
  EXPECT_EQ(line_of(HashApiKey("b") + "\tbeta\ttrue\textra\n"), 1u);
}

TEST(Keystore, AuthenticationOutcomes) {
  Keystore ks(ParseKeystore(DefaultKeystoreText()));
  EXPECT_EQ(ks.Authenticate(std::nullopt).status(), 401);
  EXPECT_EQ(ks.Authenticate("").status(), 401);
  EXPECT_EQ(ks.Authenticate("wrong").outcome, AuthOutcome::kUnknownKey);
  EXPECT_EQ(ks.Authenticate("wrong").status(), 403);
  EXPECT_EQ(ks.Authenticate(kDisabledKey).outcome, AuthOutcome::kDisabledKey);
  EXPECT_EQ(ks.Authenticate(kDisabledKey).status(), 403);
  const AuthDecision ok = ks.Authenticate(kValidKey);
  EXPECT_TRUE(ok.allowed());
  EXPECT_EQ(ok.label, "tester");
  // The hash itself is not a key.
  EXPECT_FALSE(ks.Authenticate(HashApiKey(kValidKey)).allowed());
}

TEST(Keystore, ReloadSwapsOrKeepsTheOldSet) {
  TempDir dir;
  const auto path = dir.path() / "keys.tsv";
  WriteKeystore(path, DefaultKeystoreText());
  Keystore ks(LoadKeystore(path));
  EXPECT_FALSE(ks.Authenticate("new-key").allowed());

  WriteKeystore(path, DefaultKeystoreText() + KeyLine("new-key", "new", true));
  EXPECT_EQ(ks.Reload(path), 3u);
  EXPECT_TRUE(ks.Authenticate("new-key").allowed());

  WriteKeystore(path, KeyLine("new-key", "new", true));
  EXPECT_EQ(ks.Reload(path), 1u);
  EXPECT_EQ(ks.Authenticate(kValidKey).status(), 403);

  WriteKeystore(path, "garbage line\n");
  EXPECT_THROW(ks.Reload(path), KeystoreError);
  EXPECT_EQ(ks.size(), 1u);
  EXPECT_TRUE(ks.Authenticate("new-key").allowed());
  EXPECT_THROW(ks.Reload(dir.path() / "missing.tsv"), KeystoreError);
  EXPECT_TRUE(ks.Authenticate("new-key").allowed());
}

TEST(Keystore, AuthenticateDuringReplaceSeesAWholeSet) {
  // Both sets know both keys, so a decision taken from a half-swapped set
  // would show up as an unknown key.
  const auto set_a = ParseKeystore(KeyLine("a", "A", true) + KeyLine("b", "B", false));
  const auto set_b = ParseKeystore(KeyLine("a", "A", false) + KeyLine("b", "B", true));
  Keystore ks(set_a);
  std::atomic<bool> stop{false};
  std::thread swapper([&] {
    for (int i = 0; !stop; ++i) ks.Replace(i % 2 ? set_a : set_b);
  });
  int unknown = 0;
  for (int i = 0; i < 20000; ++i) {
    for (const char* key : {"a", "b"}) {
      unknown += ks.Authenticate(key).outcome == AuthOutcome::kUnknownKey;
    }
  }
  stop = true;
  swapper.join();
  EXPECT_EQ(unknown, 0);
}

// ---- routes and config ----

TEST(RouteTable, LongestPrefixWins) {
  RouteTable table({{"/v1/", "http://a:1"}, {"/v1/tts/", "http://b:2"}, {"/audio/", "http://c:3"}});
  EXPECT_EQ(table.Match("/v1/tts/sync")->upstream, "http://b:2");
  EXPECT_EQ(table.Match("/v1/other")->upstream, "http://a:1");
  EXPECT_EQ(table.Match("/audio/narrator/x.wav")->upstream, "http://c:3");
  EXPECT_EQ(table.Match("/nope"), nullptr);
  EXPECT_EQ(table.Match("/v1"), nullptr);
}

TEST(RouteTable, RejectsBadRoutes) {
  EXPECT_THROW(RouteTable({{"/a/", "http://x:1"}, {"/a/", "http://y:1"}}), GatewayConfigError);
  EXPECT_THROW(RouteTable(std::vector<Route>{{"a/", "http://x:1"}}), GatewayConfigError);
  EXPECT_THROW(RouteTable(std::vector<Route>{{"/a/", "https://x:1"}}), GatewayConfigError);
  EXPECT_THROW(RouteTable(std::vector<Route>{{"/a/", "http://x:1/base"}}), GatewayConfigError);
}

TEST(GatewayConfig, ParsesFile) {
  const GatewayConfig c = ParseGatewayConfig(R"(
listen = "0.0.0.0:8443"
keystore = "secrets/keys.tsv"
demo_dir = "/srv/demo"
upstream = "http://10.0.0.5:8080"
threads = 4

[timeouts]
connect_ms = 100
read_ms = 900
)",
                                             "/etc/gw", kNoEnv);
  EXPECT_EQ(c.host, "0.0.0.0");
  EXPECT_EQ(c.port, 8443);
  EXPECT_EQ(c.keystore_path, "/etc/gw/secrets/keys.tsv");
  EXPECT_EQ(c.demo_dir, "/srv/demo");
  EXPECT_EQ(c.threads, 4);
  EXPECT_EQ(c.connect_timeout_ms, 100);
  EXPECT_EQ(c.read_timeout_ms, 900);
  EXPECT_EQ(c.routes, DefaultRoutes("http://10.0.0.5:8080"));
}

TEST(GatewayConfig, DefaultsExplicitRoutesAndEnv) {
  const GatewayConfig d = ParseGatewayConfig("", "", kNoEnv);
  EXPECT_EQ(d.connect_timeout_ms, 2000);
  EXPECT_EQ(d.read_timeout_ms, 30000);
  EXPECT_EQ(d.routes, DefaultRoutes("http://127.0.0.1:8080"));

  const std::string toml = R"(
[[routes]]
prefix = "/v1/tts/"
upstream = "http://tts:1"
[[routes]]
prefix = "/audio/"
upstream = "http://store:2"
)";
  const GatewayConfig r = ParseGatewayConfig(toml, "", kNoEnv);
  ASSERT_EQ(r.routes.size(), 2u);
  EXPECT_EQ(r.routes[1].upstream, "http://store:2");

  const auto env = [](const char* n) -> std::optional<std::string> {
    const std::string name = n;
    if (name == "VOXSYNC_GATEWAY_LISTEN") return "127.0.0.1:9999";
    if (name == "VOXSYNC_GATEWAY_UPSTREAM") return "http://other:5";
    if (name == "VOXSYNC_GATEWAY_KEYSTORE") return "/k.tsv";
    return std::nullopt;
  };
  const GatewayConfig e = ParseGatewayConfig(toml, "/base", env);
  EXPECT_EQ(e.port, 9999);
  EXPECT_EQ(e.keystore_path, "/k.tsv");
  for (const Route& route : e.routes) EXPECT_EQ(route.upstream, "http://other:5");
}

TEST(GatewayConfig, Errors) {
  EXPECT_THROW(ParseGatewayConfig("listen = \"x\"", "", kNoEnv), GatewayConfigError);
  EXPECT_THROW(ParseGatewayConfig("upstream = \"ftp://x\"", "", kNoEnv), GatewayConfigError);
  EXPECT_THROW(ParseGatewayConfig("[timeouts]\nread_ms = 0", "", kNoEnv), GatewayConfigError);
  EXPECT_THROW(ParseGatewayConfig("[[routes]]\nupstream = \"http://a:1\"", "", kNoEnv),
               GatewayConfigError);
  EXPECT_THROW(ParseGatewayConfig("[[routes]]\nprefix = \"/a/\"\n[[routes]]\nprefix = \"/a/\"",
                                  "", kNoEnv),
               GatewayConfigError);
  EXPECT_THROW(ParseGatewayConfig("listen = ", "", kNoEnv), GatewayConfigError);
}

TEST(RequestId, IsUuidV4) {
  const std::regex v4("[0-9a-f]{8}-[0-9a-f]{4}-4[0-9a-f]{3}-[89ab][0-9a-f]{3}-[0-9a-f]{12}");
  std::set<std::string> ids;
  for (int i = 0; i < 100; ++i) {
    const std::string id = NewRequestId();
    EXPECT_TRUE(std::regex_match(id, v4)) << id;
    ids.insert(id);
  }
  EXPECT_EQ(ids.size(), 100u);
}

// ---- proxy ----

class GatewayTest : public ::testing::Test {
 protected:
  void StartGateway(GatewayConfig config) {
    gateway_ = std::make_unique<Gateway>(std::move(config), [this](const AccessRecord& r) {
      std::lock_guard<std::mutex> lock(mu_);
      log_.push_back(r);
    });
    port_ = gateway_->Start();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void SetUp() override { StartGateway(TestGatewayConfig(dir_.path(), upstream_.origin())); }

  httplib::Headers Key(const std::string& key) { return {{"X-Api-Key", key}}; }

  TempDir dir_;
  FakeUpstream upstream_;
  std::unique_ptr<Gateway> gateway_;
  int port_ = 0;
  std::unique_ptr<httplib::Client> client_;
  std::mutex mu_;
  std::vector<AccessRecord> log_;
};

TEST_F(GatewayTest, AuthMatrixWithoutUpstreamContactOnDeny) {
  struct Case {
    std::optional<std::string> key;
    int status;
  };
  const std::vector<Case> cases = {
      {std::nullopt, 401}, {"invalid", 403}, {kDisabledKey, 403}, {kValidKey, 200}};
  for (const Case& c : cases) {
    httplib::Headers h;
    if (c.key) h = Key(*c.key);
    const int before = upstream_.count();
    auto tts = client_->Post("/v1/tts/sync", h, R"({"text":"hi","voice":"narrator"})",
                             "application/json");
    auto audio = client_->Get("/audio/narrator/0123456789abcdef.wav", h);
    ASSERT_TRUE(tts && audio);
    EXPECT_EQ(tts->status, c.status);
    EXPECT_EQ(audio->status, c.status);
    EXPECT_EQ(upstream_.count() - before, c.status == 200 ? 2 : 0);
  }
}

TEST_F(GatewayTest, ForwardsVerbatimAndRelaysByteExact) {
  const std::string body("{\"text\":\"caf\xc3\xa9\",\"voice\":\"narrator\"}\0tail", 41);
  auto res = client_->Post("/v1/tts/sync?trace=1", {{"X-Api-Key", kValidKey}, {"X-Custom", "v"}},
                           body, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "POST /v1/tts/sync?trace=1\n" + body);
  const httplib::Request seen = upstream_.last();
  EXPECT_EQ(seen.body, body);
  EXPECT_EQ(seen.get_header_value("X-Custom"), "v");
  EXPECT_EQ(seen.get_header_value("Content-Type"), "application/json");
  const std::string id = seen.get_header_value("X-Request-Id");
  EXPECT_EQ(id.size(), 36u);
  EXPECT_EQ(res->get_header_value("X-Request-Id"), id);

  res = client_->Get("/v1/tts/teapot", Key(kValidKey));
  EXPECT_EQ(res->status, 418);
  EXPECT_EQ(res->body, std::string("short\0and stout", 15));
  EXPECT_EQ(res->get_header_value("X-Upstream"), "yes");
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/octet-stream");
}

TEST_F(GatewayTest, KeepsCallerRequestId) {
  auto res = client_->Get("/audio/a/b.wav", {{"X-Api-Key", kValidKey}, {"X-Request-Id", "abc-1"}});
  ASSERT_TRUE(res);
  EXPECT_EQ(upstream_.last().get_header_value("X-Request-Id"), "abc-1");
  EXPECT_EQ(upstream_.last().get_header_value_count("X-Request-Id"), 1u);
  EXPECT_EQ(res->get_header_value("X-Request-Id"), "abc-1");
}

TEST_F(GatewayTest, UnroutedPathIs404WithoutUpstreamContact) {
  auto res = client_->Get("/nope", Key(kValidKey));
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  EXPECT_EQ(nlohmann::json::parse(res->body)["error"], "no_route");
  EXPECT_EQ(upstream_.count(), 0);
}

TEST_F(GatewayTest, HealthzNeedsNoKey) {
  auto res = client_->Get("/healthz");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(upstream_.count(), 0);
}

TEST_F(GatewayTest, AccessLogCarriesLabel) {
  client_->Get("/audio/a/b.wav", Key(kValidKey));
  client_->Get("/audio/a/b.wav");
  std::lock_guard<std::mutex> lock(mu_);
  ASSERT_EQ(log_.size(), 2u);
  EXPECT_EQ(log_[0].label, "tester");
  EXPECT_EQ(log_[0].status, 200);
  EXPECT_EQ(log_[0].path, "/audio/a/b.wav");
  EXPECT_EQ(log_[1].label, "");
  EXPECT_EQ(log_[1].status, 401);
}

TEST_F(GatewayTest, AdminReload) {
  auto res = client_->Post("/admin/reload-keystore", Key("later"), "", "text/plain");
  EXPECT_EQ(res->status, 403);

  WriteKeystore(gateway_->config().keystore_path, DefaultKeystoreText() + KeyLine("later", "l", true));
  res = client_->Post("/admin/reload-keystore", Key(kValidKey), "", "text/plain");
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(nlohmann::json::parse(res->body)["keys"], 3);
  EXPECT_EQ(client_->Get("/audio/a/b.wav", Key("later"))->status, 200);

  WriteKeystore(gateway_->config().keystore_path, "broken\n");
  res = client_->Post("/admin/reload-keystore", Key(kValidKey), "", "text/plain");
  EXPECT_EQ(res->status, 422);
  EXPECT_EQ(client_->Get("/audio/a/b.wav", Key("later"))->status, 200);
  EXPECT_EQ(upstream_.count(), 2);
}

TEST_F(GatewayTest, UpstreamDownIs502) {
  const int dead_port = voxsync::testing::UnusedPort();
  gateway_.reset();
  StartGateway(TestGatewayConfig(dir_.path(), "http://127.0.0.1:" + std::to_string(dead_port)));
  auto res = client_->Post("/v1/tts/sync", Key(kValidKey), "{}", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 502);
  EXPECT_EQ(nlohmann::json::parse(res->body)["error"], "upstream_unreachable");
}

TEST_F(GatewayTest, SlowUpstreamIs504) {
  GatewayConfig config = TestGatewayConfig(dir_.path(), upstream_.origin());
  config.read_timeout_ms = 200;
  gateway_.reset();
  StartGateway(config);
  auto res = client_->Post("/v1/tts/slow", Key(kValidKey), "{}", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 504);
  EXPECT_EQ(nlohmann::json::parse(res->body)["error"], "upstream_timeout");
}

TEST_F(GatewayTest, ServesDemoWithoutKey) {
  const auto demo = dir_.path() / "demo";
  std::filesystem::create_directories(demo);
  std::ofstream(demo / "index.html") << "<html>demo</html>";
  GatewayConfig config = TestGatewayConfig(dir_.path(), upstream_.origin());
  config.demo_dir = demo;
  gateway_.reset();
  StartGateway(config);
  auto res = client_->Get("/demo/index.html");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "<html>demo</html>");
  res = client_->Get("/demo/");
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(upstream_.count(), 0);
}

TEST(Gateway, MissingKeystoreFailsConstruction) {
  TempDir dir;
  GatewayConfig config;
  config.port = 0;
  config.keystore_path = dir.path() / "absent.tsv";
  config.routes = DefaultRoutes("http://127.0.0.1:1");
  EXPECT_THROW(Gateway{config}, KeystoreError);
  config.keystore_path = dir.path() / "k.tsv";
  WriteKeystore(config.keystore_path, "");
  config.demo_dir = dir.path() / "no-such-dir";
  EXPECT_THROW(Gateway{config}, GatewayConfigError);
}

}  // namespace
}  // namespace voxsync::gateway
