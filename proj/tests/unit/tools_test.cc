#include <fcntl.h>
#include <gtest/gtest.h>
#include <spawn.h>
#include <sys/wait.h>

#include <fstream>
#include <sstream>

#include "gateway_fixtures.h"
#include "voxsync/dsp/wav.h"

extern char** environ;

namespace voxsync {
namespace {

namespace fs = std::filesystem;
using namespace std::chrono_literals;
using testing::TempDir;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Child process with stdout and stderr sent to one log file.
class Process {
 public:
  Process(std::vector<std::string> args, const fs::path& log) {
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, 1, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC,
                                     0644);
    posix_spawn_file_actions_adddup2(&actions, 1, 2);
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    argv.push_back(nullptr);
    const int rc = posix_spawn(&pid_, argv[0], &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) throw std::runtime_error("spawn failed: " + args[0]);
  }
  ~Process() {
    if (pid_ > 0) {
      kill(pid_, SIGKILL);
      Wait();
    }
  }

  void Signal(int sig) const { kill(pid_, sig); }

  // Exit code, or -1 when killed by a signal.
  int Wait() {
    int status = 0;
    waitpid(pid_, &status, 0);
    pid_ = -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

 private:
  pid_t pid_ = -1;
};

int RunTool(std::vector<std::string> args, const fs::path& log) {
  return Process(std::move(args), log).Wait();
}

bool WaitHealthy(int port) {
  httplib::Client c("127.0.0.1", port);
  c.set_connection_timeout(200ms);
  for (int i = 0; i < 100; ++i) {
    if (auto r = c.Get("/healthz"); r && r->status == 200) return true;
    std::this_thread::sleep_for(100ms);
  }
  return false;
}

const std::string kVoxsync = VOXSYNC_BIN;
const std::string kGateway = VOXSYNC_GATEWAY_BIN;

TEST(VoxsyncCli, ExitCodes) {
  TempDir dir;
  const auto log = dir.path() / "log";
  EXPECT_EQ(RunTool({kVoxsync, "--help"}, log), 0);
  EXPECT_NE(Slurp(log).find("prep"), std::string::npos);
  EXPECT_EQ(RunTool({kVoxsync}, log), 2);
  EXPECT_EQ(RunTool({kVoxsync, "frobnicate"}, log), 2);
  EXPECT_EQ(RunTool({kVoxsync, "say", "hi"}, log), 2);
  EXPECT_EQ(RunTool({kVoxsync, "say", "hi", "--voice", "nobody", "-o", (dir.path() / "x.wav")}, log),
            2);
  EXPECT_NE(Slurp(log).find("unknown voice"), std::string::npos);
  EXPECT_EQ(RunTool({kVoxsync, "say", "...", "-o", (dir.path() / "x.wav")}, log), 2);
  EXPECT_EQ(RunTool({kVoxsync, "bench", "--unique", "--repeat"}, log), 2);
  EXPECT_EQ(RunTool({kVoxsync, "bench", "--url", "no scheme at all", "-n", "1"}, log), 1);
  EXPECT_EQ(RunTool({kVoxsync, "prep", "--in-dir", dir.path(), "--transcripts",
                 (dir.path() / "absent.tsv"), "--out-dir", (dir.path() / "o")},
                log),
            1);
  EXPECT_EQ(RunTool({kGateway}, log), 2);
  EXPECT_EQ(RunTool({kGateway, "--config", (dir.path() / "absent.toml")}, log), 2);
}

TEST(VoxsyncCli, SayIsDeterministicAndReportsSources) {
  TempDir dir;
  const auto log = dir.path() / "log";
  for (const char* voice : {"narrator", "narrator-fast"}) {
    const auto a = dir.path() / "a.wav";
    const auto b = dir.path() / "b.wav";
    ASSERT_EQ(RunTool({kVoxsync, "say", "Guten Tag, world.", "--voice", voice, "-o", a}, log), 0);
    const std::string report = Slurp(log);
    EXPECT_NE(report.find("guten\tcustom\t"), std::string::npos) << report;
    EXPECT_NE(report.find("world\tcmu\t"), std::string::npos) << report;
    ASSERT_EQ(RunTool({kVoxsync, "say", "Guten Tag, world.", "--voice", voice, "-o", b}, log), 0);
    EXPECT_EQ(Slurp(a), Slurp(b)) << voice;
    EXPECT_GT(fs::file_size(a), 44u);
  }
}

TEST(VoxsyncCli, PrepWritesManifest) {
  TempDir dir;
  fs::create_directories(dir.path() / "in");
  // 0.5 s of a 200 Hz tone, PCM16.
  {
    dsp::Waveform w;
    w.sample_rate = 24000;
    for (int i = 0; i < 12000; ++i) w.samples.push_back(0.3f * std::sin(2 * M_PI * 200 * i / 24000.0));
    std::ofstream(dir.path() / "in" / "one.wav", std::ios::binary) << dsp::EncodeWav(w);
  }
  std::ofstream(dir.path() / "t.tsv") << "one.wav\tOne.\nzero.wav\tGone.\n";
  const auto log = dir.path() / "log";
  ASSERT_EQ(RunTool({kVoxsync, "prep", "--in-dir", dir.path() / "in", "--transcripts",
                 dir.path() / "t.tsv", "--out-dir", dir.path() / "out", "-j", "2"},
                log),
            0)
      << Slurp(log);
  EXPECT_NE(Slurp(log).find("accepted 1"), std::string::npos);
  EXPECT_NE(Slurp(log).find("rejected read_error 1"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "features" / "one.mel.f32"));
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "manifest.jsonl"));
}

TEST(GatewayBinary, SighupReloadsKeystore) {
  TempDir dir;
  testing::FakeUpstream upstream;
  const int port = testing::UnusedPort();
  const auto keys = dir.path() / "keys.tsv";
  testing::WriteKeystore(keys, testing::DefaultKeystoreText());
  std::ofstream(dir.path() / "gw.toml") << "listen = \"127.0.0.1:" << port << "\"\n"
                                        << "keystore = \"keys.tsv\"\n"
                                        << "upstream = \"" << upstream.origin() << "\"\n";
  Process gw({kGateway, "--config", (dir.path() / "gw.toml").string()}, dir.path() / "log");
  ASSERT_TRUE(WaitHealthy(port)) << Slurp(dir.path() / "log");

  httplib::Client c("127.0.0.1", port);
  const httplib::Headers fresh = {{"X-Api-Key", "fresh-key"}};
  EXPECT_EQ(c.Get("/audio/a/b.wav", fresh)->status, 403);

  testing::WriteKeystore(keys, testing::DefaultKeystoreText() +
                                   testing::KeyLine("fresh-key", "fresh", true));
  gw.Signal(SIGHUP);
  int status = 0;
  for (int i = 0; i < 50 && status != 200; ++i) {
    std::this_thread::sleep_for(50ms);
    status = c.Get("/audio/a/b.wav", fresh)->status;
  }
  EXPECT_EQ(status, 200);

  // A broken file leaves the loaded keys alone.
  testing::WriteKeystore(keys, "broken\n");
  gw.Signal(SIGHUP);
  std::this_thread::sleep_for(300ms);
  EXPECT_EQ(c.Get("/audio/a/b.wav", fresh)->status, 200);
  EXPECT_EQ(upstream.count(), 2);

  gw.Signal(SIGTERM);
  EXPECT_EQ(gw.Wait(), 0);
  const std::string log = Slurp(dir.path() / "log");
  EXPECT_NE(log.find("keystore reloaded: 3 keys"), std::string::npos) << log;
  EXPECT_NE(log.find("keystore reload rejected"), std::string::npos) << log;
}

TEST(ServeBinary, ServesAndStopsOnSigterm) {
  TempDir dir;
  const int port = testing::UnusedPort();
  std::ofstream(dir.path() / "svc.toml") << "listen = \"127.0.0.1:" << port << "\"\n"
                                         << "base_url = \"http://cdn.test\"\n"
                                         << "data_dir = \"" << VOXSYNC_DATA_DIR << "\"\n"
                                         << "[pool]\nsize = 1\n";
  Process svc({kVoxsync, "serve", "--config", (dir.path() / "svc.toml").string()},
              dir.path() / "log");
  ASSERT_TRUE(WaitHealthy(port)) << Slurp(dir.path() / "log");
  httplib::Client c("127.0.0.1", port);
  auto r = c.Post("/v1/tts/sync", R"({"text":"Hello.","voice":"narrator-fast"})",
                  "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->body.find("\"url\":\"http://cdn.test/audio/narrator-fast/"), 1u) << r->body;
  EXPECT_TRUE(fs::exists(dir.path() / "var" / "cache.jsonl"));
  svc.Signal(SIGTERM);
  EXPECT_EQ(svc.Wait(), 0);
}

}  // namespace
}  // namespace voxsync
