#include <benchmark/benchmark.h>
#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <random>

#include "voxsync/gateway/gateway.h"
#include "voxsync/service/http_server.h"
#include "voxsync/service/tts_service.h"

// Round trip of a cache hit, straight to the service and through the
// gateway. The difference of the two medians is the gateway overhead.

namespace {

using namespace voxsync;
namespace fs = std::filesystem;

constexpr char kKey[] = "bench-key";
constexpr char kBody[] = R"({"text":"Gateway overhead probe.","voice":"narrator-fast"})";

struct Stack {
  fs::path dir;
  std::unique_ptr<service::TtsService> svc;
  std::unique_ptr<service::HttpServer> server;
  std::unique_ptr<gateway::Gateway> gw;
  int service_port = 0;
  int gateway_port = 0;

  Stack() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("voxsync-bench-" + std::to_string(rd()));
    fs::create_directories(dir);
    service::ServiceConfig sc;
    sc.storage_root = dir / "storage";
    sc.journal_path = dir / "cache.jsonl";
    sc.data_dir = VOXSYNC_DATA_DIR;
    sc.voices = synth::DefaultVoiceSpecs(sc.data_dir);
    sc.pool_size = 1;
    svc = std::make_unique<service::TtsService>(sc);
    server = std::make_unique<service::HttpServer>(*svc);
    service_port = server->Start("127.0.0.1", 0);

    std::ofstream(dir / "keys.tsv") << gateway::HashApiKey(kKey) << "\tbench\ttrue\n";
    gateway::GatewayConfig gc;
    gc.port = 0;
    gc.keystore_path = dir / "keys.tsv";
    gc.routes = gateway::DefaultRoutes("http://127.0.0.1:" + std::to_string(service_port));
    gw = std::make_unique<gateway::Gateway>(gc);
    gateway_port = gw->Start();
  }
  ~Stack() {
    gw.reset();
    server.reset();
    svc.reset();
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

Stack& Shared() {
  static Stack stack;
  return stack;
}

void Probe(benchmark::State& state, int port) {
  httplib::Client client("127.0.0.1", port);
  const httplib::Headers headers = {{"X-Api-Key", kKey}};
  client.Post("/v1/tts/sync", headers, kBody, "application/json");  // warm the cache
  for (auto _ : state) {
    auto res = client.Post("/v1/tts/sync", headers, kBody, "application/json");
    if (!res || res->status != 200) state.SkipWithError("request failed");
  }
}

void BM_ServiceDirect(benchmark::State& state) { Probe(state, Shared().service_port); }
void BM_ThroughGateway(benchmark::State& state) { Probe(state, Shared().gateway_port); }

BENCHMARK(BM_ServiceDirect)->Unit(benchmark::kMicrosecond)->Repetitions(5)
    ->ReportAggregatesOnly(true);
BENCHMARK(BM_ThroughGateway)->Unit(benchmark::kMicrosecond)->Repetitions(5)
    ->ReportAggregatesOnly(true);

}  // namespace

BENCHMARK_MAIN();
