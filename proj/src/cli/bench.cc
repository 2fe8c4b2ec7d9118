#include "voxsync/cli/bench.h"

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <thread>

#include "voxsync/common/error.h"

namespace voxsync::cli {

double Percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * values.size()));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

Percentiles Summarize(const std::vector<double>& values) {
  return {Percentile(values, 50), Percentile(values, 95), Percentile(values, 99)};
}

namespace {

std::vector<double> Latencies(const std::vector<BenchSample>& samples, int which) {
  std::vector<double> out;
  for (const BenchSample& s : samples) {
    if (s.status != 200) continue;
    if (which < 0 || s.cached == (which == 1)) out.push_back(s.latency_ms);
  }
  return out;
}

std::string RunNonce() {
  std::random_device rd;
  std::ostringstream s;
  s << std::hex << rd() << rd();
  return s.str();
}

}  // namespace

std::size_t BenchStats::errors() const {
  std::size_t n = 0;
  for (const auto& [status, count] : status_counts) {
    if (status != 200) n += count;
  }
  return n;
}

bool BenchStats::any_server_error() const {
  for (const auto& [status, count] : status_counts) {
    if (status == 0 || status >= 500) return true;
  }
  return false;
}

double BenchStats::hit_ratio() const {
  return hits + misses == 0 ? 0.0 : static_cast<double>(hits) / (hits + misses);
}

double BenchStats::throughput() const {
  return wall_s > 0.0 ? samples.size() / wall_s : 0.0;
}

Percentiles BenchStats::all() const { return Summarize(Latencies(samples, -1)); }
Percentiles BenchStats::hit_latency() const { return Summarize(Latencies(samples, 1)); }
Percentiles BenchStats::miss_latency() const { return Summarize(Latencies(samples, 0)); }

std::string BenchStats::Report() const {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  auto line = [&out](const char* name, const Percentiles& p) {
    out << name << " p50=" << p.p50 << "ms p95=" << p.p95 << "ms p99=" << p.p99 << "ms\n";
  };
  out << "requests " << samples.size() << " in " << wall_s << "s (" << throughput()
      << " req/s)\n";
  line("all  ", all());
  line("hits ", hit_latency());
  line("miss ", miss_latency());
  out << "hits " << hits << " misses " << misses << " hit_ratio " << hit_ratio() << "\n";
  out << "status";
  for (const auto& [status, count] : status_counts) {
    out << ' ' << (status == 0 ? std::string("transport") : std::to_string(status)) << '='
        << count;
  }
  out << "\nerrors " << errors() << "\n";
  return out.str();
}

BenchStats RunBench(const BenchOptions& options) {
  if (options.requests < 0 || options.concurrency < 1) {
    throw Error("need requests >= 0 and concurrency >= 1");
  }
  if (options.corpus.empty() && options.mode != BenchMode::kUnique) {
    throw Error("corpus is empty");
  }
  {
    httplib::Client probe(options.url);
    if (!probe.is_valid()) throw Error("unusable url '" + options.url + "'");
  }
  const std::string nonce = RunNonce();
  auto text_for = [&](std::size_t i) -> std::string {
    switch (options.mode) {
      case BenchMode::kRepeat: return options.corpus.front();
      case BenchMode::kCycle: return options.corpus[i % options.corpus.size()];
      case BenchMode::kUnique: {
        const std::string base =
            options.corpus.empty() ? "bench" : options.corpus[i % options.corpus.size()];
        return base + " " + nonce + " " + std::to_string(i);
      }
    }
    return {};
  };

  BenchStats stats;
  stats.samples.resize(options.requests);
  std::atomic<std::size_t> next{0};
  const auto start = std::chrono::steady_clock::now();
  auto worker = [&] {
    httplib::Client client(options.url);
    client.set_connection_timeout(std::chrono::seconds(5));
    client.set_read_timeout(std::chrono::seconds(60));
    const httplib::Headers headers = {{"X-Api-Key", options.api_key}};
    for (std::size_t i; (i = next++) < static_cast<std::size_t>(options.requests);) {
      const std::string body =
          nlohmann::json{{"text", text_for(i)}, {"voice", options.voice}}.dump();
      const auto t0 = std::chrono::steady_clock::now();
      auto res = client.Post("/v1/tts/sync", headers, body, "application/json");
      BenchSample& s = stats.samples[i];
      s.latency_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
      if (!res) continue;
      s.status = res->status;
      if (s.status == 200) {
        const auto j = nlohmann::json::parse(res->body, nullptr, false);
        s.cached = j.is_object() && j.value("cached", false);
      }
    }
  };
  std::vector<std::thread> threads;
  for (int c = 0; c < options.concurrency; ++c) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  stats.wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (const BenchSample& s : stats.samples) {
    ++stats.status_counts[s.status];
    if (s.status == 200) ++(s.cached ? stats.hits : stats.misses);
  }
  return stats;
}

}  // namespace voxsync::cli
