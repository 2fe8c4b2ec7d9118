#ifndef VOXSYNC_CLI_BENCH_H_
#define VOXSYNC_CLI_BENCH_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace voxsync::cli {

enum class BenchMode {
  kCycle,   // request i sends corpus[i % size]
  kUnique,  // every request sends a text no earlier run has sent
  kRepeat,  // every request sends corpus[0]
};

struct BenchOptions {
  std::string url;  // gateway origin, e.g. http://127.0.0.1:8000
  std::string api_key;
  std::string voice = "narrator-fast";
  int concurrency = 4;
  int requests = 100;
  std::vector<std::string> corpus;
  BenchMode mode = BenchMode::kCycle;
};

struct Percentiles {
  double p50 = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;
};

// Nearest-rank percentile of an unsorted sample; 0 for an empty one.
double Percentile(std::vector<double> values, double p);
Percentiles Summarize(const std::vector<double>& values);

struct BenchSample {
  int status = 0;  // 0 = transport failure
  bool cached = false;
  double latency_ms = 0.0;
};

struct BenchStats {
  std::vector<BenchSample> samples;  // request order
  std::map<int, std::size_t> status_counts;
  std::size_t hits = 0;
  std::size_t misses = 0;
  double wall_s = 0.0;

  std::size_t errors() const;  // any non-200
  bool any_server_error() const;  // 5xx or transport failure
  double hit_ratio() const;
  double throughput() const;  // requests per second
  Percentiles all() const;
  Percentiles hit_latency() const;
  Percentiles miss_latency() const;
  std::string Report() const;
};

// Closed loop: `concurrency` workers each send their next request as soon as
// the previous one completes. Throws Error for an unusable url.
BenchStats RunBench(const BenchOptions& options);

}  // namespace voxsync::cli

#endif  // VOXSYNC_CLI_BENCH_H_
