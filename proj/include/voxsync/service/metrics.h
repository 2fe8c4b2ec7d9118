#ifndef VOXSYNC_SERVICE_METRICS_H_
#define VOXSYNC_SERVICE_METRICS_H_

#include <array>
#include <atomic>
#include <cstdint>
#include <string>
#include <string_view>

namespace voxsync::service {

// Error codes reported in responses and in errors_total{code="..."}.
enum class ErrorCode {
  kBadRequest,
  kNotFound,
  kUnknownVoice,
  kTextTooLong,
  kEmptyText,
  kPoolSaturated,
  kStorageError,
  kInternal,
};
inline constexpr int kNumErrorCodes = 8;

std::string_view ToString(ErrorCode code);
int HttpStatus(ErrorCode code);

// Upper bounds (ms) of the latency buckets; the last bucket is +Inf.
inline constexpr std::array<double, 9> kLatencyBucketsMs = {
    1, 5, 10, 25, 50, 100, 250, 500, 1000};

// Counters only grow. Every request ends as exactly one of: cache hit,
// synthesis, error; and lands in exactly one latency bucket (buckets are
// per-range, not cumulative).
class Metrics {
 public:
  void RecordHit(double latency_ms);
  void RecordSynthesis(double latency_ms);
  void RecordError(ErrorCode code, double latency_ms);

  std::uint64_t requests_total() const { return requests_.load(); }
  std::uint64_t cache_hits_total() const { return hits_.load(); }
  std::uint64_t synth_total() const { return synth_.load(); }
  std::uint64_t errors_total(ErrorCode code) const {
    return errors_[static_cast<int>(code)].load();
  }
  std::uint64_t bucket(std::size_t i) const { return buckets_[i].load(); }

  // One "name value" line per series.
  std::string Render() const;

 private:
  void Observe(double latency_ms);

  std::atomic<std::uint64_t> requests_{0};
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> synth_{0};
  std::array<std::atomic<std::uint64_t>, kNumErrorCodes> errors_{};
  std::array<std::atomic<std::uint64_t>, kLatencyBucketsMs.size() + 1> buckets_{};
};

}  // namespace voxsync::service

#endif  // VOXSYNC_SERVICE_METRICS_H_
