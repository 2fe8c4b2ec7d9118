#include "voxsync/service/metrics.h"

#include <algorithm>
#include <sstream>

namespace voxsync::service {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadRequest: return "bad_request";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kUnknownVoice: return "unknown_voice";
    case ErrorCode::kTextTooLong: return "text_too_long";
    case ErrorCode::kEmptyText: return "empty_text";
    case ErrorCode::kPoolSaturated: return "pool_saturated";
    case ErrorCode::kStorageError: return "storage_error";
    case ErrorCode::kInternal: return "internal";
  }
  return "internal";
}

int HttpStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadRequest:
    case ErrorCode::kTextTooLong:
    case ErrorCode::kEmptyText:
      return 400;
    case ErrorCode::kNotFound:
    case ErrorCode::kUnknownVoice:
      return 404;
    case ErrorCode::kPoolSaturated:
      return 503;
    case ErrorCode::kStorageError:
    case ErrorCode::kInternal:
      return 500;
  }
  return 500;
}

void Metrics::Observe(double latency_ms) {
  const auto it = std::lower_bound(kLatencyBucketsMs.begin(),
                                   kLatencyBucketsMs.end(), latency_ms);
  ++buckets_[static_cast<std::size_t>(it - kLatencyBucketsMs.begin())];
  ++requests_;
}

void Metrics::RecordHit(double latency_ms) {
  ++hits_;
  Observe(latency_ms);
}

void Metrics::RecordSynthesis(double latency_ms) {
  ++synth_;
  Observe(latency_ms);
}

void Metrics::RecordError(ErrorCode code, double latency_ms) {
  ++errors_[static_cast<int>(code)];
  Observe(latency_ms);
}

std::string Metrics::Render() const {
  std::ostringstream out;
  out << "requests_total " << requests_total() << "\n";
  out << "cache_hits_total " << cache_hits_total() << "\n";
  out << "synth_total " << synth_total() << "\n";
  for (int i = 0; i < kNumErrorCodes; ++i) {
    out << "errors_total{code=\"" << ToString(static_cast<ErrorCode>(i))
        << "\"} " << errors_[i].load() << "\n";
  }
  for (std::size_t i = 0; i < buckets_.size(); ++i) {
    out << "request_latency_ms_bucket{le=\"";
    if (i < kLatencyBucketsMs.size()) {
      out << kLatencyBucketsMs[i];
    } else {
      out << "+Inf";
    }
    out << "\"} " << buckets_[i].load() << "\n";
  }
  return out.str();
}

}  // namespace voxsync::service
