#ifndef VOXSYNC_SERVICE_TTS_SERVICE_H_
#define VOXSYNC_SERVICE_TTS_SERVICE_H_

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voxsync/service/cache.h"
#include "voxsync/service/config.h"
#include "voxsync/service/metrics.h"
#include "voxsync/service/object_store.h"
#include "voxsync/service/worker_pool.h"
#include "voxsync/synth/voice.h"

namespace voxsync::service {

struct SynthesisRequest {
  std::string text;
  std::string voice;
  std::string request_id;
};

struct SynthesisResult {
  std::string url;
  bool cached = false;
  std::uint64_t synthesis_ms = 0;
  std::uint64_t audio_duration_ms = 0;
};

class ServiceError : public Error {
 public:
  ServiceError(ErrorCode code, const std::string& message)
      : Error(message), code_(code) {}
  ErrorCode code() const { return code_; }
  int http_status() const { return HttpStatus(code_); }

 private:
  ErrorCode code_;
};

// What a pool worker owns: warm voices that turn text into audio.
class SynthesisEngine {
 public:
  virtual ~SynthesisEngine() = default;
  virtual synth::SayResult Say(std::string_view voice, std::string_view text) = 0;
};

using EngineFactory = std::function<std::unique_ptr<SynthesisEngine>(int worker)>;

// One VoiceSet per worker, all sharing the lexicons and DSP tables loaded
// through `resources`.
EngineFactory VoiceEngineFactory(std::vector<synth::VoiceSpec> specs,
                                 std::shared_ptr<synth::SharedResources> resources);

// Cache lookup, pooled synthesis, object storage and cache write-back.
// Identical requests that arrive while one is being synthesized wait for
// that synthesis instead of starting their own, and are answered as cache
// hits. No lock is held while synthesizing.
class TtsService {
 public:
  // A null store means a FilesystemStore at config.storage_root; a null
  // factory means VoiceEngineFactory over config.voices. Throws
  // JournalCorrupt when the cache journal cannot be replayed.
  explicit TtsService(const ServiceConfig& config,
                      std::shared_ptr<ObjectStore> store = nullptr,
                      EngineFactory factory = nullptr);

  // Throws ServiceError.
  SynthesisResult Synthesize(const SynthesisRequest& request);

  // Counts a request turned away before it reached Synthesize.
  void RecordRejected(ErrorCode code) { metrics_.RecordError(code, 0.0); }

  const Metrics& metrics() const { return metrics_; }
  ObjectStore& store() { return *store_; }
  const std::vector<std::string>& voices() const { return voice_ids_; }
  int workers() const { return pool_.workers(); }

 private:
  struct Flight {
    std::mutex mu;
    std::condition_variable cv;
    bool done = false;
    std::optional<CacheEntry> entry;
    std::exception_ptr error;
  };

  SynthesisResult Serve(const SynthesisRequest& request, const std::string& key);
  CacheEntry Produce(const SynthesisRequest& request, const std::string& key,
                     std::uint64_t& synthesis_ms);

  ServiceConfig config_;
  std::vector<std::string> voice_ids_;
  std::shared_ptr<ObjectStore> store_;
  ResultCache cache_;
  Metrics metrics_;
  std::mutex flights_mu_;
  std::map<std::string, std::shared_ptr<Flight>> flights_;
  WorkerPool<SynthesisEngine> pool_;
};

}  // namespace voxsync::service

#endif  // VOXSYNC_SERVICE_TTS_SERVICE_H_
