#include "voxsync/service/tts_service.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "voxsync/dsp/wav.h"
#include "voxsync/text/normalize.h"

namespace voxsync::service {
namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

class VoiceSetEngine final : public SynthesisEngine {
 public:
  explicit VoiceSetEngine(synth::VoiceSet voices) : voices_(std::move(voices)) {}
  synth::SayResult Say(std::string_view voice, std::string_view text) override {
    return voices_.at(voice).Say(text);
  }

 private:
  synth::VoiceSet voices_;
};

std::int64_t NowMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

EngineFactory VoiceEngineFactory(std::vector<synth::VoiceSpec> specs,
                                 std::shared_ptr<synth::SharedResources> resources) {
  return [specs = std::move(specs), resources](int) -> std::unique_ptr<SynthesisEngine> {
    return std::make_unique<VoiceSetEngine>(synth::VoiceSet::Build(specs, *resources));
  };
}

TtsService::TtsService(const ServiceConfig& config, std::shared_ptr<ObjectStore> store,
                       EngineFactory factory)
    : config_(config),
      store_(store ? std::move(store)
                   : std::make_shared<FilesystemStore>(config.storage_root,
                                                       config.base_url)),
      cache_(config.journal_path, config.cache_max_entries),
      pool_(PoolOptions{config.pool_size, config.queue_depth,
                        std::chrono::milliseconds(config.queue_timeout_ms)},
            factory ? factory
                    : VoiceEngineFactory(config.voices,
                                         std::make_shared<synth::SharedResources>())) {
  for (const auto& v : config.voices) voice_ids_.push_back(v.id);
}

SynthesisResult TtsService::Synthesize(const SynthesisRequest& request) {
  const auto start = Clock::now();
  try {
    if (std::find(voice_ids_.begin(), voice_ids_.end(), request.voice) ==
        voice_ids_.end()) {
      throw ServiceError(ErrorCode::kUnknownVoice,
                         "unknown voice '" + request.voice + "'");
    }
    if (request.text.empty()) throw ServiceError(ErrorCode::kEmptyText, "text is empty");
    const std::size_t cps = text::CountCodePoints(request.text);
    if (cps > text::kMaxTextCodePoints) {
      throw ServiceError(ErrorCode::kTextTooLong, text::TextTooLong(cps).what());
    }
    SynthesisResult result = Serve(request, CacheKey(request.voice, request.text));
    if (result.cached) {
      metrics_.RecordHit(MsSince(start));
    } else {
      metrics_.RecordSynthesis(MsSince(start));
    }
    return result;
  } catch (const ServiceError& e) {
    metrics_.RecordError(e.code(), MsSince(start));
    throw;
  } catch (const std::exception& e) {
    metrics_.RecordError(ErrorCode::kInternal, MsSince(start));
    throw ServiceError(ErrorCode::kInternal, e.what());
  }
}

SynthesisResult TtsService::Serve(const SynthesisRequest& request,
                                  const std::string& key) {
  if (auto hit = cache_.Get(key)) {
    return {hit->url, true, 0, hit->audio_duration_ms};
  }

  std::shared_ptr<Flight> flight;
  bool leader = false;
  {
    std::lock_guard<std::mutex> lock(flights_mu_);
    auto& slot = flights_[key];
    if (!slot) {
      slot = std::make_shared<Flight>();
      leader = true;
    }
    flight = slot;
  }

  if (!leader) {
    std::unique_lock<std::mutex> lock(flight->mu);
    flight->cv.wait(lock, [&] { return flight->done; });
    if (flight->error) std::rethrow_exception(flight->error);
    return {flight->entry->url, true, 0, flight->entry->audio_duration_ms};
  }

  SynthesisResult result;
  std::exception_ptr error;
  try {
    // The previous leader for this key may have finished between the cache
    // miss above and taking the flight.
    if (auto hit = cache_.Get(key)) {
      flight->entry = *hit;
      result = {hit->url, true, 0, hit->audio_duration_ms};
    } else {
      std::uint64_t synthesis_ms = 0;
      flight->entry = Produce(request, key, synthesis_ms);
      result = {flight->entry->url, false, synthesis_ms,
                flight->entry->audio_duration_ms};
    }
  } catch (...) {
    error = std::current_exception();
  }
  {
    std::lock_guard<std::mutex> lock(flights_mu_);
    flights_.erase(key);
  }
  {
    std::lock_guard<std::mutex> lock(flight->mu);
    flight->error = error;
    flight->done = true;
  }
  flight->cv.notify_all();
  if (error) std::rethrow_exception(error);
  return result;
}

CacheEntry TtsService::Produce(const SynthesisRequest& request, const std::string& key,
                               std::uint64_t& synthesis_ms) {
  struct Output {
    std::string wav;
    std::uint64_t duration_ms;
    double ms;
  };
  Output out;
  try {
    out = pool_.Run([&](SynthesisEngine& engine) {
      const auto start = Clock::now();
      const synth::SayResult said = engine.Say(request.voice, request.text);
      const auto duration_ms = static_cast<std::uint64_t>(std::llround(
          1000.0 * static_cast<double>(said.wave.size()) / said.wave.sample_rate));
      std::string wav = dsp::EncodeWav(said.wave);
      return Output{std::move(wav), duration_ms, MsSince(start)};
    });
  } catch (const PoolSaturated& e) {
    throw ServiceError(ErrorCode::kPoolSaturated, e.what());
  } catch (const text::TextTooLong& e) {
    throw ServiceError(ErrorCode::kTextTooLong, e.what());
  } catch (const text::EmptyAfterNormalization& e) {
    throw ServiceError(ErrorCode::kEmptyText, e.what());
  } catch (const synth::UnknownVoice& e) {
    throw ServiceError(ErrorCode::kUnknownVoice, e.what());
  }
  synthesis_ms = static_cast<std::uint64_t>(std::ceil(out.ms));

  CacheEntry entry;
  entry.key = key;
  entry.voice = request.voice;
  try {
    entry.url = store_->Put(request.voice, key, out.wav);
  } catch (const StorageFull& e) {
    throw ServiceError(ErrorCode::kStorageError, e.what());
  } catch (const IoError& e) {
    throw ServiceError(ErrorCode::kStorageError, e.what());
  }
  entry.created_at_ms = NowMs();
  entry.audio_bytes = out.wav.size();
  entry.audio_duration_ms = out.duration_ms;
  cache_.Put(entry);
  return entry;
}

}  // namespace voxsync::service
