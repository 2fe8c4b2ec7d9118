#ifndef VOXSYNC_SYNTH_VOICE_H_
#define VOXSYNC_SYNTH_VOICE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voxsync/common/error.h"
#include "voxsync/synth/synthesizer.h"
#include "voxsync/text/lexicon.h"

namespace voxsync::synth {

enum class Backend { kMockFast, kMockGlim };

std::optional<Backend> ParseBackend(std::string_view name);
std::string_view ToString(Backend backend);

class InvalidVoiceId : public Error {
 public:
  using Error::Error;
};

class UnknownVoice : public Error {
 public:
  explicit UnknownVoice(std::string_view id)
      : Error("unknown voice '" + std::string(id) + "'") {}
};

// Voice ids appear in storage paths and URLs: [a-z0-9_-]+ only.
bool IsValidVoiceId(std::string_view id);

struct VoiceSpec {
  std::string id;
  Backend backend = Backend::kMockGlim;
  std::filesystem::path cmu_dict;
  std::filesystem::path g2p_rules;
  std::filesystem::path custom_lexicon;  // empty = no custom layer
};

// "narrator" (mock_glim) and "narrator-fast" (mock_fast) over the lexicon
// files shipped in data_dir.
std::vector<VoiceSpec> DefaultVoiceSpecs(const std::filesystem::path& data_dir);

// Loads each lexicon file and builds the DSP tables once; everything handed
// out is immutable and shared by every voice set built from it.
class SharedResources {
 public:
  std::shared_ptr<const text::LexiconLayer> Cmu(const std::filesystem::path& p);
  std::shared_ptr<const text::LexiconLayer> Custom(const std::filesystem::path& p);
  std::shared_ptr<const text::G2pRuleTable> G2p(const std::filesystem::path& p);
  std::shared_ptr<const dsp::FeatureExtractor> Extractor();
  std::shared_ptr<const AcousticStub> Stub();
  std::shared_ptr<const GriffinLimVocoder> Vocoder();

 private:
  std::mutex mu_;
  std::map<std::filesystem::path, std::shared_ptr<const text::LexiconLayer>> cmu_;
  std::map<std::filesystem::path, std::shared_ptr<const text::LexiconLayer>> custom_;
  std::map<std::filesystem::path, std::shared_ptr<const text::G2pRuleTable>> g2p_;
  std::shared_ptr<const dsp::FeatureExtractor> fx_;
  std::shared_ptr<const AcousticStub> stub_;
  std::shared_ptr<const GriffinLimVocoder> vocoder_;
};

struct SayResult {
  text::PhonemeSequence phonemes;
  dsp::Waveform wave;
};

// Text -> normalization -> phonemes -> audio for one voice.
class Voice {
 public:
  Voice(std::string id, std::shared_ptr<const text::LexiconStack> lexicon,
        std::unique_ptr<Synthesizer> synth);

  const std::string& id() const { return id_; }
  std::string_view backend() const { return synth_->backend(); }
  const text::LexiconStack& lexicon() const { return *lexicon_; }
  const Synthesizer& synthesizer() const { return *synth_; }

  // Throws text::TextTooLong, text::EmptyAfterNormalization.
  text::PhonemeSequence Phonemize(std::string_view text) const;
  SayResult Say(std::string_view text) const;

 private:
  std::string id_;
  std::shared_ptr<const text::LexiconStack> lexicon_;
  std::unique_ptr<Synthesizer> synth_;
};

// The voices one synthesis worker owns.
class VoiceSet {
 public:
  // Throws InvalidVoiceId, or Error for a duplicate id or unreadable file.
  static VoiceSet Build(const std::vector<VoiceSpec>& specs,
                        SharedResources& resources,
                        dsp::Exec exec = dsp::Exec::Serial());

  const Voice* Find(std::string_view id) const;
  const Voice& at(std::string_view id) const;  // throws UnknownVoice
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, std::unique_ptr<Voice>, std::less<>> voices_;
};

}  // namespace voxsync::synth

#endif  // VOXSYNC_SYNTH_VOICE_H_
