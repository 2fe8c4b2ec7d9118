#include "voxsync/synth/voice.h"

#include <algorithm>

#include "voxsync/text/normalize.h"

namespace voxsync::synth {
namespace fs = std::filesystem;

std::optional<Backend> ParseBackend(std::string_view name) {
  if (name == "mock_fast") return Backend::kMockFast;
  if (name == "mock_glim") return Backend::kMockGlim;
  return std::nullopt;
}

std::string_view ToString(Backend backend) {
  return backend == Backend::kMockFast ? "mock_fast" : "mock_glim";
}

bool IsValidVoiceId(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-';
  });
}

std::vector<VoiceSpec> DefaultVoiceSpecs(const fs::path& data_dir) {
  VoiceSpec glim{"narrator", Backend::kMockGlim, data_dir / "cmudict-0.7b.txt",
                 data_dir / "g2p_rules.txt", data_dir / "custom_lexicon.tsv"};
  VoiceSpec fast = glim;
  fast.id = "narrator-fast";
  fast.backend = Backend::kMockFast;
  return {glim, fast};
}

namespace {

template <typename T, typename Load>
std::shared_ptr<const T> Memo(
    std::map<fs::path, std::shared_ptr<const T>>& memo, const fs::path& p,
    Load load) {
  auto it = memo.find(p);
  if (it == memo.end()) {
    it = memo.emplace(p, std::make_shared<const T>(load(p))).first;
  }
  return it->second;
}

}  // namespace

std::shared_ptr<const text::LexiconLayer> SharedResources::Cmu(const fs::path& p) {
  std::lock_guard<std::mutex> lock(mu_);
  return Memo(cmu_, p, [](const fs::path& f) { return text::LoadCmuDict(f); });
}

std::shared_ptr<const text::LexiconLayer> SharedResources::Custom(
    const fs::path& p) {
  std::lock_guard<std::mutex> lock(mu_);
  if (p.empty()) {
    return Memo(custom_, p, [](const fs::path&) { return text::LexiconLayer{}; });
  }
  return Memo(custom_, p,
              [](const fs::path& f) { return text::LoadCustomLexicon(f); });
}

std::shared_ptr<const text::G2pRuleTable> SharedResources::G2p(const fs::path& p) {
  std::lock_guard<std::mutex> lock(mu_);
  return Memo(g2p_, p,
              [](const fs::path& f) { return text::G2pRuleTable::Load(f); });
}

std::shared_ptr<const dsp::FeatureExtractor> SharedResources::Extractor() {
  std::lock_guard<std::mutex> lock(mu_);
  if (!fx_) fx_ = std::make_shared<const dsp::FeatureExtractor>();
  return fx_;
}

std::shared_ptr<const AcousticStub> SharedResources::Stub() {
  auto fx = Extractor();
  std::lock_guard<std::mutex> lock(mu_);
  if (!stub_) stub_ = std::make_shared<const AcousticStub>(fx);
  return stub_;
}

std::shared_ptr<const GriffinLimVocoder> SharedResources::Vocoder() {
  auto fx = Extractor();
  std::lock_guard<std::mutex> lock(mu_);
  if (!vocoder_) vocoder_ = std::make_shared<const GriffinLimVocoder>(fx);
  return vocoder_;
}

Voice::Voice(std::string id, std::shared_ptr<const text::LexiconStack> lexicon,
             std::unique_ptr<Synthesizer> synth)
    : id_(std::move(id)), lexicon_(std::move(lexicon)), synth_(std::move(synth)) {}

text::PhonemeSequence Voice::Phonemize(std::string_view text) const {
  return text::Phonemize(text::NormalizeText(text), *lexicon_);
}

SayResult Voice::Say(std::string_view text) const {
  SayResult r;
  r.phonemes = Phonemize(text);
  r.wave = synth_->Synthesize(r.phonemes);
  return r;
}

VoiceSet VoiceSet::Build(const std::vector<VoiceSpec>& specs,
                         SharedResources& res, dsp::Exec exec) {
  VoiceSet set;
  for (const VoiceSpec& spec : specs) {
    if (!IsValidVoiceId(spec.id)) {
      throw InvalidVoiceId("voice id '" + spec.id + "' must match [a-z0-9_-]+");
    }
    if (set.voices_.count(spec.id) != 0) {
      throw Error("voice '" + spec.id + "' is defined twice");
    }
    auto lexicon = std::make_shared<const text::LexiconStack>(
        res.Custom(spec.custom_lexicon), res.Cmu(spec.cmu_dict),
        res.G2p(spec.g2p_rules));
    std::unique_ptr<Synthesizer> synth;
    if (spec.backend == Backend::kMockFast) {
      synth = std::make_unique<MockFastSynthesizer>();
    } else {
      synth = std::make_unique<MockGlimSynthesizer>(res.Stub(), res.Vocoder(), exec);
    }
    set.voices_.emplace(spec.id, std::make_unique<Voice>(spec.id, std::move(lexicon),
                                                         std::move(synth)));
  }
  return set;
}

const Voice* VoiceSet::Find(std::string_view id) const {
  const auto it = voices_.find(id);
  return it == voices_.end() ? nullptr : it->second.get();
}

const Voice& VoiceSet::at(std::string_view id) const {
  const Voice* v = Find(id);
  if (v == nullptr) throw UnknownVoice(id);
  return *v;
}

std::vector<std::string> VoiceSet::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, voice] : voices_) out.push_back(id);
  return out;
}

}  // namespace voxsync::synth
