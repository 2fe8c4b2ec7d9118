// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <fcntl.h>
#include <openssl/evp.h>
#include <spawn.h>
#include <sys/wait.h>

#include <barrier>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "gateway_fixtures.h"
#include "oracle/dsp_oracle.h"
#include "service_fixtures.h"
#include "voxsync/cli/bench.h"
#include "voxsync/dsp/features.h"
#include "voxsync/dsp/vad.h"
#include "voxsync/service/http_server.h"
#include "voxsync/synth/griffin_lim.h"
#include "voxsync/text/g2p.h"
#include "voxsync/text/lexicon.h"
#include "voxsync/text/normalize.h"
#include "voxsync/text/phonemize.h"

extern char** environ;

namespace {

using namespace voxsync;
namespace fs = std::filesystem;
using testing::TempDir;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fixed(double v, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

dsp::Waveform Samples(std::size_t n, const std::function<double(std::size_t)>& f) {
  dsp::Waveform w;
  w.sample_rate = 24000;
  w.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) w.samples.push_back(static_cast<float>(f(i)));
  return w;
}

dsp::Waveform Sine(double hz, std::size_t n, double amp = 0.5) {
  return Samples(n, [=](std::size_t i) { return amp * std::sin(2 * std::numbers::pi * hz * i / 24000); });
}

std::string RandomSentence(std::mt19937& rng, std::size_t max_chars) {
  static const std::vector<std::string> words = {
      "the", "physics", "of", "light", "is", "strange", "and", "beautiful", "time",
      "moves", "slower", "near", "heavy", "stars", "imagination", "matters", "more",
      "than", "knowledge", "curious", "minds", "ask", "simple", "questions", "every",
      "day", "guten", "tag", "relativity", "explains", "gravity", "as", "geometry"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<std::size_t> len(4, 30);
  std::string s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& w = words[pick(rng)];
    if (s.size() + w.size() + 2 > max_chars) break;
    if (!s.empty()) s += ' ';
    s += w;
  }
  s[0] = static_cast<char>(std::toupper(s[0]));
  return s + ".";
}

std::string Sha256File(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << "0123456789abcdef"[digest[i] >> 4] << "0123456789abcdef"[digest[i] & 0xF];
  }
  return hex.str();
}

int RunQuiet(std::vector<std::string> args) {
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, 1, "/dev/null", O_WRONLY, 0);
  posix_spawn_file_actions_addopen(&actions, 2, "/dev/null", O_WRONLY, 0);
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  pid_t pid;
  const int rc = posix_spawn(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) return -1;
  int status = 0;
  waitpid(pid, &status, 0);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---- criteria ----

Outcome SubsecondDelivery() {
  TempDir dir;
  service::ServiceConfig config = testing::TestConfig(dir.path() / "svc", 4);
  service::TtsService svc(config);
  service::HttpServer server(svc);
  const int service_port = server.Start("127.0.0.1", 0);
  gateway::Gateway gw(
      testing::TestGatewayConfig(dir.path(), "http://127.0.0.1:" + std::to_string(service_port)));

  cli::BenchOptions o;
  o.url = "http://127.0.0.1:" + std::to_string(gw.Start());
  o.api_key = testing::kValidKey;
  o.voice = "narrator-fast";
  o.concurrency = 4;
  o.requests = 500;
  o.mode = cli::BenchMode::kCycle;
  std::mt19937 rng(2024);
  std::set<std::string> texts;
  while (texts.size() < 100) texts.insert(RandomSentence(rng, 200));
  o.corpus.assign(texts.begin(), texts.end());
  std::shuffle(o.corpus.begin(), o.corpus.end(), rng);

  const cli::BenchStats s = cli::RunBench(o);
  const cli::Percentiles miss = s.miss_latency();
  const cli::Percentiles hit = s.hit_latency();
  const bool all_ok = s.status_counts.size() == 1 && s.status_counts.count(200) == 1;
  Outcome out;
  out.pass = all_ok && s.misses == 100 && s.hits == 400 && miss.p95 < 1000.0 &&
             hit.p95 < 50.0 && hit.p95 < miss.p50 && s.wall_s < 120.0;
  out.detail = "miss p95 " + Fixed(miss.p95) + " ms (<1000), hit p95 " + Fixed(hit.p95) +
               " ms (<50), hit p95 < miss p50 " + Fixed(miss.p50) + " ms, " +
               std::to_string(s.misses) + " misses / " + std::to_string(s.hits) + " hits, " +
               Fixed(s.wall_s) + " s (<120)";
  if (!all_ok) out.detail += ", non-200 responses present";
  return out;
}

Outcome CacheSemantics() {
  TempDir dir;
  const service::ServiceConfig config = testing::TestConfig(dir.path());
  const service::SynthesisRequest req{"Imagination is more important than knowledge.",
                                      "narrator", ""};
  std::uint64_t synth = 0;
  service::SynthesisResult first, second, third;
  {
    service::TtsService svc(config);
    first = svc.Synthesize(req);
    second = svc.Synthesize(req);
    synth += svc.metrics().synth_total();
  }
  {
    service::TtsService svc(config);
    third = svc.Synthesize(req);
    synth += svc.metrics().synth_total();
  }
  Outcome out;
  out.pass = !first.cached && second.cached && third.cached && synth == 1 &&
             first.url == second.url && second.url == third.url;
  out.detail = std::string("cached ") + (first.cached ? "1" : "0") + (second.cached ? "1" : "0") +
               (third.cached ? "1" : "0") + ", synth_total " + std::to_string(synth) +
               ", urls " + (first.url == second.url && second.url == third.url ? "identical" : "differ");
  return out;
}

Outcome SingleFlight() {
  TempDir dir;
  const service::ServiceConfig config = testing::TestConfig(dir.path(), 4);
  std::atomic<int> calls{0};
  service::TtsService svc(config, nullptr,
                          testing::CountingFactory(config, calls, std::chrono::milliseconds(10)));
  std::mt19937 rng(99);
  int failed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::string text = RandomSentence(rng, 120) + " " + std::to_string(trial);
    const std::string voice = rng() % 2 ? "narrator" : "narrator-fast";
    const std::uint64_t before = svc.metrics().synth_total();
    std::barrier sync(16);
    std::vector<std::string> urls(16);
    std::vector<std::thread> threads;
    for (int i = 0; i < 16; ++i) {
      threads.emplace_back([&, i] {
        sync.arrive_and_wait();
        try {
          urls[i] = svc.Synthesize({text, voice, ""}).url;
        } catch (const std::exception&) {
        }
      });
    }
    for (auto& t : threads) t.join();
    const bool ok = svc.metrics().synth_total() - before == 1 && !urls[0].empty() &&
                    std::set<std::string>(urls.begin(), urls.end()).size() == 1;
    failed += !ok;
  }
  Outcome out;
  out.pass = failed == 0 && calls.load() == 100;
  out.detail = std::to_string(100 - failed) + "/100 trials with synth +1 and 16 identical URLs, " +
               std::to_string(calls.load()) + " engine calls";
  return out;
}

Outcome LexiconPriority() {
  const auto g2p = std::make_shared<const text::G2pRuleTable>(
      text::G2pRuleTable::Load(fs::path(VOXSYNC_DATA_DIR) / "g2p_rules.txt"));
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> letter('a', 'z');
  std::uniform_int_distribution<int> word_len(3, 9);
  std::uniform_int_distribution<int> phone(0, text::Phone::kNumSymbols - 1);
  std::uniform_int_distribution<int> pron_len(1, 6);
  auto random_word = [&] {
    std::string w(word_len(rng), 'a');
    for (char& c : w) c = static_cast<char>(letter(rng));
    return w;
  };
  auto random_pron = [&] {
    text::Pronunciation p(pron_len(rng), text::Phone::FromIndex(0));
    for (auto& ph : p) ph = text::Phone::FromIndex(phone(rng));
    return p;
  };

  int checked = 0, wrong = 0;
  for (int stack_no = 0; stack_no < 200; ++stack_no) {
    auto custom = std::make_shared<text::LexiconLayer>();
    auto cmu = std::make_shared<text::LexiconLayer>();
    std::vector<std::string> words;
    for (int i = 0; i < 12; ++i) {
      const std::string w = random_word();
      words.push_back(w);
      const int where = static_cast<int>(rng() % 4);  // custom, cmu, both, neither
      if (where == 0 || where == 2) custom->Insert(w, random_pron());
      if (where == 1 || where == 2) cmu->Insert(w, random_pron());
    }
    const text::LexiconStack stack(custom, cmu, g2p);
    for (const std::string& w : words) {
      const text::Resolution r = stack.Resolve(w);
      const text::Pronunciation* in_custom = custom->Find(w);
      const text::Pronunciation* in_cmu = cmu->Find(w);
      bool ok;
      if (in_custom != nullptr) {
        ok = r.source == text::LexiconSource::kCustom && r.phones == *in_custom;
      } else if (in_cmu != nullptr) {
        ok = r.source == text::LexiconSource::kCmu && r.phones == *in_cmu;
      } else {
        ok = r.source == text::LexiconSource::kG2p && r.phones == g2p->Apply(w);
      }
      // The same decision must surface through full-text phonemization.
      const text::PhonemeSequence seq = text::Phonemize(text::NormalizeText(w), stack);
      ok = ok && seq.words.size() == 1 && seq.words[0].source == r.source;
      wrong += !ok;
      ++checked;
    }
  }
  Outcome out;
  out.pass = wrong == 0;
  out.detail = std::to_string(checked - wrong) + "/" + std::to_string(checked) +
               " words across 200 random stacks resolved custom > cmu > g2p";
  return out;
}

Outcome DspOracle() {
  const dsp::FeatureExtractor& fx = dsp::DefaultExtractor();
  std::mt19937 rng(31337);
  std::normal_distribution<double> gauss(0.0, 0.3);
  double worst = 0.0;
  bool shapes_ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    const dsp::Waveform w = Samples(4800, [&](std::size_t) { return gauss(rng); });
    const dsp::MelSpectrogram mel = fx.LogMel(w);
    const std::vector<double> x(w.samples.begin(), w.samples.end());
    const auto ref = oracle::LogMel(x);
    if (ref.size() != mel.frames.rows()) {
      shapes_ok = false;
      continue;
    }
    for (std::size_t t = 0; t < ref.size(); ++t) {
      for (int m = 0; m < 80; ++m) worst = std::max(worst, std::abs(ref[t][m] - mel.frames(t, m)));
    }
  }

  const auto bank = oracle::MakeFilterbank();
  int expected = 0;
  for (int m = 1; m < 80; ++m) {
    if (std::abs(bank.centers[m] - 440) < std::abs(bank.centers[expected] - 440)) expected = m;
  }
  const dsp::MelSpectrogram sine = fx.LogMel(Sine(440, 24000));
  int interior = 0, argmax_ok = 0;
  for (std::size_t t = 4; t + 4 < sine.frames.rows(); ++t) {
    const auto row = sine.frames.row(t);
    ++interior;
    argmax_ok += std::max_element(row.begin(), row.end()) - row.begin() == expected;
  }

  std::uniform_int_distribution<std::size_t> len(1, 100000);
  int counts_ok = 0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = len(rng);
    const auto mel = fx.LogMel(Samples(n, [&](std::size_t) { return gauss(rng); }));
    counts_ok += mel.frames.rows() == n / 300 + 1;
  }
  Outcome out;
  out.pass = shapes_ok && worst <= 1e-6 && argmax_ok == interior && counts_ok == 20;
  out.detail = "max abs diff " + Fixed(worst * 1e9, 3) + "e-9 over 50 signals (<=1e-6), argmax " +
               std::to_string(argmax_ok) + "/" + std::to_string(interior) +
               " interior frames, frame count " + std::to_string(counts_ok) + "/20";
  return out;
}

Outcome PitchRange() {
  const dsp::FeatureExtractor& fx = dsp::DefaultExtractor();
  const auto saw = fx.Pitch(Samples(24000, [](std::size_t i) {
    return 0.8 * (2 * std::fmod(120.0 * i / 24000, 1.0) - 1);
  }));
  const auto good = std::count_if(saw.begin(), saw.end(),
                                  [](double p) { return p > 0 && std::abs(p - 120) <= 3; });
  std::size_t voiced_out_of_range = 0;
  for (double hz : {60.0, 500.0}) {
    for (double p : fx.Pitch(Sine(hz, 24000))) voiced_out_of_range += p != 0.0;
  }
  const double ratio = static_cast<double>(good) / saw.size();
  Outcome out;
  out.pass = ratio >= 0.9 && voiced_out_of_range == 0;
  out.detail = "120 Hz sawtooth " + std::to_string(good) + "/" + std::to_string(saw.size()) +
               " frames within 3 Hz (>=90%), " + std::to_string(voiced_out_of_range) +
               " voiced frames at 60/500 Hz";
  return out;
}

Outcome UtteranceFilter() {
  struct Case {
    double seconds;
    bool accept;
  };
  const std::vector<Case> cases = {{0.099, false}, {0.1, true}, {40.0, true}, {40.0125, false}};
  std::string detail;
  bool pass = true;
  for (const Case& c : cases) {
    const auto n = static_cast<std::size_t>(std::llround(c.seconds * 24000));
    const auto decision = dsp::FilterUtterance(Samples(n, [](std::size_t) { return 0.1; }));
    pass = pass && decision.accepted == c.accept;
    if (!detail.empty()) detail += ", ";
    detail += Fixed(c.seconds, 4) + " s " + (decision.accepted ? "accept" : "reject");
  }
  return {pass, detail};
}

Outcome GriffinLimRoundTrip() {
  const auto fx = std::make_shared<const dsp::FeatureExtractor>();
  const synth::GriffinLimVocoder vocoder(fx);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> freq(150.0, 1500.0);
  std::string detail;
  bool pass = true;
  for (int i = 0; i < 3; ++i) {
    const double hz = freq(rng);
    const dsp::MelSpectrogram mel = fx->LogMel(Sine(hz, 12000, 0.8));
    const dsp::Matrix back = fx->LogMel(vocoder.Vocode(mel)).frames;
    double sum = 0;
    int count = 0;
    for (std::size_t t = 4; t + 4 < std::min(back.rows(), mel.frames.rows()); ++t) {
      for (int m = 0; m < 80; ++m) {
        sum += std::abs(back(t, m) - mel.frames(t, m));
        ++count;
      }
    }
    const double err = sum / count;
    pass = pass && err <= 1.0;
    if (!detail.empty()) detail += ", ";
    detail += Fixed(hz, 1) + " Hz " + Fixed(err, 3);
  }
  return {pass, "mean abs log-mel error " + detail + " (<=1.0)"};
}

Outcome SayDeterminism() {
  TempDir dir;
  std::mt19937 rng(77);
  int identical = 0, runs = 0;
  for (const char* voice : {"narrator", "narrator-fast"}) {
    for (int i = 0; i < 10; ++i) {
      const std::string text = RandomSentence(rng, 120);
      const fs::path a = dir.path() / "a.wav";
      const fs::path b = dir.path() / "b.wav";
      const int ra = RunQuiet({VOXSYNC_BIN, "say", text, "--voice", voice, "-o", a.string()});
      const int rb = RunQuiet({VOXSYNC_BIN, "say", text, "--voice", voice, "-o", b.string()});
      ++runs;
      identical += ra == 0 && rb == 0 && Sha256File(a) == Sha256File(b);
      fs::remove(a);
      fs::remove(b);
    }
  }
  return {identical == runs, std::to_string(identical) + "/" + std::to_string(runs) +
                                 " text x voice pairs gave identical WAV SHA-256"};
}

Outcome GatewayAuthMatrix() {
  TempDir dir;
  testing::FakeUpstream upstream;
  gateway::Gateway gw(testing::TestGatewayConfig(dir.path(), upstream.origin()));
  httplib::Client client("127.0.0.1", gw.Start());
  struct Case {
    const char* name;
    std::optional<std::string> key;
    int status;
  };
  const std::vector<Case> cases = {{"missing", std::nullopt, 401},
                                   {"invalid", "not-a-key", 403},
                                   {"disabled", testing::kDisabledKey, 403},
                                   {"valid", testing::kValidKey, 200}};
  bool pass = true;
  std::string detail;
  for (const Case& c : cases) {
    httplib::Headers h;
    if (c.key) h.emplace("X-Api-Key", *c.key);
    const int before = upstream.count();
    auto tts = client.Post("/v1/tts/sync", h, R"({"text":"hi","voice":"narrator"})",
                           "application/json");
    auto audio = client.Get("/audio/narrator/0123456789abcdef.wav", h);
    const int contacted = upstream.count() - before;
    const int ts = tts ? tts->status : 0;
    const int as = audio ? audio->status : 0;
    pass = pass && ts == c.status && as == c.status && contacted == (c.status == 200 ? 2 : 0);
    if (!detail.empty()) detail += ", ";
    detail += std::string(c.name) + " " + std::to_string(ts) + "/" + std::to_string(as) +
              " upstream+" + std::to_string(contacted);
  }
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
      {"subsecond_delivery", SubsecondDelivery},
      {"cache_semantics", CacheSemantics},
      {"single_flight", SingleFlight},
      {"lexicon_priority", LexiconPriority},
      {"dsp_oracle_equivalence", DspOracle},
      {"pitch_range", PitchRange},
      {"utterance_filter_boundaries", UtteranceFilter},
      {"griffin_lim_round_trip", GriffinLimRoundTrip},
      {"say_determinism", SayDeterminism},
      {"gateway_auth_matrix", GatewayAuthMatrix},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
