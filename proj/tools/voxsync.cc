#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "signals.h"
#include "voxsync/cli/bench.h"
#include "voxsync/cli/prep.h"
#include "voxsync/cli/say.h"
#include "voxsync/dsp/wav.h"
#include "voxsync/service/config.h"
#include "voxsync/service/http_server.h"
#include "voxsync/service/tts_service.h"
#include "voxsync/text/normalize.h"

namespace {

namespace fs = std::filesystem;
using namespace voxsync;

constexpr int kOk = 0;
constexpr int kRuntimeError = 1;
constexpr int kUsage = 2;

struct PrepArgs {
  std::string in_dir, transcripts, out_dir, durations;
  int workers = 1;
};

struct SayArgs {
  std::string text, voice = "narrator", out, config;
};

struct BenchArgs {
  std::string url = "http://127.0.0.1:8000", api_key, voice = "narrator-fast", corpus;
  int concurrency = 4, requests = 100;
  bool unique = false, repeat = false;
};

int Prep(const PrepArgs& a) {
  cli::PrepOptions o;
  o.in_dir = a.in_dir;
  o.transcripts = a.transcripts;
  o.out_dir = a.out_dir;
  if (!a.durations.empty()) o.durations = a.durations;
  o.workers = a.workers;
  const cli::PrepReport r = cli::RunPrep(o);
  std::cout << "accepted " << r.accepted << "\n";
  for (const auto& [reason, n] : r.rejected) {
    std::cout << "rejected " << reason << " " << n << "\n";
  }
  std::cout << "manifest " << (fs::path(a.out_dir) / "manifest.jsonl").string() << "\n";
  return kOk;
}

int Say(const SayArgs& a) {
  const std::vector<synth::VoiceSpec> specs =
      a.config.empty() ? synth::DefaultVoiceSpecs(service::DefaultDataDir())
                       : service::LoadServiceConfig(a.config).voices;
  synth::SharedResources resources;
  const synth::VoiceSet voices = synth::VoiceSet::Build(specs, resources);
  const synth::Voice* voice = voices.Find(a.voice);
  if (voice == nullptr) {
    std::cerr << "unknown voice '" << a.voice << "'; available:";
    for (const auto& id : voices.ids()) std::cerr << ' ' << id;
    std::cerr << "\n";
    return kUsage;
  }
  synth::SayResult result;
  try {
    result = voice->Say(a.text);
  } catch (const text::TextTooLong& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const text::EmptyAfterNormalization& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  dsp::WriteWav(a.out, result.wave);
  std::cout << cli::PhonemeReport(result.phonemes);
  std::cout << "wrote " << a.out << " (" << result.wave.size() << " samples)\n";
  return kOk;
}

int Bench(const BenchArgs& a) {
  cli::BenchOptions o;
  o.url = a.url;
  o.api_key = a.api_key;
  o.voice = a.voice;
  o.concurrency = a.concurrency;
  o.requests = a.requests;
  o.mode = a.unique ? cli::BenchMode::kUnique
                    : (a.repeat ? cli::BenchMode::kRepeat : cli::BenchMode::kCycle);
  if (!a.corpus.empty()) {
    std::ifstream in(a.corpus);
    if (!in) throw Error("cannot read corpus " + a.corpus);
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) o.corpus.push_back(line);
    }
  } else {
    o.corpus = {"Hello world."};
  }
  const cli::BenchStats s = cli::RunBench(o);
  std::cout << s.Report();
  return s.any_server_error() ? kRuntimeError : kOk;
}

int Serve(const std::string& config_path, const sigset_t& signals) {
  const service::ServiceConfig config = config_path.empty()
                                            ? service::ParseServiceConfig("", fs::current_path())
                                            : service::LoadServiceConfig(config_path);
  service::TtsService svc(config);
  service::HttpServer server(svc);
  const int port = server.Start(config.host, config.port);
  std::cout << "voxsync serving on " << config.host << ":" << port << " with "
            << svc.workers() << " workers" << std::endl;
  const int sig = tools::WaitFor(signals);
  std::cout << "signal " << sig << ", stopping" << std::endl;
  server.Stop();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  const sigset_t signals = tools::BlockSignals({SIGINT, SIGTERM});

  CLI::App app{"voxsync: synchronous TTS service and operator tools"};
  app.require_subcommand(1);

  PrepArgs prep;
  auto* prep_cmd = app.add_subcommand("prep", "Trim, filter and extract features for a corpus");
  prep_cmd->add_option("--in-dir", prep.in_dir, "Directory holding the WAV files")->required();
  prep_cmd->add_option("--transcripts", prep.transcripts, "TSV of <wav path> TAB <transcript>")
      ->required();
  prep_cmd->add_option("--out-dir", prep.out_dir, "Output directory")->required();
  prep_cmd->add_option("--durations", prep.durations,
                       "TSV of <id> TAB <token frame counts> for token averages");
  prep_cmd->add_option("-j,--workers", prep.workers, "Files processed in parallel")
      ->check(CLI::PositiveNumber);

  SayArgs say;
  auto* say_cmd = app.add_subcommand("say", "Synthesize one text locally and write a WAV");
  say_cmd->add_option("text", say.text, "Text to speak")->required();
  say_cmd->add_option("--voice", say.voice, "Voice id")->capture_default_str();
  say_cmd->add_option("-o,--out", say.out, "Output WAV path")->required();
  say_cmd->add_option("--config", say.config, "Service TOML to take voice definitions from");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Closed-loop load test against a gateway");
  bench_cmd->add_option("--url", bench.url, "Gateway origin")->capture_default_str();
  bench_cmd->add_option("--api-key", bench.api_key, "API key")->envname("VOXSYNC_API_KEY");
  bench_cmd->add_option("--voice", bench.voice, "Voice id")->capture_default_str();
  bench_cmd->add_option("-c,--concurrency", bench.concurrency, "Closed-loop workers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("-n,--requests", bench.requests, "Total requests")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench_cmd->add_option("--corpus", bench.corpus, "Text file, one request text per line")
      ->check(CLI::ExistingFile);
  auto* unique = bench_cmd->add_flag("--unique", bench.unique, "Never repeat a text");
  auto* repeat = bench_cmd->add_flag("--repeat", bench.repeat, "Send the first text every time");
  unique->excludes(repeat);

  std::string serve_config;
  auto* serve_cmd = app.add_subcommand("serve", "Run the synchronous TTS HTTP service");
  serve_cmd->add_option("--config", serve_config, "Service TOML")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*prep_cmd) return Prep(prep);
    if (*say_cmd) return Say(say);
    if (*bench_cmd) return Bench(bench);
    if (*serve_cmd) return Serve(serve_config, signals);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsage;
}
