#ifndef VOXSYNC_CLI_PREP_H_
#define VOXSYNC_CLI_PREP_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voxsync/common/error.h"
#include "voxsync/dsp/features.h"

namespace voxsync::cli {

class ManifestError : public Error {
 public:
  ManifestError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// One line of the transcript manifest: wav path (relative to the input
// directory) <TAB> transcript. The utterance id is the file stem.
struct TranscriptEntry {
  std::string id;
  std::filesystem::path wav;
  std::string text;
};

// Skips blank and '#' lines; throws ManifestError otherwise.
std::vector<TranscriptEntry> ParseTranscripts(std::string_view text);

// Optional token durations: id <TAB> space-separated frame counts.
std::map<std::string, std::vector<int>> ParseDurations(std::string_view text);

struct PrepOptions {
  std::filesystem::path in_dir;
  std::filesystem::path transcripts;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> durations;
  int workers = 1;
};

struct PrepRow {
  std::string id;
  std::string text;
  bool accepted = false;
  std::string reason;    // empty when accepted
  std::string features;  // relative to out_dir, accepted rows only
  std::string prosody;
  std::size_t frames = 0;
  double duration_s = 0.0;  // after trimming when trimming succeeded
  std::optional<dsp::TokenProsody> tokens;
};

struct PrepReport {
  std::vector<PrepRow> rows;  // manifest order
  std::size_t accepted = 0;
  std::map<std::string, std::size_t> rejected;  // by reason
};

// Reject reasons: read_error, sample_rate, no_speech, too_short, too_long,
// duplicate_id, duration_mismatch. Per-file problems never stop the batch.
// Writes out_dir/features/{id}.mel.{f32,json}, {id}.prosody.{f32,json} and
// out_dir/manifest.jsonl.
PrepReport RunPrep(const PrepOptions& options);

// The manifest line for one row.
std::string ManifestLine(const PrepRow& row);

}  // namespace voxsync::cli

#endif  // VOXSYNC_CLI_PREP_H_
