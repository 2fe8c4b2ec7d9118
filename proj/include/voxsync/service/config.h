#ifndef VOXSYNC_SERVICE_CONFIG_H_
#define VOXSYNC_SERVICE_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voxsync/common/env.h"
#include "voxsync/common/error.h"
#include "voxsync/synth/voice.h"

namespace voxsync::service {

class ConfigError : public Error {
 public:
  using Error::Error;
};

// $VOXSYNC_DATA_DIR, else the data/ directory of the source tree.
std::filesystem::path DefaultDataDir(const EnvLookup& env = ProcessEnv());

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string base_url = "http://127.0.0.1:8080";
  std::filesystem::path storage_root = "var/storage";
  std::filesystem::path journal_path = "var/cache.jsonl";
  std::filesystem::path data_dir;
  int pool_size = 0;  // 0 = hardware concurrency
  std::size_t queue_depth = 64;
  int queue_timeout_ms = 5000;
  std::size_t cache_max_entries = 0;  // 0 = unbounded
  std::vector<synth::VoiceSpec> voices;
};

// "host:port"; throws ConfigError.
void ParseListen(std::string_view listen, std::string& host, int& port);

// TOML keys: listen, base_url, storage_root, journal_path, data_dir,
// [pool] size / queue_depth / queue_timeout_ms, [cache] max_entries, and
// [[voices]] tables of id, backend, cmu_dict, g2p_rules, custom_lexicon.
// Relative paths resolve against base_dir, voice lexicon paths against
// data_dir. No [[voices]] means the two default voices. Afterwards the
// VOXSYNC_LISTEN, VOXSYNC_BASE_URL, VOXSYNC_STORAGE_ROOT,
// VOXSYNC_JOURNAL_PATH, VOXSYNC_DATA_DIR, VOXSYNC_POOL_SIZE,
// VOXSYNC_QUEUE_DEPTH, VOXSYNC_QUEUE_TIMEOUT_MS and
// VOXSYNC_CACHE_MAX_ENTRIES variables override the file.
ServiceConfig ParseServiceConfig(std::string_view toml,
                                 const std::filesystem::path& base_dir,
                                 const EnvLookup& env = ProcessEnv());
ServiceConfig LoadServiceConfig(const std::filesystem::path& file,
                                const EnvLookup& env = ProcessEnv());

}  // namespace voxsync::service

#endif  // VOXSYNC_SERVICE_CONFIG_H_
