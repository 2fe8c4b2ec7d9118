#include "voxsync/service/config.h"

#include <charconv>
#include <tuple>
#include <fstream>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace voxsync::service {
namespace fs = std::filesystem;

fs::path DefaultDataDir(const EnvLookup& env) {
  if (auto v = env("VOXSYNC_DATA_DIR")) return *v;
  return VOXSYNC_DEFAULT_DATA_DIR;
}

namespace {

template <typename T>
T ParseNumber(std::string_view s, const char* what) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ConfigError(std::string(what) + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

fs::path Resolve(const fs::path& base, const fs::path& p) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

template <typename T>
T Integer(const toml::table& t, std::string_view key, T fallback) {
  const toml::node* n = t.get(key);
  if (n == nullptr) return fallback;
  const auto v = n->value<std::int64_t>();
  if (!v || *v < 0) {
    throw ConfigError(std::string(key) + " must be a non-negative integer");
  }
  return static_cast<T>(*v);
}

std::optional<std::string> String(const toml::table& t, std::string_view key) {
  const toml::node* n = t.get(key);
  if (n == nullptr) return std::nullopt;
  const auto v = n->value<std::string>();
  if (!v) throw ConfigError(std::string(key) + " must be a string");
  return v;
}

}  // namespace

void ParseListen(std::string_view listen, std::string& host, int& port) {
  const auto parts = SplitListen(listen);
  if (!parts) {
    throw ConfigError("listen must be host:port, got '" + std::string(listen) + "'");
  }
  std::tie(host, port) = *parts;
}

ServiceConfig ParseServiceConfig(std::string_view text, const fs::path& base_dir,
                                 const EnvLookup& env) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config line " << e.source().begin.line << ": " << e.description();
    throw ConfigError(msg.str());
  }

  ServiceConfig c;
  if (auto v = String(root, "listen")) ParseListen(*v, c.host, c.port);
  if (auto v = String(root, "base_url")) c.base_url = *v;
  if (auto v = String(root, "storage_root")) c.storage_root = *v;
  c.storage_root = Resolve(base_dir, c.storage_root);
  if (auto v = String(root, "journal_path")) c.journal_path = *v;
  c.journal_path = Resolve(base_dir, c.journal_path);
  if (auto v = String(root, "data_dir")) {
    c.data_dir = Resolve(base_dir, *v);
  } else {
    c.data_dir = DefaultDataDir(env);
  }
  if (const toml::table* pool = root["pool"].as_table()) {
    c.pool_size = Integer<int>(*pool, "size", c.pool_size);
    c.queue_depth = Integer<std::size_t>(*pool, "queue_depth", c.queue_depth);
    c.queue_timeout_ms = Integer<int>(*pool, "queue_timeout_ms", c.queue_timeout_ms);
  }
  if (const toml::table* cache = root["cache"].as_table()) {
    c.cache_max_entries = Integer<std::size_t>(*cache, "max_entries", 0);
  }

  // Environment overrides.
  if (auto v = env("VOXSYNC_LISTEN")) ParseListen(*v, c.host, c.port);
  if (auto v = env("VOXSYNC_BASE_URL")) c.base_url = *v;
  if (auto v = env("VOXSYNC_STORAGE_ROOT")) c.storage_root = *v;
  if (auto v = env("VOXSYNC_JOURNAL_PATH")) c.journal_path = *v;
  if (auto v = env("VOXSYNC_DATA_DIR")) c.data_dir = *v;
  if (auto v = env("VOXSYNC_POOL_SIZE")) c.pool_size = ParseNumber<int>(*v, "VOXSYNC_POOL_SIZE");
  if (auto v = env("VOXSYNC_QUEUE_DEPTH")) {
    c.queue_depth = ParseNumber<std::size_t>(*v, "VOXSYNC_QUEUE_DEPTH");
  }
  if (auto v = env("VOXSYNC_QUEUE_TIMEOUT_MS")) {
    c.queue_timeout_ms = ParseNumber<int>(*v, "VOXSYNC_QUEUE_TIMEOUT_MS");
  }
  if (auto v = env("VOXSYNC_CACHE_MAX_ENTRIES")) {
    c.cache_max_entries = ParseNumber<std::size_t>(*v, "VOXSYNC_CACHE_MAX_ENTRIES");
  }
  if (c.queue_depth == 0) throw ConfigError("queue_depth must be > 0");

  if (const toml::array* voices = root["voices"].as_array()) {
    const auto defaults = synth::DefaultVoiceSpecs(c.data_dir);
    for (const toml::node& node : *voices) {
      const toml::table* t = node.as_table();
      if (t == nullptr) throw ConfigError("[[voices]] entries must be tables");
      synth::VoiceSpec spec = defaults.front();
      const auto id = String(*t, "id");
      if (!id) throw ConfigError("voice without id");
      spec.id = *id;
      if (!synth::IsValidVoiceId(spec.id)) {
        throw ConfigError("voice id '" + spec.id + "' must match [a-z0-9_-]+");
      }
      if (auto b = String(*t, "backend")) {
        const auto backend = synth::ParseBackend(*b);
        if (!backend) throw ConfigError("unknown backend '" + *b + "'");
        spec.backend = *backend;
      }
      if (auto p = String(*t, "cmu_dict")) spec.cmu_dict = Resolve(c.data_dir, *p);
      if (auto p = String(*t, "g2p_rules")) spec.g2p_rules = Resolve(c.data_dir, *p);
      if (auto p = String(*t, "custom_lexicon")) {
        spec.custom_lexicon = p->empty() ? fs::path() : Resolve(c.data_dir, *p);
      }
      c.voices.push_back(spec);
    }
  } else {
    c.voices = synth::DefaultVoiceSpecs(c.data_dir);
  }
  return c;
}

ServiceConfig LoadServiceConfig(const fs::path& file, const EnvLookup& env) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseServiceConfig(buf.str(), file.parent_path(), env);
}

}  // namespace voxsync::service
