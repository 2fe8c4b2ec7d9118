#ifndef VOXSYNC_SERVICE_CACHE_H_
#define VOXSYNC_SERVICE_CACHE_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <list>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "voxsync/common/error.h"

namespace voxsync::service {

// Lowercase hex SHA-256 of voice, 0x1F, text; the text is hashed exactly as
// received.
std::string CacheKey(std::string_view voice, std::string_view text);

// Lowercase hex SHA-256 of arbitrary bytes.
std::string Sha256Hex(std::string_view bytes);

struct CacheEntry {
  std::string key;
  std::string voice;
  std::string url;
  std::int64_t created_at_ms = 0;
  std::uint64_t audio_bytes = 0;
  std::uint64_t audio_duration_ms = 0;

  friend bool operator==(const CacheEntry&, const CacheEntry&) = default;
};

class JournalCorrupt : public Error {
 public:
  JournalCorrupt(std::uint64_t offset, const std::string& what)
      : Error("cache journal corrupt at byte " + std::to_string(offset) + ": " +
              what),
        offset_(offset) {}
  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

// Key -> entry map persisted as an append-only JSON-lines journal that is
// replayed on open. Any unparsable line, including a torn last line, makes
// Open throw JournalCorrupt rather than silently dropping entries.
// max_entries > 0 evicts least recently used entries from memory.
class ResultCache {
 public:
  explicit ResultCache(const std::filesystem::path& journal,
                       std::size_t max_entries = 0);

  std::optional<CacheEntry> Get(const std::string& key);
  void Put(const CacheEntry& entry);
  std::size_t size() const;

 private:
  void InsertLocked(const CacheEntry& entry);

  mutable std::mutex mu_;
  std::size_t max_entries_;
  std::list<CacheEntry> lru_;  // most recent first
  std::unordered_map<std::string, std::list<CacheEntry>::iterator> index_;

  std::mutex journal_mu_;
  std::ofstream journal_;
};

}  // namespace voxsync::service

#endif  // VOXSYNC_SERVICE_CACHE_H_
