#include "voxsync/service/cache.h"

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

namespace voxsync::service {
namespace {

std::string Hex(const unsigned char* p, std::size_t n) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(2 * n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = kDigits[p[i] >> 4];
    out[2 * i + 1] = kDigits[p[i] & 0xF];
  }
  return out;
}

std::string Digest(std::initializer_list<std::string_view> parts) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw Error("EVP_MD_CTX_new failed");
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1;
  for (std::string_view p : parts) {
    ok = ok && EVP_DigestUpdate(ctx, p.data(), p.size()) == 1;
  }
  ok = ok && EVP_DigestFinal_ex(ctx, md, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw Error("SHA-256 failed");
  return Hex(md, len);
}

nlohmann::ordered_json ToJson(const CacheEntry& e) {
  return {{"key", e.key},
          {"voice", e.voice},
          {"url", e.url},
          {"created_at_ms", e.created_at_ms},
          {"audio_bytes", e.audio_bytes},
          {"audio_duration_ms", e.audio_duration_ms}};
}

}  // namespace

std::string CacheKey(std::string_view voice, std::string_view text) {
  return Digest({voice, std::string_view("\x1f", 1), text});
}

std::string Sha256Hex(std::string_view bytes) { return Digest({bytes}); }

ResultCache::ResultCache(const std::filesystem::path& journal,
                         std::size_t max_entries)
    : max_entries_(max_entries) {
  if (journal.has_parent_path()) {
    std::filesystem::create_directories(journal.parent_path());
  }
  {
    std::ifstream in(journal, std::ios::binary);
    std::string line;
    std::uint64_t offset = 0;
    while (in && std::getline(in, line)) {
      const bool terminated = !in.eof();
      if (!terminated) throw JournalCorrupt(offset, "unterminated last line");
      try {
        const auto j = nlohmann::json::parse(line);
        CacheEntry e;
        e.key = j.at("key").get<std::string>();
        e.voice = j.at("voice").get<std::string>();
        e.url = j.at("url").get<std::string>();
        e.created_at_ms = j.at("created_at_ms").get<std::int64_t>();
        e.audio_bytes = j.at("audio_bytes").get<std::uint64_t>();
        e.audio_duration_ms = j.at("audio_duration_ms").get<std::uint64_t>();
        if (e.key.size() != 64) throw Error("bad key length");
        InsertLocked(e);
      } catch (const std::exception& ex) {
        throw JournalCorrupt(offset, ex.what());
      }
      offset += line.size() + 1;
    }
  }
  journal_.open(journal, std::ios::binary | std::ios::app);
  if (!journal_) throw Error("cannot open cache journal " + journal.string());
}

void ResultCache::InsertLocked(const CacheEntry& entry) {
  if (auto it = index_.find(entry.key); it != index_.end()) {
    lru_.erase(it->second);
    index_.erase(it);
  }
  lru_.push_front(entry);
  index_[entry.key] = lru_.begin();
  while (max_entries_ > 0 && lru_.size() > max_entries_) {
    index_.erase(lru_.back().key);
    lru_.pop_back();
  }
}

std::optional<CacheEntry> ResultCache::Get(const std::string& key) {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  lru_.splice(lru_.begin(), lru_, it->second);
  return *it->second;
}

void ResultCache::Put(const CacheEntry& entry) {
  {
    // Journal first: an entry visible in memory is always durable.
    std::lock_guard<std::mutex> lock(journal_mu_);
    journal_ << ToJson(entry).dump() << '\n';
    journal_.flush();
    if (!journal_) throw Error("cache journal write failed");
  }
  std::lock_guard<std::mutex> lock(mu_);
  InsertLocked(entry);
}

std::size_t ResultCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return lru_.size();
}

}  // namespace voxsync::service
