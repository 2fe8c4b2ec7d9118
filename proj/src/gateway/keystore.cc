#include "voxsync/gateway/keystore.h"

#include <openssl/crypto.h>
#include <openssl/evp.h>

#include <fstream>
#include <set>
#include <sstream>

namespace voxsync::gateway {

std::string HashApiKey(std::string_view secret) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(secret.data(), secret.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

namespace {

bool IsHashHex(std::string_view s) {
  if (s.size() != 64) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

}  // namespace

std::vector<ApiKeyRecord> ParseKeystore(std::string_view text) {
  std::vector<ApiKeyRecord> records;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3) {
      throw KeystoreError(line_no, "expected 3 tab-separated fields, got " +
                                       std::to_string(fields.size()));
    }
    if (!IsHashHex(fields[0])) {
      throw KeystoreError(line_no, "key_hash must be 64 lowercase hex digits");
    }
    ApiKeyRecord r;
    r.key_hash = std::string(fields[0]);
    r.label = std::string(fields[1]);
    if (fields[2] == "true" || fields[2] == "1") {
      r.enabled = true;
    } else if (fields[2] == "false" || fields[2] == "0") {
      r.enabled = false;
    } else {
      throw KeystoreError(line_no, "enabled must be true, false, 1 or 0");
    }
    if (!seen.insert(r.key_hash).second) {
      throw KeystoreError(line_no, "duplicate key_hash");
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ApiKeyRecord> LoadKeystore(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KeystoreError(0, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseKeystore(text.str());
}

int AuthDecision::status() const {
  switch (outcome) {
    case AuthOutcome::kAllow: return 200;
    case AuthOutcome::kMissingKey: return 401;
    default: return 403;
  }
}

const char* AuthDecision::reason() const {
  switch (outcome) {
    case AuthOutcome::kAllow: return "allowed";
    case AuthOutcome::kMissingKey: return "missing_api_key";
    case AuthOutcome::kUnknownKey: return "invalid_api_key";
    case AuthOutcome::kDisabledKey: return "disabled_api_key";
  }
  return "invalid_api_key";
}

Keystore::Keystore(std::vector<ApiKeyRecord> records)
    : records_(std::make_shared<const std::vector<ApiKeyRecord>>(std::move(records))) {}

Keystore::Snapshot Keystore::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_;
}

void Keystore::Replace(std::vector<ApiKeyRecord> records) {
  auto next = std::make_shared<const std::vector<ApiKeyRecord>>(std::move(records));
  std::lock_guard<std::mutex> lock(mu_);
  records_ = std::move(next);
}

std::size_t Keystore::Reload(const std::filesystem::path& path) {
  auto records = LoadKeystore(path);
  const std::size_t n = records.size();
  Replace(std::move(records));
  return n;
}

std::size_t Keystore::size() const { return snapshot()->size(); }

AuthDecision Keystore::Authenticate(std::optional<std::string_view> api_key) const {
  AuthDecision d;
  if (!api_key || api_key->empty()) {
    d.outcome = AuthOutcome::kMissingKey;
    return d;
  }
  const std::string hash = HashApiKey(*api_key);
  const Snapshot records = snapshot();
  const ApiKeyRecord* match = nullptr;
  for (const ApiKeyRecord& r : *records) {
    // No early exit: every record is compared.
    const bool equal = CRYPTO_memcmp(hash.data(), r.key_hash.data(), hash.size()) == 0;
    if (equal) match = &r;
  }
  if (match == nullptr) {
    d.outcome = AuthOutcome::kUnknownKey;
  } else if (!match->enabled) {
    d.outcome = AuthOutcome::kDisabledKey;
  } else {
    d.outcome = AuthOutcome::kAllow;
    d.label = match->label;
  }
  return d;
}

}  // namespace voxsync::gateway
