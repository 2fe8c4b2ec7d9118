#ifndef VOXSYNC_GATEWAY_KEYSTORE_H_
#define VOXSYNC_GATEWAY_KEYSTORE_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voxsync/common/error.h"

namespace voxsync::gateway {

// Only the SHA-256 of a key is ever stored.
struct ApiKeyRecord {
  std::string key_hash;  // 64 lowercase hex digits
  std::string label;
  bool enabled = true;

  friend bool operator==(const ApiKeyRecord&, const ApiKeyRecord&) = default;
};

class KeystoreError : public Error {
 public:
  KeystoreError(std::size_t line, const std::string& message)
      : Error("keystore line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Lowercase hex SHA-256 of the secret.
std::string HashApiKey(std::string_view secret);

// One record per line: key_hash <TAB> label <TAB> enabled, where enabled is
// true/false/1/0. Blank lines and lines starting with '#' are skipped.
// Duplicate hashes are rejected.
std::vector<ApiKeyRecord> ParseKeystore(std::string_view text);
std::vector<ApiKeyRecord> LoadKeystore(const std::filesystem::path& path);

enum class AuthOutcome { kAllow, kMissingKey, kUnknownKey, kDisabledKey };

struct AuthDecision {
  AuthOutcome outcome = AuthOutcome::kMissingKey;
  std::string label;  // set on allow

  bool allowed() const { return outcome == AuthOutcome::kAllow; }
  // 200 for allow, 401 missing, 403 otherwise.
  int status() const;
  const char* reason() const;
};

// Snapshot-swapped key set. Authenticate compares the presented key's hash
// against every record with CRYPTO_memcmp, so timing does not depend on which
// record (if any) matched.
class Keystore {
 public:
  explicit Keystore(std::vector<ApiKeyRecord> records = {});

  AuthDecision Authenticate(std::optional<std::string_view> api_key) const;

  // Replaces the whole set. Callers holding the previous snapshot keep it.
  void Replace(std::vector<ApiKeyRecord> records);

  // Parses path and swaps on success; on error the current set stays and the
  // exception propagates. Returns the new record count.
  std::size_t Reload(const std::filesystem::path& path);

  std::size_t size() const;

 private:
  using Snapshot = std::shared_ptr<const std::vector<ApiKeyRecord>>;
  Snapshot snapshot() const;

  mutable std::mutex mu_;
  Snapshot records_;
};

}  // namespace voxsync::gateway

#endif  // VOXSYNC_GATEWAY_KEYSTORE_H_
