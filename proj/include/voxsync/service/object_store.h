#ifndef VOXSYNC_SERVICE_OBJECT_STORE_H_
#define VOXSYNC_SERVICE_OBJECT_STORE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "voxsync/common/error.h"

namespace voxsync::service {

class StorageFull : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Where synthesized audio lives. Objects are named by voice and the first 16
// hex digits of the cache key.
class ObjectStore {
 public:
  virtual ~ObjectStore() = default;

  // Stores bytes and returns the public URL. Storing the same key again
  // is harmless and yields the same URL.
  virtual std::string Put(std::string_view voice, std::string_view key,
                          std::string_view bytes) = 0;
  // object is "{hex16}.wav"; nullopt for anything not stored or malformed.
  virtual std::optional<std::string> Get(std::string_view voice,
                                         std::string_view object) const = 0;
  virtual std::string Url(std::string_view voice, std::string_view key) const = 0;
};

std::string ObjectName(std::string_view key);  // "{key[0:16]}.wav"

// {root}/audio/{voice}/{hex16}.wav, written to a temp file and renamed into
// place so readers never see a partial object.
class FilesystemStore final : public ObjectStore {
 public:
  FilesystemStore(std::filesystem::path root, std::string base_url);

  std::string Put(std::string_view voice, std::string_view key,
                  std::string_view bytes) override;
  std::optional<std::string> Get(std::string_view voice,
                                 std::string_view object) const override;
  std::string Url(std::string_view voice, std::string_view key) const override;

  std::filesystem::path PathFor(std::string_view voice, std::string_view key) const;

 private:
  std::filesystem::path root_;
  std::string base_url_;
};

}  // namespace voxsync::service

#endif  // VOXSYNC_SERVICE_OBJECT_STORE_H_
