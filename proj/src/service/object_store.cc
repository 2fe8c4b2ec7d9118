#include "voxsync/service/object_store.h"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <fstream>
#include <iterator>
#include <system_error>
#include <thread>

#include "voxsync/synth/voice.h"

namespace voxsync::service {
namespace fs = std::filesystem;

namespace {

bool IsHex16(std::string_view s) {
  return s.size() == 16 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

void CheckVoice(std::string_view voice) {
  if (!synth::IsValidVoiceId(voice)) {
    throw synth::InvalidVoiceId("invalid voice id in object path");
  }
}

[[noreturn]] void ThrowIo(const std::string& what, const std::error_code& ec) {
  if (ec == std::errc::no_space_on_device) throw StorageFull(what + ": " + ec.message());
  throw IoError(what + ": " + ec.message());
}

}  // namespace

std::string ObjectName(std::string_view key) {
  if (key.size() < 16 || !IsHex16(key.substr(0, 16))) {
    throw Error("cache key must start with 16 lowercase hex digits");
  }
  return std::string(key.substr(0, 16)) + ".wav";
}

FilesystemStore::FilesystemStore(fs::path root, std::string base_url)
    : root_(std::move(root)), base_url_(std::move(base_url)) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

fs::path FilesystemStore::PathFor(std::string_view voice,
                                  std::string_view key) const {
  CheckVoice(voice);
  return root_ / "audio" / std::string(voice) / ObjectName(key);
}

std::string FilesystemStore::Url(std::string_view voice,
                                 std::string_view key) const {
  CheckVoice(voice);
  return base_url_ + "/audio/" + std::string(voice) + "/" + ObjectName(key);
}

std::string FilesystemStore::Put(std::string_view voice, std::string_view key,
                                 std::string_view bytes) {
  const fs::path dest = PathFor(voice, key);
  std::error_code ec;
  fs::create_directories(dest.parent_path(), ec);
  if (ec) ThrowIo("create " + dest.parent_path().string(), ec);

  static std::atomic<std::uint64_t> counter{0};
  const fs::path tmp =
      dest.parent_path() /
      ("." + dest.filename().string() + ".tmp" +
       std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) +
       "-" + std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      const std::error_code err(errno, std::generic_category());
      out.close();
      fs::remove(tmp, ec);
      ThrowIo("write " + tmp.string(), err);
    }
  }
  fs::rename(tmp, dest, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    ThrowIo("rename to " + dest.string(), ec);
  }
  return Url(voice, key);
}

std::optional<std::string> FilesystemStore::Get(std::string_view voice,
                                                std::string_view object) const {
  if (!synth::IsValidVoiceId(voice)) return std::nullopt;
  if (object.size() != 20 || object.substr(16) != ".wav" ||
      !IsHex16(object.substr(0, 16))) {
    return std::nullopt;
  }
  std::ifstream in(root_ / "audio" / std::string(voice) / std::string(object),
                   std::ios::binary);
  if (!in) return std::nullopt;
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace voxsync::service
