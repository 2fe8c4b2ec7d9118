#ifndef VOXSYNC_COMMON_ENV_H_
#define VOXSYNC_COMMON_ENV_H_

#include <charconv>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace voxsync {

// Environment access behind a seam so config parsing can be tested.
using EnvLookup = std::function<std::optional<std::string>(const char* name)>;

inline EnvLookup ProcessEnv() {
  return [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

// "host:port" with port in [0, 65535]; nullopt when malformed.
inline std::optional<std::pair<std::string, int>> SplitListen(std::string_view listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  const std::string_view digits = listen.substr(colon + 1);
  int port = -1;
  const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
  if (ec != std::errc() || p != digits.data() + digits.size() || port < 0 || port > 65535) {
    return std::nullopt;
  }
  return std::make_pair(std::string(listen.substr(0, colon)), port);
}

}  // namespace voxsync

#endif  // VOXSYNC_COMMON_ENV_H_
