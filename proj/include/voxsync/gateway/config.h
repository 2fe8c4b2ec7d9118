#ifndef VOXSYNC_GATEWAY_CONFIG_H_
#define VOXSYNC_GATEWAY_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "voxsync/common/env.h"
#include "voxsync/common/error.h"

namespace voxsync::gateway {

class GatewayConfigError : public Error {
 public:
  using Error::Error;
};

// A path prefix forwarded to an upstream origin ("http://host:port").
struct Route {
  std::string prefix;
  std::string upstream;

  friend bool operator==(const Route&, const Route&) = default;
};

// Longest-prefix matching over a fixed set of routes.
class RouteTable {
 public:
  // Throws GatewayConfigError on duplicate or empty prefixes and on
  // upstreams that are not bare http origins.
  explicit RouteTable(std::vector<Route> routes);

  // nullptr when nothing matches.
  const Route* Match(std::string_view path) const;
  const std::vector<Route>& routes() const { return routes_; }

 private:
  std::vector<Route> routes_;  // longest prefix first
};

struct GatewayConfig {
  std::string host = "127.0.0.1";
  int port = 8000;
  std::filesystem::path keystore_path = "keys.tsv";
  std::filesystem::path demo_dir;  // empty: /demo not served
  std::vector<Route> routes;
  int connect_timeout_ms = 2000;
  int read_timeout_ms = 30000;
  int threads = 32;
};

// The /v1/tts/ and /audio/ routes, both to one upstream.
std::vector<Route> DefaultRoutes(const std::string& upstream);

// TOML keys: listen, keystore, demo_dir, upstream (target of the default
// routes), threads, [timeouts] connect_ms / read_ms, and [[routes]] tables
// of prefix and upstream which replace the defaults. Relative paths resolve
// against base_dir. VOXSYNC_GATEWAY_LISTEN, VOXSYNC_GATEWAY_KEYSTORE,
// VOXSYNC_GATEWAY_DEMO_DIR and VOXSYNC_GATEWAY_UPSTREAM override the file;
// the upstream override retargets every route.
GatewayConfig ParseGatewayConfig(std::string_view toml,
                                 const std::filesystem::path& base_dir,
                                 const EnvLookup& env = ProcessEnv());
GatewayConfig LoadGatewayConfig(const std::filesystem::path& file,
                                const EnvLookup& env = ProcessEnv());

}  // namespace voxsync::gateway

#endif  // VOXSYNC_GATEWAY_CONFIG_H_
