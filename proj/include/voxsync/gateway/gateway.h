#ifndef VOXSYNC_GATEWAY_GATEWAY_H_
#define VOXSYNC_GATEWAY_GATEWAY_H_

#include <functional>
#include <memory>
#include <string>
#include <thread>

#include "voxsync/gateway/config.h"
#include "voxsync/gateway/keystore.h"

namespace httplib {
class Server;
}

namespace voxsync::gateway {

struct AccessRecord {
  std::string request_id;
  std::string method;
  std::string path;
  int status = 0;
  std::string label;  // empty unless authenticated
  double latency_ms = 0.0;
};

using AccessLog = std::function<void(const AccessRecord&)>;

// Random UUID v4 in canonical lowercase form.
std::string NewRequestId();

// Reverse proxy in front of the TTS service: api-key check, then
// longest-prefix routing. /healthz and the /demo static mount need no key;
// POST /admin/reload-keystore re-reads the keystore file and needs one.
class Gateway {
 public:
  // Loads the keystore from config.keystore_path.
  explicit Gateway(GatewayConfig config, AccessLog log = nullptr);
  ~Gateway();
  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  // Binds (port 0 picks a free port), serves on a background thread and
  // returns the bound port.
  int Start();
  void Run();  // blocking listen on the configured address
  void Stop();

  std::size_t ReloadKeystore();
  const Keystore& keystore() const { return keystore_; }
  const GatewayConfig& config() const { return config_; }

 private:
  GatewayConfig config_;
  AccessLog log_;
  Keystore keystore_;
  RouteTable routes_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace voxsync::gateway

#endif  // VOXSYNC_GATEWAY_GATEWAY_H_
