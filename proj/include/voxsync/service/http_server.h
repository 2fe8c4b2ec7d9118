#ifndef VOXSYNC_SERVICE_HTTP_SERVER_H_
#define VOXSYNC_SERVICE_HTTP_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "voxsync/service/tts_service.h"

namespace httplib {
class Server;
}

namespace voxsync::service {

// HTTP front of the TTS service:
//   POST /v1/tts/sync            {"text", "voice"} -> {"url", "cached", ...}
//   GET  /audio/{voice}/{hex16}.wav
//   GET  /healthz
//   GET  /metrics
class HttpServer {
 public:
  explicit HttpServer(TtsService& service, int threads = 32);
  ~HttpServer();

  // Binds (port 0 picks a free port) and serves on a background thread.
  // Returns the bound port; throws Error if binding fails.
  int Start(const std::string& host, int port);
  // Binds and serves on the calling thread until Stop().
  void Run(const std::string& host, int port);
  void Stop();

 private:
  TtsService& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace voxsync::service

#endif  // VOXSYNC_SERVICE_HTTP_SERVER_H_
