#include <CLI11.hpp>

#include <iostream>
#include <mutex>

#include "signals.h"
#include "voxsync/gateway/gateway.h"

int main(int argc, char** argv) {
  const sigset_t signals = voxsync::tools::BlockSignals({SIGINT, SIGTERM, SIGHUP});

  CLI::App app{"voxsync-gateway: api-key checking reverse proxy for voxsync"};
  std::string config_path;
  app.add_option("--config", config_path, "Gateway TOML")->required()->check(CLI::ExistingFile);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "No access log");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto config = voxsync::gateway::LoadGatewayConfig(config_path);
    std::mutex log_mu;
    voxsync::gateway::AccessLog log;
    if (!quiet) {
      log = [&log_mu](const voxsync::gateway::AccessRecord& r) {
        std::lock_guard<std::mutex> lock(log_mu);
        std::cout << r.request_id << ' ' << r.method << ' ' << r.path << ' ' << r.status << ' '
                  << (r.label.empty() ? "-" : r.label) << ' ' << r.latency_ms << "ms\n";
      };
    }
    voxsync::gateway::Gateway gateway(config, log);
    const int port = gateway.Start();
    std::cout << "voxsync-gateway listening on " << config.host << ":" << port << " with "
              << gateway.keystore().size() << " keys" << std::endl;
    for (;;) {
      const int sig = voxsync::tools::WaitFor(signals);
      if (sig != SIGHUP) break;
      try {
        const std::size_t n = gateway.ReloadKeystore();
        std::cout << "keystore reloaded: " << n << " keys" << std::endl;
      } catch (const std::exception& e) {
        std::cerr << "keystore reload rejected, keeping the old keys: " << e.what()
                  << std::endl;
      }
    }
    gateway.Stop();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
