#include "voxsync/gateway/gateway.h"

#include <httplib.h>

#include <boost/uuid/random_generator.hpp>
#include <boost/uuid/uuid_io.hpp>
#include <chrono>
#include <nlohmann/json.hpp>
#include <set>

namespace voxsync::gateway {
namespace {

using Clock = std::chrono::steady_clock;

void SendError(httplib::Response& res, int status, const std::string& code) {
  res.status = status;
  res.set_content(nlohmann::json{{"error", code}}.dump(), "application/json");
}

// Headers that describe a single hop, plus the pseudo headers httplib adds
// to incoming requests.
bool IsHopHeader(const std::string& name) {
  static const std::set<std::string, httplib::detail::ci> kHop = {
      "Connection", "Keep-Alive", "Transfer-Encoding", "Upgrade", "Content-Length",
      "Host", "Proxy-Connection", "TE", "Trailer", "REMOTE_ADDR", "REMOTE_PORT",
      "LOCAL_ADDR", "LOCAL_PORT"};
  return kHop.count(name) > 0;
}

}  // namespace

std::string NewRequestId() {
  thread_local boost::uuids::random_generator gen;
  return boost::uuids::to_string(gen());
}

Gateway::Gateway(GatewayConfig config, AccessLog log)
    : config_(std::move(config)),
      log_(std::move(log)),
      keystore_(LoadKeystore(config_.keystore_path)),
      routes_(config_.routes),
      server_(std::make_unique<httplib::Server>()) {
  const int threads = config_.threads;
  server_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };

  if (!config_.demo_dir.empty() && !server_->set_mount_point("/demo", config_.demo_dir.string())) {
    throw GatewayConfigError("demo_dir is not a directory: " + config_.demo_dir.string());
  }

  server_->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });

  auto handle = [this](const httplib::Request& req, httplib::Response& res) {
    const auto start = Clock::now();
    AccessRecord rec;
    rec.request_id = req.get_header_value("X-Request-Id");
    if (rec.request_id.empty()) rec.request_id = NewRequestId();
    rec.method = req.method;
    rec.path = req.path;

    const AuthDecision auth =
        req.has_header("X-Api-Key")
            ? keystore_.Authenticate(req.get_header_value("X-Api-Key"))
            : keystore_.Authenticate(std::nullopt);
    if (!auth.allowed()) {
      SendError(res, auth.status(), auth.reason());
    } else if (req.method == "POST" && req.path == "/admin/reload-keystore") {
      rec.label = auth.label;
      try {
        const std::size_t n = ReloadKeystore();
        res.set_content(nlohmann::json{{"keys", n}}.dump(), "application/json");
      } catch (const std::exception& e) {
        res.status = 422;
        res.set_content(nlohmann::json{{"error", "keystore_rejected"}, {"message", e.what()}}
                            .dump(),
                        "application/json");
      }
    } else if (const Route* route = routes_.Match(req.path); route == nullptr) {
      rec.label = auth.label;
      SendError(res, 404, "no_route");
    } else {
      rec.label = auth.label;
      httplib::Client client(route->upstream);
      client.set_connection_timeout(std::chrono::milliseconds(config_.connect_timeout_ms));
      client.set_read_timeout(std::chrono::milliseconds(config_.read_timeout_ms));
      client.set_write_timeout(std::chrono::milliseconds(config_.read_timeout_ms));

      httplib::Request up;
      up.method = req.method;
      up.path = req.target.empty() ? req.path : req.target;
      for (const auto& [name, value] : req.headers) {
        if (!IsHopHeader(name) && !httplib::detail::compare_case_ignore(name, "X-Request-Id")) {
          up.headers.emplace(name, value);
        }
      }
      up.headers.emplace("X-Request-Id", rec.request_id);
      up.body = req.body;

      const auto sent = Clock::now();
      httplib::Result r = client.send(up);
      if (r) {
        res.status = r->status;
        for (const auto& [name, value] : r->headers) {
          if (!IsHopHeader(name)) res.headers.emplace(name, value);
        }
        res.body = std::move(r->body);
      } else {
        const auto waited = std::chrono::duration_cast<std::chrono::milliseconds>(
            Clock::now() - sent);
        const bool timed_out =
            r.error() == httplib::Error::Read && waited.count() >= config_.read_timeout_ms;
        if (timed_out) {
          SendError(res, 504, "upstream_timeout");
        } else {
          SendError(res, 502, "upstream_unreachable");
        }
      }
    }

    res.set_header("X-Request-Id", rec.request_id);
    rec.status = res.status;
    rec.latency_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (log_) log_(rec);
  };

  server_->Get(".*", handle);
  server_->Post(".*", handle);
  server_->Put(".*", handle);
  server_->Delete(".*", handle);
  server_->Patch(".*", handle);
}

Gateway::~Gateway() { Stop(); }

std::size_t Gateway::ReloadKeystore() { return keystore_.Reload(config_.keystore_path); }

int Gateway::Start() {
  const int bound = config_.port == 0
                        ? server_->bind_to_any_port(config_.host)
                        : (server_->bind_to_port(config_.host, config_.port) ? config_.port : -1);
  if (bound < 0) {
    throw Error("cannot bind " + config_.host + ":" + std::to_string(config_.port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void Gateway::Run() {
  if (!server_->listen(config_.host, config_.port)) {
    throw Error("cannot listen on " + config_.host + ":" + std::to_string(config_.port));
  }
}

void Gateway::Stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace voxsync::gateway
