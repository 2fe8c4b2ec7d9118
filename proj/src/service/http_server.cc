#include "voxsync/service/http_server.h"

#include <httplib.h>

#include <nlohmann/json.hpp>

namespace voxsync::service {
namespace {

void SendError(httplib::Response& res, ErrorCode code, const std::string& message) {
  res.status = HttpStatus(code);
  res.set_content(
      nlohmann::json{{"error", ToString(code)}, {"message", message}}.dump(),
      "application/json");
}

}  // namespace

HttpServer::HttpServer(TtsService& service, int threads)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  server_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };

  server_->Post("/v1/tts/sync", [this](const httplib::Request& req,
                                       httplib::Response& res) {
    const std::string request_id = req.get_header_value("X-Request-Id");
    if (!request_id.empty()) res.set_header("X-Request-Id", request_id);
    SynthesisRequest sreq;
    sreq.request_id = request_id;
    nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("text") ||
        !body.contains("voice") || !body["text"].is_string() ||
        !body["voice"].is_string()) {
      service_.RecordRejected(ErrorCode::kBadRequest);
      SendError(res, ErrorCode::kBadRequest,
                "body must be a JSON object with string fields text and voice");
      return;
    }
    sreq.text = body["text"].get<std::string>();
    sreq.voice = body["voice"].get<std::string>();
    try {
      const SynthesisResult r = service_.Synthesize(sreq);
      res.set_content(nlohmann::ordered_json{{"url", r.url},
                                             {"cached", r.cached},
                                             {"synthesis_ms", r.synthesis_ms},
                                             {"audio_duration_ms", r.audio_duration_ms}}
                          .dump(),
                      "application/json");
    } catch (const ServiceError& e) {
      SendError(res, e.code(), e.what());
    }
  });

  server_->Get(R"(/audio/([^/]+)/([^/]+))", [this](const httplib::Request& req,
                                                   httplib::Response& res) {
    const auto bytes = service_.store().Get(req.matches[1].str(), req.matches[2].str());
    if (!bytes) {
      SendError(res, ErrorCode::kNotFound, "no such audio object");
      return;
    }
    res.set_content(*bytes, "audio/wav");
  });

  server_->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });

  server_->Get("/metrics", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(service_.metrics().Render(), "text/plain; version=0.0.4");
  });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Start(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host)
                              : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void HttpServer::Run(const std::string& host, int port) {
  if (!server_->listen(host, port)) {
    throw Error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

void HttpServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace voxsync::service
