#include "voxsync/gateway/config.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace voxsync::gateway {
namespace fs = std::filesystem;

namespace {

void CheckUpstream(const std::string& upstream) {
  constexpr std::string_view kScheme = "http://";
  if (upstream.rfind(kScheme, 0) != 0) {
    throw GatewayConfigError("upstream must start with http://, got '" + upstream + "'");
  }
  const std::string_view origin = std::string_view(upstream).substr(kScheme.size());
  if (origin.empty() || origin.find('/') != std::string_view::npos) {
    throw GatewayConfigError("upstream must be a bare origin http://host:port, got '" +
                             upstream + "'");
  }
}

fs::path Resolve(const fs::path& base, const fs::path& p) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

std::optional<std::string> String(const toml::table& t, std::string_view key) {
  const toml::node* n = t.get(key);
  if (n == nullptr) return std::nullopt;
  const auto v = n->value<std::string>();
  if (!v) throw GatewayConfigError(std::string(key) + " must be a string");
  return v;
}

int Positive(const toml::table& t, std::string_view key, int fallback) {
  const toml::node* n = t.get(key);
  if (n == nullptr) return fallback;
  const auto v = n->value<std::int64_t>();
  if (!v || *v <= 0 || *v > 1'000'000'000) {
    throw GatewayConfigError(std::string(key) + " must be a positive integer");
  }
  return static_cast<int>(*v);
}

void ApplyListen(std::string_view listen, GatewayConfig& c) {
  const auto parts = SplitListen(listen);
  if (!parts) {
    throw GatewayConfigError("listen must be host:port, got '" + std::string(listen) + "'");
  }
  c.host = parts->first;
  c.port = parts->second;
}

}  // namespace

RouteTable::RouteTable(std::vector<Route> routes) : routes_(std::move(routes)) {
  std::set<std::string> seen;
  for (const Route& r : routes_) {
    if (r.prefix.empty() || r.prefix.front() != '/') {
      throw GatewayConfigError("route prefix must start with '/', got '" + r.prefix + "'");
    }
    if (!seen.insert(r.prefix).second) {
      throw GatewayConfigError("duplicate route prefix '" + r.prefix + "'");
    }
    CheckUpstream(r.upstream);
  }
  std::stable_sort(routes_.begin(), routes_.end(), [](const Route& a, const Route& b) {
    return a.prefix.size() > b.prefix.size();
  });
}

const Route* RouteTable::Match(std::string_view path) const {
  for (const Route& r : routes_) {
    if (path.substr(0, r.prefix.size()) == r.prefix) return &r;
  }
  return nullptr;
}

std::vector<Route> DefaultRoutes(const std::string& upstream) {
  return {{"/v1/tts/", upstream}, {"/audio/", upstream}};
}

GatewayConfig ParseGatewayConfig(std::string_view text, const fs::path& base_dir,
                                 const EnvLookup& env) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config line " << e.source().begin.line << ": " << e.description();
    throw GatewayConfigError(msg.str());
  }

  GatewayConfig c;
  if (auto v = String(root, "listen")) ApplyListen(*v, c);
  if (auto v = String(root, "keystore")) c.keystore_path = *v;
  if (auto v = String(root, "demo_dir")) c.demo_dir = *v;
  c.threads = Positive(root, "threads", c.threads);
  if (const toml::table* t = root["timeouts"].as_table()) {
    c.connect_timeout_ms = Positive(*t, "connect_ms", c.connect_timeout_ms);
    c.read_timeout_ms = Positive(*t, "read_ms", c.read_timeout_ms);
  }
  const std::string upstream = String(root, "upstream").value_or("http://127.0.0.1:8080");
  if (const toml::array* routes = root["routes"].as_array()) {
    for (const toml::node& node : *routes) {
      const toml::table* t = node.as_table();
      if (t == nullptr) throw GatewayConfigError("[[routes]] entries must be tables");
      const auto prefix = String(*t, "prefix");
      if (!prefix) throw GatewayConfigError("route without prefix");
      c.routes.push_back({*prefix, String(*t, "upstream").value_or(upstream)});
    }
  } else {
    c.routes = DefaultRoutes(upstream);
  }

  if (auto v = env("VOXSYNC_GATEWAY_LISTEN")) ApplyListen(*v, c);
  if (auto v = env("VOXSYNC_GATEWAY_KEYSTORE")) c.keystore_path = *v;
  if (auto v = env("VOXSYNC_GATEWAY_DEMO_DIR")) c.demo_dir = *v;
  if (auto v = env("VOXSYNC_GATEWAY_UPSTREAM")) {
    for (Route& r : c.routes) r.upstream = *v;
  }
  c.keystore_path = Resolve(base_dir, c.keystore_path);
  if (!c.demo_dir.empty()) c.demo_dir = Resolve(base_dir, c.demo_dir);
  RouteTable{c.routes};  // validates
  return c;
}

GatewayConfig LoadGatewayConfig(const fs::path& file, const EnvLookup& env) {
  std::ifstream in(file);
  if (!in) throw GatewayConfigError("cannot read config " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseGatewayConfig(buf.str(), file.parent_path(), env);
}

}  // namespace voxsync::gateway
