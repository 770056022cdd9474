// Copyright 2026 The witness authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "witness/service.hpp"

#include <functional>

#include <httplib.h>

namespace witness {

namespace {

HttpResponse json_response(int status, const Json& j) { return HttpResponse{status, "application/json", j.dump(2) + "\n"}; }

HttpResponse error_response(int status, const std::string& kind, const std::string& message) {
  return json_response(status, Json{{"error", kind}, {"message", message}});
}

template <typename T>
T bounded(const Json& j, const char* key, T lo, T hi) {
  const Json& v = j[key];
  bool ok = std::is_floating_point_v<T> ? v.is_number() : v.is_number_integer();
  if (!ok) throw DocumentError(std::string("params.") + key + ": expected a number");
  if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
    throw DocumentError(std::string("params.") + key + ": out of range");
  T x = v.get<T>();
  if (x < lo || x > hi) throw DocumentError(std::string("params.") + key + ": out of range");
  return x;
}

const char* kIndex =
    "<!doctype html><title>witness</title>"
    "<p>Endpoints: GET /health, GET /trace, POST /check.</p>\n";

}  // namespace

int http_status(Classification c) {
  return c == Classification::WitnessFound || c == Classification::Safe ? 200 : 422;
}

SearchParams params_from_json(const Json& j, SearchParams p) {
  if (!j.is_object()) throw DocumentError("params: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "num_traces") p.num_traces = bounded<std::uint64_t>(j, "num_traces", 1, 100000);
    else if (k == "step_limit") p.step_limit = bounded<std::uint64_t>(j, "step_limit", 1, 1000000);
    else if (k == "timeout_seconds") p.timeout_seconds = bounded<double>(j, "timeout_seconds", 0.001, 600.0);
    else if (k == "seed") p.seed = bounded<std::uint64_t>(j, "seed", 0, UINT64_MAX);
    else if (k == "jobs") p.jobs = bounded<unsigned>(j, "jobs", 1, 64);
    else if (k == "exhaustive") {
      if (!it->is_boolean()) throw DocumentError("params.exhaustive: expected a boolean");
      p.exhaustive = it->get<bool>();
    } else {
      throw DocumentError("params: unknown field '" + k + "'");
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// CheckService

CheckService::CheckService(std::size_t cache_capacity, SearchParams defaults)
    : capacity_(cache_capacity), defaults_(defaults) {}

void CheckService::set_trace(TraceDocument doc) {
  std::lock_guard<std::mutex> lock(mu_);
  trace_ = serialize(doc);
}

HttpResponse CheckService::health() const { return HttpResponse{200, "text/plain", "ok"}; }

HttpResponse CheckService::trace() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!trace_) return error_response(404, "no_trace", "the service was started without a trace");
  return HttpResponse{200, "application/json", *trace_};
}

HttpResponse CheckService::check(const std::string& body) {
  Json req;
  try {
    req = Json::parse(body);
  } catch (const Json::parse_error& e) {
    return error_response(400, "bad_request", std::string("malformed JSON: ") + e.what());
  }
  if (!req.is_object() || !req.contains("source") || !req["source"].is_string())
    return error_response(400, "bad_request", "expected an object with a string field 'source'");
  std::string entry;
  SearchParams params = defaults_;
  try {
    for (auto it = req.begin(); it != req.end(); ++it)
      if (it.key() != "source" && it.key() != "entry" && it.key() != "params")
        throw DocumentError("unknown field '" + it.key() + "'");
    if (req.contains("entry")) {
      if (!req["entry"].is_string()) throw DocumentError("entry: expected a string");
      entry = req["entry"].get<std::string>();
    }
    if (req.contains("params")) params = params_from_json(req["params"], defaults_);
  } catch (const DocumentError& e) {
    return error_response(400, "bad_request", e.what());
  }

  const std::string source = req["source"].get<std::string>();
  Key key{std::hash<std::string>{}(source), source, entry, ""};
  key.params = Json{{"num_traces", params.num_traces}, {"step_limit", params.step_limit},
                    {"timeout_seconds", params.timeout_seconds}, {"seed", params.seed},
                    {"exhaustive", params.exhaustive}, {"jobs", params.jobs}}
                   .dump();
  if (auto cached = lookup(key)) return *cached;

  SourceFile src("<request>", source);
  Program program;
  try {
    program = parse_program(src);
  } catch (const ParseFailure& f) {
    return json_response(400, to_json(f.error(), src));
  }
  try {
    link_entry(program, entry);
  } catch (const std::invalid_argument& e) {
    return error_response(400, "unknown_entry", e.what());
  }
  TraceDocument doc = analyze(src, entry, params);
  HttpResponse r{http_status(doc.report.classification), "application/json", serialize(doc)};
  store(key, r);
  return r;
}

std::optional<HttpResponse> CheckService::lookup(const Key& k) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  lru_.splice(lru_.begin(), lru_, it->second);
  ++hits_;
  return it->second->second;
}

void CheckService::store(const Key& k, const HttpResponse& r) {
  std::lock_guard<std::mutex> lock(mu_);
  if (capacity_ == 0 || index_.count(k)) return;
  lru_.emplace_front(k, r);
  index_[k] = lru_.begin();
  while (lru_.size() > capacity_) {
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
}

std::size_t CheckService::cache_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return lru_.size();
}

std::size_t CheckService::cache_hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

// ---------------------------------------------------------------------------
// HttpServer

struct HttpServer::Impl {
  httplib::Server server;
};

namespace {

void send(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(r.body, r.content_type);
}

}  // namespace

HttpServer::HttpServer(CheckService& service, std::optional<std::string> static_dir)
    : impl_(std::make_unique<Impl>()) {
  httplib::Server& s = impl_->server;
  s.Get("/health", [&service](const httplib::Request&, httplib::Response& res) { send(res, service.health()); });
  s.Get("/trace", [&service](const httplib::Request&, httplib::Response& res) { send(res, service.trace()); });
  s.Post("/check", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.check(req.body));
  });
  if (!static_dir || !s.set_mount_point("/", *static_dir)) {
    s.Get("/", [](const httplib::Request&, httplib::Response& res) { res.set_content(kIndex, "text/html"); });
  }
  s.set_payload_max_length(1 << 20);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace witness
