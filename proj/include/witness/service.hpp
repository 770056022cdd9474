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

#ifndef WITNESS_SERVICE_HPP
#define WITNESS_SERVICE_HPP

#include <cstddef>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "witness/document.hpp"

namespace witness {

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// 200 for a witness or a safe program, 422 for the other classes.
int http_status(Classification c);

/// Overrides fields of `defaults` with those present in `j`. Unknown fields
/// and out-of-range values throw DocumentError.
SearchParams params_from_json(const Json& j, SearchParams defaults = {});

/// Request handling without the transport. Safe to call concurrently.
class CheckService {
 public:
  explicit CheckService(std::size_t cache_capacity = 64, SearchParams defaults = {});

  /// Document returned by GET /trace.
  void set_trace(TraceDocument doc);

  HttpResponse health() const;
  HttpResponse trace() const;
  /// Body: {"source": ..., "entry": ..., "params": {...}}. Only `source`
  /// is required.
  HttpResponse check(const std::string& body);

  std::size_t cache_size() const;
  std::size_t cache_hits() const;

 private:
  struct Key {
    std::size_t hash;
    std::string source;
    std::string entry;
    std::string params;
    auto operator<=>(const Key&) const = default;
  };
  using Lru = std::list<std::pair<Key, HttpResponse>>;

  std::optional<HttpResponse> lookup(const Key& k);
  void store(const Key& k, const HttpResponse& r);

  std::size_t capacity_;
  SearchParams defaults_;
  std::optional<std::string> trace_;
  mutable std::mutex mu_;
  Lru lru_;
  std::map<Key, Lru::iterator> index_;
  std::size_t hits_ = 0;
};

/// HTTP transport over a CheckService.
class HttpServer {
 public:
  /// `static_dir`, when set, is served at /.
  HttpServer(CheckService& service, std::optional<std::string> static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace witness

#endif  // WITNESS_SERVICE_HPP
