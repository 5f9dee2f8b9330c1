// Copyright 2026 The qnn-lens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <string>

#include "qnn_lens/qnn_lens.h"

namespace qnn_lens::tools {

/// cpp-httplib front end for a qnn_service handle. Every GET is answered by
/// qnn_service_get; other methods get a 404 ApiError. The service handle
/// must outlive the server.
class HttpServer {
  public:
    HttpServer(const qnn_service *service, std::string cors_origin = "*");
    ~HttpServer();

    HttpServer(const HttpServer &) = delete;
    HttpServer &operator=(const HttpServer &) = delete;

    /// Binds without serving. port 0 picks a free port. Returns the bound
    /// port, or -1.
    int bind(const std::string &host, int port);

    /// Blocks until stop().
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace qnn_lens::tools
