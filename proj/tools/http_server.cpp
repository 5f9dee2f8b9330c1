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

#include "http_server.hpp"

#include "httplib.h"

namespace qnn_lens::tools {

namespace {

constexpr const char *kJson = "application/json";

void add_cors(httplib::Response &res, const std::string &origin) {
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
}

}  // namespace

struct HttpServer::Impl {
    const qnn_service *service;
    std::string cors_origin;
    httplib::Server server;

    void handle_get(const httplib::Request &req, httplib::Response &res) {
        int status = 500;
        char *body = nullptr;
        if (qnn_service_get(service, req.path.c_str(), &status, &body) != QNN_OK) {
            res.status = 500;
            res.set_content(std::string(R"({"http_status":500,"code":"internal","message":"service failure"})"), kJson);
        } else {
            res.status = status;
            res.set_content(body, kJson);
            qnn_free_string(body);
        }
        add_cors(res, cors_origin);
    }

    void reject(const httplib::Request &req, httplib::Response &res) {
        res.status = 404;
        res.set_content(R"({"http_status":404,"code":"not_found","message":"no route for )" + req.method +
                            R"( requests; the API is read-only"})",
                        kJson);
        add_cors(res, cors_origin);
    }
};

HttpServer::HttpServer(const qnn_service *service, std::string cors_origin)
    : impl_(std::make_unique<Impl>()) {
    impl_->service = service;
    impl_->cors_origin = std::move(cors_origin);
    Impl *impl = impl_.get();
    impl->server.Get(".*", [impl](const httplib::Request &req, httplib::Response &res) { impl->handle_get(req, res); });
    impl->server.Options(".*", [impl](const httplib::Request &, httplib::Response &res) {
        res.status = 204;
        add_cors(res, impl->cors_origin);
    });
    auto reject = [impl](const httplib::Request &req, httplib::Response &res) { impl->reject(req, res); };
    impl->server.Post(".*", reject);
    impl->server.Put(".*", reject);
    impl->server.Patch(".*", reject);
    impl->server.Delete(".*", reject);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string &host, int port) {
    if (port == 0) {
        return impl_->server.bind_to_any_port(host);
    }
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_->server.is_running()) {
        impl_->server.stop();
    }
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace qnn_lens::tools
