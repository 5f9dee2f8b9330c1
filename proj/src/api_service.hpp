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

#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <tuple>

#include "errors.hpp"
#include "run_store.hpp"

namespace qnn_lens {

struct ApiResponse {
    int status = 200;
    std::string body;
};

/// {"http_status":..,"code":..,"message":..} with code one of not_found,
/// bad_request, internal.
ApiResponse api_error(int status, const std::string &message);
ApiResponse api_error_for(const Error &error);

/// Read-only JSON routes over a store snapshot taken at construction.
///
///   /api/runs
///   /api/runs/{id}
///   /api/runs/{id}/metrics
///   /api/runs/{id}/epochs/{e}/datapoints/{d}/states
///   /api/runs/{id}/epochs/{e}/grid
///   /api/runs/{id}/epochs/{e}/angles
///
/// Run metadata, metrics and angle deltas are rendered up front. A states
/// or grid payload is parsed (and re-validated) from its file on first
/// request and cached. Safe to call from many threads.
class ApiService {
  public:
    explicit ApiService(std::filesystem::path store_root, std::size_t cache_entries = 4096);

    /// `target` is a request path, optionally with a query string.
    ApiResponse get(std::string_view target) const;

    std::size_t run_count() const noexcept { return runs_.size(); }

  private:
    struct RunEntry {
        RunMeta meta;
        std::set<int> sampled;
        int epochs = 0;
        std::string meta_json;
        std::string metrics_json;
        /// Indexed by epoch.
        std::vector<std::string> angles_json;
    };

    using CacheKey = std::tuple<std::string, int, std::string>;

    ApiResponse route(std::string_view path) const;
    const RunEntry &entry(const std::string &run_id) const;
    template <typename Render>
    std::shared_ptr<const std::string> cached(const CacheKey &key, Render &&render) const;

    RunStore store_;
    std::string runs_json_;
    std::map<std::string, RunEntry> runs_;
    /// Runs present on disk that failed validation, with the reason.
    std::map<std::string, std::string> broken_;

    std::size_t cache_entries_;
    mutable std::mutex cache_mu_;
    mutable std::map<CacheKey, std::shared_ptr<const std::string>> cache_;
    /// Insertion order, oldest first.
    mutable std::deque<CacheKey> cache_order_;
};

}  // namespace qnn_lens
