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

#include "api_service.hpp"

#include <charconv>
#include <vector>

#include "analysis.hpp"
#include "json_writer.hpp"

namespace qnn_lens {

namespace {

const char *status_code_name(int status) {
    switch (status) {
    case 400:
        return "bad_request";
    case 404:
        return "not_found";
    default:
        return "internal";
    }
}

std::vector<std::string_view> split_path(std::string_view path) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (pos <= path.size()) {
        const std::size_t next = path.find('/', pos);
        const std::string_view part = path.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        if (!part.empty()) {
            parts.push_back(part);
        }
        if (next == std::string_view::npos) {
            break;
        }
        pos = next + 1;
    }
    return parts;
}

bool parse_epoch(std::string_view text, int &epoch) {
    const char *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, epoch);
    return ec == std::errc() && ptr == end;
}

std::string render_metrics(const RunMeta &meta, const std::vector<TrainingSnapshot> &snapshots) {
    JsonWriter w;
    w.begin_object();
    w.field("run_id", meta.run_id);
    w.key("epochs").begin_array();
    for (const auto &s : snapshots) {
        w.value(s.epoch);
    }
    w.end_array();
    w.key("loss").begin_array();
    for (const auto &s : snapshots) {
        w.value(s.loss);
    }
    w.end_array();
    w.key("accuracy").begin_array();
    for (const auto &s : snapshots) {
        w.value(s.accuracy);
    }
    w.end_array();
    // One series per parameter slot, indexed by epoch.
    w.key("theta_series").begin_array();
    for (int slot = 0; slot < meta.circuit.num_parameters(); ++slot) {
        w.begin_array();
        for (const auto &s : snapshots) {
            w.value(s.thetas[static_cast<std::size_t>(slot)]);
        }
        w.end_array();
    }
    w.end_array();
    w.end_object();
    return w.take();
}

std::string render_angles(const std::vector<AngleDelta> &row) {
    JsonWriter w;
    w.begin_array();
    for (const AngleDelta &d : row) {
        w.begin_object();
        w.field("param_slot", d.param_slot);
        w.field("epoch", d.epoch);
        w.field("delta", d.delta);
        w.field("magnitude", d.magnitude);
        w.end_object();
    }
    w.end_array();
    return w.take();
}

}  // namespace

ApiResponse api_error(int status, const std::string &message) {
    JsonWriter w;
    w.begin_object();
    w.field("http_status", status);
    w.field("code", status_code_name(status));
    w.field("message", message);
    w.end_object();
    return {status, w.take()};
}

ApiResponse api_error_for(const Error &error) {
    switch (error.code()) {
    case ErrorCode::NotFound:
        return api_error(404, error.what());
    case ErrorCode::InvalidArgument:
        return api_error(400, error.what());
    default:
        return api_error(500, error.what());
    }
}

ApiService::ApiService(std::filesystem::path store_root, std::size_t cache_entries)
    : store_(std::move(store_root)), cache_entries_(cache_entries == 0 ? 1 : cache_entries) {
    const std::vector<RunSummary> summaries = store_.list_runs();
    JsonWriter list;
    list.begin_array();
    for (const RunSummary &summary : summaries) {
        write_summary(list, summary);
        RunEntry e{store_.load_meta(summary.run_id), {}, 0, {}, {}, {}};
        const std::vector<TrainingSnapshot> snapshots = store_.load_snapshots(summary.run_id);
        e.sampled.insert(e.meta.sampled_epochs.begin(), e.meta.sampled_epochs.end());
        e.epochs = static_cast<int>(snapshots.size()) - 1;
        e.meta_json = serialize_meta(e.meta);
        e.metrics_json = render_metrics(e.meta, snapshots);
        for (const auto &row : angle_deltas(snapshots)) {
            e.angles_json.push_back(render_angles(row));
        }
        runs_.emplace(summary.run_id, std::move(e));
    }
    list.end_array();
    runs_json_ = list.take();

    // Directories that look like runs but did not make it into the listing.
    std::error_code ec;
    if (std::filesystem::is_directory(store_.root(), ec)) {
        for (const auto &dir : std::filesystem::directory_iterator(store_.root(), ec)) {
            const std::string id = dir.path().filename().string();
            if (!dir.is_directory() || !is_valid_run_id(id) || runs_.count(id)) {
                continue;
            }
            try {
                store_.load_meta(id);
                store_.load_snapshots(id);
                broken_.emplace(id, "run '" + id + "' failed validation");
            } catch (const Error &err) {
                broken_.emplace(id, err.what());
            }
        }
    }
}

const ApiService::RunEntry &ApiService::entry(const std::string &run_id) const {
    auto it = runs_.find(run_id);
    if (it != runs_.end()) {
        return it->second;
    }
    auto bad = broken_.find(run_id);
    if (bad != broken_.end()) {
        throw Error(ErrorCode::Schema, bad->second);
    }
    throw NotFound("run '" + run_id + "' not found");
}

template <typename Render>
std::shared_ptr<const std::string> ApiService::cached(const CacheKey &key, Render &&render) const {
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            return it->second;
        }
    }
    // Rendering goes through the parser, which validates what gets served.
    auto value = std::make_shared<const std::string>(render());
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (cache_.emplace(key, value).second) {
        cache_order_.push_back(key);
        while (cache_order_.size() > cache_entries_) {
            cache_.erase(cache_order_.front());
            cache_order_.pop_front();
        }
    }
    return value;
}

ApiResponse ApiService::get(std::string_view target) const {
    const std::size_t query = target.find_first_of("?#");
    try {
        return route(target.substr(0, query));
    } catch (const Error &e) {
        return api_error_for(e);
    } catch (const std::exception &e) {
        return api_error(500, e.what());
    }
}

ApiResponse ApiService::route(std::string_view path) const {
    const std::vector<std::string_view> parts = split_path(path);
    const std::string not_found = "no route for " + std::string(path);
    if (parts.size() < 2 || parts[0] != "api" || parts[1] != "runs") {
        return api_error(404, not_found);
    }
    if (parts.size() == 2) {
        return {200, runs_json_};
    }
    const std::string run_id(parts[2]);
    if (parts.size() == 3) {
        return {200, entry(run_id).meta_json};
    }
    if (parts.size() == 4 && parts[3] == "metrics") {
        return {200, entry(run_id).metrics_json};
    }
    if (parts.size() < 6 || parts[3] != "epochs") {
        return api_error(404, not_found);
    }

    const bool is_grid = parts.size() == 6 && parts[5] == "grid";
    const bool is_angles = parts.size() == 6 && parts[5] == "angles";
    const bool is_states = parts.size() == 8 && parts[5] == "datapoints" && parts[7] == "states";
    if (!is_grid && !is_angles && !is_states) {
        return api_error(404, not_found);
    }

    const RunEntry &run = entry(run_id);
    int epoch = 0;
    if (!parse_epoch(parts[4], epoch)) {
        return api_error(400, "epoch '" + std::string(parts[4]) + "' is not an integer");
    }
    if (is_angles) {
        if (epoch < 0 || epoch > run.epochs) {
            return api_error(404, "epoch " + std::to_string(epoch) + " not in run '" + run_id + "'");
        }
        return {200, run.angles_json[static_cast<std::size_t>(epoch)]};
    }
    if (!run.sampled.count(epoch)) {
        return api_error(404, "epoch " + std::to_string(epoch) + " was not sampled in run '" + run_id + "'");
    }
    if (is_grid) {
        if (run.meta.circuit.feature_dim() != 2) {
            return api_error(404, "run '" + run_id + "' has no feature grid");
        }
        return {200, *cached({run_id, epoch, ""}, [&] { return serialize_cells(store_.load_grid(run_id, epoch).cells); })};
    }
    const std::string datapoint(parts[6]);
    return {200, *cached({run_id, epoch, datapoint}, [&] {
                return serialize_states(store_.load_datapoint_trace(run_id, epoch, datapoint).states);
            })};
}

}  // namespace qnn_lens
