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

#include "run_store.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "errors.hpp"

namespace qnn_lens {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
        throw IoError("write to " + path.string() + " failed");
    }
}

std::string epoch_file(int epoch) { return std::to_string(epoch) + ".json"; }

void check_inputs(const RunInputs &in, const std::vector<int> &sampled) {
    const CircuitSpec &circuit = in.circuit;
    validate_config(in.config);
    validate_dataset(in.dataset);
    if (in.snapshots.size() != static_cast<std::size_t>(in.config.epochs) + 1) {
        throw InvalidArgument("expected " + std::to_string(in.config.epochs + 1) + " snapshots, got " +
                              std::to_string(in.snapshots.size()));
    }
    for (std::size_t e = 0; e < in.snapshots.size(); ++e) {
        const TrainingSnapshot &s = in.snapshots[e];
        if (s.epoch != static_cast<int>(e)) {
            throw InvalidArgument("snapshot epochs must be contiguous from 0");
        }
        if (s.thetas.size() != static_cast<std::size_t>(circuit.num_parameters())) {
            throw InvalidArgument("snapshot " + std::to_string(e) + " has the wrong parameter count");
        }
    }
    for (const DataPoint &p : in.dataset.points) {
        if (p.features.size() != static_cast<std::size_t>(circuit.feature_dim())) {
            throw InvalidArgument("datapoint '" + p.id + "' does not match the circuit's feature_dim");
        }
    }
    if (sampled.empty()) {
        throw InvalidArgument("at least one epoch must be sampled");
    }
    for (std::size_t k = 0; k < sampled.size(); ++k) {
        if (sampled[k] < 0 || sampled[k] > in.config.epochs || (k > 0 && sampled[k] <= sampled[k - 1])) {
            throw InvalidArgument("sampled epochs must be increasing and within the run");
        }
    }
}

EpochTrace compute_epoch_trace(const CircuitSpec &circuit, const LabeledDataset &dataset,
                               const TrainingSnapshot &snapshot) {
    EpochTrace trace;
    trace.epoch = snapshot.epoch;
    trace.datapoints.reserve(dataset.points.size());
    for (const DataPoint &p : dataset.points) {
        DatapointTrace t{p.id, {}};
        for (const StateVector &state : run_with_trace(circuit, p.features, snapshot.thetas)) {
            t.states.push_back(decompose(state));
        }
        trace.datapoints.push_back(std::move(t));
    }
    return trace;
}

}  // namespace

bool is_valid_run_id(const std::string &run_id) {
    if (run_id.empty() || run_id.front() == '.' || run_id.size() > 128) {
        return false;
    }
    return std::all_of(run_id.begin(), run_id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_' ||
               c == '.';
    });
}

RunStore::RunStore(fs::path root) : root_(std::move(root)) {}

fs::path RunStore::run_dir(const std::string &run_id) const {
    if (!is_valid_run_id(run_id)) {
        throw NotFound("run '" + run_id + "' not found");
    }
    fs::path dir = root_ / run_id;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw NotFound("run '" + run_id + "' not found");
    }
    return dir;
}

std::string RunStore::allocate_run_id(std::uint64_t seed, std::string &created_at) const {
    const auto now = std::chrono::system_clock::now();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    const std::time_t secs = std::chrono::system_clock::to_time_t(now);
    std::tm utc{};
    gmtime_r(&secs, &utc);

    char iso[64];
    std::snprintf(iso, sizeof(iso), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", utc.tm_year + 1900, utc.tm_mon + 1,
                  utc.tm_mday, utc.tm_hour, utc.tm_min, utc.tm_sec, static_cast<int>(ms));
    created_at = iso;

    char stamp[64];
    std::snprintf(stamp, sizeof(stamp), "%04d%02d%02dT%02d%02d%02d%03dZ", utc.tm_year + 1900, utc.tm_mon + 1,
                  utc.tm_mday, utc.tm_hour, utc.tm_min, utc.tm_sec, static_cast<int>(ms));
    const std::string base = std::string(stamp) + "-s" + std::to_string(seed);
    std::string id = base;
    std::error_code ec;
    for (int n = 2; fs::exists(root_ / id, ec); ++n) {
        id = base + "-" + std::to_string(n);
    }
    return id;
}

RunSummary RunStore::record_run(const RunInputs &in) {
    const std::vector<int> sampled = in.sampled_epochs.value_or(default_sampled_epochs(in.config.epochs));
    check_inputs(in, sampled);

    RunMeta meta{"", "", in.circuit, in.dataset, in.generator, in.config, sampled};

    fs::path staging;
    try {
        fs::create_directories(root_);
        meta.run_id = allocate_run_id(in.config.seed, meta.created_at);

        std::random_device rd;
        staging = root_ / (".staging-" + meta.run_id + "-" + std::to_string(rd()));
        fs::create_directory(staging);
        fs::create_directory(staging / "traces");
        fs::create_directory(staging / "grids");

        write_file(staging / "meta.json", serialize_meta(meta));
        write_file(staging / "snapshots.json", serialize_snapshots(meta.run_id, in.snapshots));
        for (int epoch : sampled) {
            const TrainingSnapshot &snap = in.snapshots[static_cast<std::size_t>(epoch)];
            write_file(staging / "traces" / epoch_file(epoch),
                       serialize_epoch_trace(compute_epoch_trace(in.circuit, in.dataset, snap)));
            if (in.circuit.feature_dim() == 2) {
                write_file(staging / "grids" / epoch_file(epoch),
                           serialize_epoch_grid({epoch, feature_grid(in.circuit, snap.thetas)}));
            }
        }
        fs::rename(staging, root_ / meta.run_id);
    } catch (const fs::filesystem_error &e) {
        std::error_code ec;
        if (!staging.empty()) {
            fs::remove_all(staging, ec);
        }
        throw IoError(std::string("recording run failed: ") + e.what());
    } catch (...) {
        std::error_code ec;
        if (!staging.empty()) {
            fs::remove_all(staging, ec);
        }
        throw;
    }
    return summarize(meta, in.snapshots);
}

std::string RunStore::read_file(const std::string &run_id, const std::string &relative) const {
    const fs::path path = run_dir(run_id) / relative;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw NotFound("run '" + run_id + "' has no " + relative);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("reading " + path.string() + " failed");
    }
    return buf.str();
}

RunMeta RunStore::load_meta(const std::string &run_id) const {
    RunMeta meta = parse_meta(read_file(run_id, "meta.json"), run_id + "/meta.json");
    if (meta.run_id != run_id) {
        throw SchemaError(run_id + "/meta.json: field 'run_id' does not match the run directory");
    }
    return meta;
}

std::vector<TrainingSnapshot> RunStore::load_snapshots(const std::string &run_id) const {
    return parse_snapshots(read_file(run_id, "snapshots.json"), run_id + "/snapshots.json");
}

EpochTrace RunStore::load_trace(const std::string &run_id, int epoch) const {
    const std::string rel = "traces/" + epoch_file(epoch);
    EpochTrace trace = parse_epoch_trace(read_file(run_id, rel), run_id + "/" + rel);
    if (trace.epoch != epoch) {
        throw SchemaError(run_id + "/" + rel + ": field 'epoch' does not match the file name");
    }
    return trace;
}

DatapointTrace RunStore::load_datapoint_trace(const std::string &run_id, int epoch,
                                              const std::string &datapoint_id) const {
    const std::string rel = "traces/" + epoch_file(epoch);
    auto trace = parse_datapoint_trace(read_file(run_id, rel), run_id + "/" + rel, epoch, datapoint_id);
    if (!trace) {
        throw NotFound("datapoint '" + datapoint_id + "' not in run '" + run_id + "'");
    }
    return std::move(*trace);
}

EpochGrid RunStore::load_grid(const std::string &run_id, int epoch) const {
    const std::string rel = "grids/" + epoch_file(epoch);
    EpochGrid grid = parse_epoch_grid(read_file(run_id, rel), run_id + "/" + rel);
    if (grid.epoch != epoch) {
        throw SchemaError(run_id + "/" + rel + ": field 'epoch' does not match the file name");
    }
    return grid;
}

RunRecord RunStore::load_run(const std::string &run_id) const {
    RunRecord record{load_meta(run_id), load_snapshots(run_id), {}, {}};
    const RunMeta &meta = record.meta;
    const std::string prefix = run_id + "/";

    if (record.snapshots.size() != static_cast<std::size_t>(meta.config.epochs) + 1) {
        throw SchemaError(prefix + "snapshots.json: field 'snapshots' does not cover every epoch");
    }
    for (const TrainingSnapshot &s : record.snapshots) {
        if (s.thetas.size() != static_cast<std::size_t>(meta.circuit.num_parameters())) {
            throw SchemaError(prefix + "snapshots.json: field 'snapshots[" + std::to_string(s.epoch) +
                              "].thetas' has the wrong length");
        }
    }

    std::set<std::string> ids;
    for (const DataPoint &p : meta.dataset.points) {
        ids.insert(p.id);
    }
    const std::size_t step_count = meta.circuit.steps().size() + 1;
    for (int epoch : meta.sampled_epochs) {
        EpochTrace trace = load_trace(run_id, epoch);
        const std::string rel = prefix + "traces/" + epoch_file(epoch);
        for (const DatapointTrace &dp : trace.datapoints) {
            if (!ids.count(dp.id)) {
                throw SchemaError(rel + ": field 'datapoints' references unknown datapoint '" + dp.id + "'");
            }
            if (dp.states.size() != step_count) {
                throw SchemaError(rel + ": field 'states' of '" + dp.id + "' has the wrong step count");
            }
            for (const StateDecomposition &d : dp.states) {
                if (d.num_qubits != meta.circuit.num_qubits()) {
                    throw SchemaError(rel + ": field 'num_qubits' disagrees with the circuit");
                }
            }
        }
        record.traces.emplace(epoch, std::move(trace));
        if (meta.circuit.feature_dim() == 2) {
            record.grids.emplace(epoch, load_grid(run_id, epoch));
        }
    }
    return record;
}

std::vector<RunSummary> RunStore::list_runs() const {
    std::vector<RunSummary> out;
    std::error_code ec;
    if (!fs::is_directory(root_, ec)) {
        return out;
    }
    for (const auto &entry : fs::directory_iterator(root_, ec)) {
        const std::string id = entry.path().filename().string();
        if (!entry.is_directory() || !is_valid_run_id(id)) {
            continue;
        }
        try {
            out.push_back(summarize(load_meta(id), load_snapshots(id)));
        } catch (const Error &) {
            continue;
        }
    }
    std::sort(out.begin(), out.end(), [](const RunSummary &a, const RunSummary &b) {
        return std::tie(a.created_at, a.run_id) < std::tie(b.created_at, b.run_id);
    });
    return out;
}

}  // namespace qnn_lens
