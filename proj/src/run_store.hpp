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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "run_record.hpp"

namespace qnn_lens {

/// What record_run needs besides the training output.
struct RunInputs {
    const CircuitSpec &circuit;
    const LabeledDataset &dataset;
    std::optional<DatasetSpec> generator;
    const TrainConfig &config;
    const std::vector<TrainingSnapshot> &snapshots;
    /// Defaults to default_sampled_epochs(config.epochs).
    std::optional<std::vector<int>> sampled_epochs;
};

/// Directory-per-run store. Runs are assembled in a hidden staging
/// directory and renamed into place, so readers see complete runs or none.
/// One writer per run; any number of concurrent readers.
class RunStore {
  public:
    explicit RunStore(std::filesystem::path root);

    const std::filesystem::path &root() const noexcept { return root_; }

    /// Computes per-step decompositions and feature grids for every sampled
    /// epoch and persists the run. Traces are streamed to disk epoch by epoch,
    /// so only the summary comes back; use load_run for the full record.
    RunSummary record_run(const RunInputs &inputs);

    /// Loadable runs ordered by creation time. Directories that fail to
    /// parse are left out.
    std::vector<RunSummary> list_runs() const;

    /// Full record including every trace and grid. Throws NotFound for an
    /// unknown id and SchemaError for a corrupt file.
    RunRecord load_run(const std::string &run_id) const;

    RunMeta load_meta(const std::string &run_id) const;
    std::vector<TrainingSnapshot> load_snapshots(const std::string &run_id) const;
    EpochTrace load_trace(const std::string &run_id, int epoch) const;
    EpochGrid load_grid(const std::string &run_id, int epoch) const;

    /// Per-step decompositions of one datapoint; NotFound if the epoch was
    /// not sampled or the datapoint is unknown.
    DatapointTrace load_datapoint_trace(const std::string &run_id, int epoch, const std::string &datapoint_id) const;

    /// Raw bytes of one stored file, e.g. "grids/3.json".
    std::string read_file(const std::string &run_id, const std::string &relative) const;

  private:
    std::filesystem::path run_dir(const std::string &run_id) const;
    std::string allocate_run_id(std::uint64_t seed, std::string &created_at) const;

    std::filesystem::path root_;
};

/// Rejects empty ids and anything that could escape the store directory.
bool is_valid_run_id(const std::string &run_id);

}  // namespace qnn_lens
