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

// Data model and canonical JSON codec for recorded training runs.
//
// A run lives in one directory:
//   meta.json           run id, creation time, circuit, dataset, config
//   snapshots.json      per-epoch thetas, loss, accuracy
//   traces/<epoch>.json per-datapoint, per-step state decompositions
//   grids/<epoch>.json  15 x 15 feature grid
// Every file is a JSON object carrying "schema_version": 1. Numbers use 17
// significant digits and fields are always written in the same order, so
// parse -> serialize reproduces a file byte for byte.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "analysis.hpp"
#include "circuit.hpp"
#include "dataset.hpp"
#include "json_writer.hpp"
#include "train.hpp"

namespace qnn_lens {

inline constexpr int kSchemaVersion = 1;

struct RunMeta {
    std::string run_id;
    std::string created_at;
    CircuitSpec circuit;
    LabeledDataset dataset;
    /// Present when the dataset came from generate_dataset.
    std::optional<DatasetSpec> generator;
    TrainConfig config;
    std::vector<int> sampled_epochs;

    bool operator==(const RunMeta &) const = default;
};

struct DatapointTrace {
    std::string id;
    /// One decomposition per step boundary, initial state first.
    std::vector<StateDecomposition> states;

    bool operator==(const DatapointTrace &) const = default;
};

struct EpochTrace {
    int epoch = 0;
    /// Dataset order.
    std::vector<DatapointTrace> datapoints;

    bool operator==(const EpochTrace &) const = default;
};

struct EpochGrid {
    int epoch = 0;
    std::vector<FeatureGridCell> cells;

    bool operator==(const EpochGrid &) const = default;
};

struct RunRecord {
    RunMeta meta;
    std::vector<TrainingSnapshot> snapshots;
    std::map<int, EpochTrace> traces;
    std::map<int, EpochGrid> grids;

    bool operator==(const RunRecord &) const = default;
};

struct RunSummary {
    std::string run_id;
    std::string created_at;
    std::string dataset_kind;
    int num_qubits = 0;
    int epochs = 0;
    double final_accuracy = 0.0;

    bool operator==(const RunSummary &) const = default;
};

/// Every epoch when epochs <= 100; otherwise every ceil(epochs/100)-th epoch
/// plus the first and last.
std::vector<int> default_sampled_epochs(int epochs);

void write_circuit(JsonWriter &w, const CircuitSpec &circuit);
void write_decomposition(JsonWriter &w, const StateDecomposition &d, int step);
void write_grid_cell(JsonWriter &w, const FeatureGridCell &cell);
void write_summary(JsonWriter &w, const RunSummary &summary);

std::string serialize_meta(const RunMeta &meta);
std::string serialize_snapshots(const std::string &run_id, const std::vector<TrainingSnapshot> &snapshots);
std::string serialize_epoch_trace(const EpochTrace &trace);
std::string serialize_epoch_grid(const EpochGrid &grid);

/// Bare arrays used by the export command and the HTTP API.
std::string serialize_states(const std::vector<StateDecomposition> &states);
std::string serialize_cells(const std::vector<FeatureGridCell> &cells);

/// Parsers throw SchemaError naming `source` and the offending field.
RunMeta parse_meta(std::string_view json, const std::string &source);
std::vector<TrainingSnapshot> parse_snapshots(std::string_view json, const std::string &source);
EpochTrace parse_epoch_trace(std::string_view json, const std::string &source);
EpochGrid parse_epoch_grid(std::string_view json, const std::string &source);

/// Converts and validates only the entry for `datapoint_id`; nullopt when
/// the epoch does not list it.
std::optional<DatapointTrace> parse_datapoint_trace(std::string_view json, const std::string &source, int epoch,
                                                    const std::string &datapoint_id);

RunSummary summarize(const RunMeta &meta, const std::vector<TrainingSnapshot> &snapshots);

}  // namespace qnn_lens
