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

#include "qnn_lens/qnn_lens.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "api_service.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "json_writer.hpp"
#include "run_store.hpp"
#include "train.hpp"

struct qnn_store {
    qnn_lens::RunStore store;
};

struct qnn_service {
    qnn_lens::ApiService service;
};

namespace {

thread_local std::string last_error;

qnn_status to_status(qnn_lens::ErrorCode code) {
    switch (code) {
    case qnn_lens::ErrorCode::InvalidArgument:
        return QNN_ERR_INVALID_ARGUMENT;
    case qnn_lens::ErrorCode::NotFound:
        return QNN_ERR_NOT_FOUND;
    case qnn_lens::ErrorCode::Schema:
        return QNN_ERR_SCHEMA;
    case qnn_lens::ErrorCode::Io:
        return QNN_ERR_IO;
    case qnn_lens::ErrorCode::Internal:
        break;
    }
    return QNN_ERR_INTERNAL;
}

qnn_status fail(qnn_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Runs `body`, translating exceptions into status codes at the boundary.
template <typename F> qnn_status guarded(F &&body) {
    try {
        last_error.clear();
        body();
        return QNN_OK;
    } catch (const qnn_lens::Error &e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return fail(QNN_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(QNN_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QNN_ERR_INTERNAL, "unknown error");
    }
}

char *copy_out(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.data(), s.size());
    out[s.size()] = '\0';
    return out;
}

void require(bool condition, const char *message) {
    if (!condition) {
        throw qnn_lens::InvalidArgument(message);
    }
}

}  // namespace

extern "C" {

const char *qnn_version(void) { return "1.0.0"; }

const char *qnn_status_name(qnn_status status) {
    switch (status) {
    case QNN_OK:
        return "ok";
    case QNN_ERR_INVALID_ARGUMENT:
        return "invalid_argument";
    case QNN_ERR_NOT_FOUND:
        return "not_found";
    case QNN_ERR_SCHEMA:
        return "schema";
    case QNN_ERR_IO:
        return "io";
    case QNN_ERR_INTERNAL:
        return "internal";
    }
    return "unknown";
}

const char *qnn_last_error_message(void) { return last_error.c_str(); }

void qnn_free_string(char *s) { std::free(s); }

void qnn_train_options_init(qnn_train_options *options) {
    if (!options) {
        return;
    }
    options->qubits = 3;
    options->layers = 4;
    options->dataset = QNN_DATASET_BLOBS;
    options->points = 80;
    options->noise = 0.1;
    options->epochs = 100;
    options->learning_rate = 0.05;
    options->seed = 42;
    options->optimizer = QNN_OPTIMIZER_ADAM;
}

qnn_status qnn_store_open(const char *path, qnn_store **out_store) {
    return guarded([&] {
        require(path && *path, "store path is empty");
        require(out_store, "out_store is null");
        *out_store = new qnn_store{qnn_lens::RunStore(path)};
    });
}

void qnn_store_close(qnn_store *store) { delete store; }

qnn_status qnn_store_train(qnn_store *store, const qnn_train_options *options, char **out_run_id,
                           qnn_train_result *out_result) {
    return guarded([&] {
        require(store && options && out_run_id, "null argument");
        require(options->dataset == QNN_DATASET_BLOBS || options->dataset == QNN_DATASET_CIRCLES,
                "unknown dataset kind");
        require(options->optimizer == QNN_OPTIMIZER_ADAM || options->optimizer == QNN_OPTIMIZER_SGD,
                "unknown optimizer");

        const qnn_lens::DatasetSpec data_spec{options->dataset == QNN_DATASET_CIRCLES ? qnn_lens::DatasetKind::Circles
                                                                                      : qnn_lens::DatasetKind::Blobs,
                                              options->points, options->noise, options->seed};
        const qnn_lens::TrainConfig config{options->epochs, options->learning_rate, options->seed,
                                           options->optimizer == QNN_OPTIMIZER_SGD ? qnn_lens::OptimizerKind::SGD
                                                                                   : qnn_lens::OptimizerKind::Adam};
        qnn_lens::validate_config(config);
        const qnn_lens::CircuitSpec circuit = qnn_lens::build_default_circuit(options->qubits, 2, options->layers);
        const qnn_lens::LabeledDataset dataset = qnn_lens::generate_dataset(data_spec);
        const auto snapshots = qnn_lens::train(circuit, dataset, config);

        const qnn_lens::RunSummary summary =
            store->store.record_run({circuit, dataset, data_spec, config, snapshots, std::nullopt});
        *out_run_id = copy_out(summary.run_id);
        if (out_result) {
            out_result->initial_loss = snapshots.front().loss;
            out_result->final_loss = snapshots.back().loss;
            out_result->final_accuracy = snapshots.back().accuracy;
        }
    });
}

qnn_status qnn_store_list_runs(qnn_store *store, char **out_json) {
    return guarded([&] {
        require(store && out_json, "null argument");
        qnn_lens::JsonWriter w;
        w.begin_array();
        for (const auto &summary : store->store.list_runs()) {
            qnn_lens::write_summary(w, summary);
        }
        w.end_array();
        *out_json = copy_out(w.str());
    });
}

qnn_status qnn_store_export(qnn_store *store, const char *run_id, qnn_export_kind what, int epoch,
                            const char *datapoint_id, char **out_json) {
    return guarded([&] {
        require(store && run_id && out_json, "null argument");
        const qnn_lens::RunMeta meta = store->store.load_meta(run_id);
        bool sampled = false;
        for (int e : meta.sampled_epochs) {
            sampled = sampled || e == epoch;
        }
        if (!sampled) {
            throw qnn_lens::NotFound("epoch " + std::to_string(epoch) + " was not sampled in run '" +
                                     std::string(run_id) + "'");
        }
        if (what == QNN_EXPORT_GRID) {
            if (meta.circuit.feature_dim() != 2) {
                throw qnn_lens::NotFound("run '" + std::string(run_id) + "' has no feature grid");
            }
            *out_json = copy_out(qnn_lens::serialize_cells(store->store.load_grid(run_id, epoch).cells));
            return;
        }
        require(what == QNN_EXPORT_STATES, "unknown export kind");
        require(datapoint_id && *datapoint_id, "exporting states needs a datapoint id");
        *out_json = copy_out(
            qnn_lens::serialize_states(store->store.load_datapoint_trace(run_id, epoch, datapoint_id).states));
    });
}

qnn_status qnn_service_open(const char *store_path, qnn_service **out_service) {
    return guarded([&] {
        require(store_path && *store_path, "store path is empty");
        require(out_service, "out_service is null");
        *out_service = new qnn_service{qnn_lens::ApiService(store_path)};
    });
}

void qnn_service_close(qnn_service *service) { delete service; }

qnn_status qnn_service_get(const qnn_service *service, const char *target, int *out_http_status, char **out_body) {
    return guarded([&] {
        require(service && target && out_http_status && out_body, "null argument");
        const qnn_lens::ApiResponse response = service->service.get(target);
        *out_body = copy_out(response.body);
        *out_http_status = response.status;
    });
}

}  // extern "C"
