/*
 * Copyright 2026 The qnn-lens Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QNN_LENS_H
#define QNN_LENS_H

/*
 * C interface to the qnn-lens core: train variational classifiers, record
 * instrumented runs into a store directory, export stored payloads and
 * answer the read-only HTTP routes.
 *
 * Every function returns a qnn_status. On failure a description is
 * available from qnn_last_error_message() on the same thread until the next
 * call. Strings handed out through char** parameters are owned by the
 * caller and must be released with qnn_free_string().
 */

#include <stdint.h>

#if defined(_WIN32)
#  if defined(QNN_LENS_BUILDING)
#    define QNN_API __declspec(dllexport)
#  else
#    define QNN_API __declspec(dllimport)
#  endif
#else
#  define QNN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qnn_status {
    QNN_OK = 0,
    QNN_ERR_INVALID_ARGUMENT = 1,
    QNN_ERR_NOT_FOUND = 2,
    QNN_ERR_SCHEMA = 3,
    QNN_ERR_IO = 4,
    QNN_ERR_INTERNAL = 5
} qnn_status;

typedef enum qnn_dataset_kind {
    QNN_DATASET_BLOBS = 0,
    QNN_DATASET_CIRCLES = 1
} qnn_dataset_kind;

typedef enum qnn_optimizer {
    QNN_OPTIMIZER_ADAM = 0,
    QNN_OPTIMIZER_SGD = 1
} qnn_optimizer;

typedef enum qnn_export_kind {
    QNN_EXPORT_GRID = 0,
    QNN_EXPORT_STATES = 1
} qnn_export_kind;

typedef struct qnn_train_options {
    int qubits;
    int layers;
    qnn_dataset_kind dataset;
    int points;
    double noise;
    int epochs;
    double learning_rate;
    uint64_t seed;
    qnn_optimizer optimizer;
} qnn_train_options;

typedef struct qnn_train_result {
    double initial_loss;
    double final_loss;
    double final_accuracy;
} qnn_train_result;

/* Opaque handles. */
typedef struct qnn_store qnn_store;
typedef struct qnn_service qnn_service;

QNN_API const char *qnn_version(void);
QNN_API const char *qnn_status_name(qnn_status status);
QNN_API const char *qnn_last_error_message(void);
QNN_API void qnn_free_string(char *s);

/* 3 qubits, 4 layers, blobs, 80 points, noise 0.1, 100 epochs, Adam
 * lr 0.05, seed 42. */
QNN_API void qnn_train_options_init(qnn_train_options *options);

/* The directory does not have to exist yet; it is created on first record. */
QNN_API qnn_status qnn_store_open(const char *path, qnn_store **out_store);
QNN_API void qnn_store_close(qnn_store *store);

/* Generates the dataset, trains, records the run. out_result may be NULL. */
QNN_API qnn_status qnn_store_train(qnn_store *store, const qnn_train_options *options, char **out_run_id,
                                   qnn_train_result *out_result);

/* JSON array of run summaries ordered by creation time. */
QNN_API qnn_status qnn_store_list_runs(qnn_store *store, char **out_json);

/* Stored payload for one sampled epoch: the 225-cell grid array, or the
 * per-step decompositions of `datapoint_id` (required for
 * QNN_EXPORT_STATES, ignored otherwise). */
QNN_API qnn_status qnn_store_export(qnn_store *store, const char *run_id, qnn_export_kind what, int epoch,
                                    const char *datapoint_id, char **out_json);

/* Snapshot of a store for serving. Runs recorded later are not visible. */
QNN_API qnn_status qnn_service_open(const char *store_path, qnn_service **out_service);
QNN_API void qnn_service_close(qnn_service *service);

/* Answers a GET for `target` (path plus optional query). Route-level
 * failures are not errors here: they come back as an ApiError JSON body
 * with the matching HTTP status and the call returns QNN_OK. */
QNN_API qnn_status qnn_service_get(const qnn_service *service, const char *target, int *out_http_status,
                                   char **out_body);

#ifdef __cplusplus
}
#endif

#endif /* QNN_LENS_H */
