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

// qnn-lens command line: train / export / list / serve.
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid flags, 3 not found.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "http_server.hpp"
#include "qnn_lens/qnn_lens.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotFound = 3;

qnn_lens::tools::HttpServer *active_server = nullptr;

void on_signal(int) {
    if (active_server) {
        active_server->stop();
    }
}

std::string resolve_store(const std::string &flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char *env = std::getenv("QNN_LENS_STORE"); env && *env) {
        return env;
    }
    return "store";
}

int report(qnn_status status) {
    std::cerr << "error (" << qnn_status_name(status) << "): " << qnn_last_error_message() << "\n";
    switch (status) {
    case QNN_ERR_INVALID_ARGUMENT:
        return kExitUsage;
    case QNN_ERR_NOT_FOUND:
        return kExitNotFound;
    default:
        return kExitFailure;
    }
}

// RAII for a store handle.
struct Store {
    qnn_store *handle = nullptr;
    ~Store() { qnn_store_close(handle); }
};

int run_train(const qnn_train_options &options, const std::string &store_path) {
    Store store;
    if (qnn_status s = qnn_store_open(store_path.c_str(), &store.handle); s != QNN_OK) {
        return report(s);
    }
    char *run_id = nullptr;
    qnn_train_result result{};
    if (qnn_status s = qnn_store_train(store.handle, &options, &run_id, &result); s != QNN_OK) {
        return report(s);
    }
    std::printf("%s\n", run_id);
    std::printf("final_accuracy %.4f\n", result.final_accuracy);
    std::printf("loss %.6f -> %.6f\n", result.initial_loss, result.final_loss);
    qnn_free_string(run_id);
    return 0;
}

int run_export(const std::string &store_path, const std::string &run_id, qnn_export_kind what, int epoch,
               const std::string &datapoint) {
    Store store;
    if (qnn_status s = qnn_store_open(store_path.c_str(), &store.handle); s != QNN_OK) {
        return report(s);
    }
    char *json = nullptr;
    if (qnn_status s = qnn_store_export(store.handle, run_id.c_str(), what, epoch, datapoint.c_str(), &json);
        s != QNN_OK) {
        return report(s);
    }
    std::fwrite(json, 1, std::char_traits<char>::length(json), stdout);
    std::fputc('\n', stdout);
    qnn_free_string(json);
    return 0;
}

int run_list(const std::string &store_path) {
    Store store;
    if (qnn_status s = qnn_store_open(store_path.c_str(), &store.handle); s != QNN_OK) {
        return report(s);
    }
    char *json = nullptr;
    if (qnn_status s = qnn_store_list_runs(store.handle, &json); s != QNN_OK) {
        return report(s);
    }
    std::printf("%s\n", json);
    qnn_free_string(json);
    return 0;
}

int run_serve(const std::string &store_path, const std::string &host, int port, const std::string &cors_origin) {
    qnn_service *service = nullptr;
    if (qnn_status s = qnn_service_open(store_path.c_str(), &service); s != QNN_OK) {
        return report(s);
    }
    int exit_code = 0;
    {
        qnn_lens::tools::HttpServer server(service, cors_origin);
        const int bound = server.bind(host, port);
        if (bound < 0) {
            std::cerr << "error: cannot bind " << host << ":" << port << "\n";
            exit_code = kExitFailure;
        } else {
            std::printf("serving %s on http://%s:%d\n", store_path.c_str(), host.c_str(), bound);
            std::fflush(stdout);
            active_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            server.listen_after_bind();
            active_server = nullptr;
        }
    }
    qnn_service_close(service);
    return exit_code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qnn-lens: train, record and serve instrumented quantum classifiers"};
    app.require_subcommand(1);

    std::string store_flag;

    qnn_train_options options;
    qnn_train_options_init(&options);
    const std::map<std::string, qnn_dataset_kind> dataset_names{{"blobs", QNN_DATASET_BLOBS},
                                                                {"circles", QNN_DATASET_CIRCLES}};
    const std::map<std::string, qnn_optimizer> optimizer_names{{"adam", QNN_OPTIMIZER_ADAM},
                                                               {"sgd", QNN_OPTIMIZER_SGD}};

    auto *train = app.add_subcommand("train", "train a classifier and record the run");
    train->add_option("--qubits", options.qubits, "number of qubits")->check(CLI::Range(2, 10))->capture_default_str();
    train->add_option("--layers", options.layers, "rotation layers")->check(CLI::Range(1, 64))->capture_default_str();
    train->add_option("--dataset", options.dataset, "blobs or circles")
        ->transform(CLI::CheckedTransformer(dataset_names))
        ->default_str("blobs");
    train->add_option("--points", options.points, "dataset size (even, >= 4)")
        ->check(CLI::Range(4, 100000))
        ->capture_default_str();
    train->add_option("--noise", options.noise, "dataset noise std")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    train->add_option("--epochs", options.epochs, "training epochs")->check(CLI::NonNegativeNumber)->capture_default_str();
    train->add_option("--lr", options.learning_rate, "learning rate")->check(CLI::PositiveNumber)->capture_default_str();
    train->add_option("--seed", options.seed, "seed for data and initialization")->capture_default_str();
    train->add_option("--optimizer", options.optimizer, "adam or sgd")
        ->transform(CLI::CheckedTransformer(optimizer_names))
        ->default_str("adam");
    train->add_option("--store", store_flag, "store directory (default $QNN_LENS_STORE or ./store)");

    std::string run_id;
    std::string what;
    int epoch = 0;
    std::string datapoint;
    auto *exporter = app.add_subcommand("export", "print a stored grid or state trace as JSON");
    exporter->add_option("run_id", run_id, "run id")->required();
    exporter->add_option("--what", what, "grid or states")->required()->check(CLI::IsMember({"grid", "states"}));
    exporter->add_option("--epoch", epoch, "sampled epoch")->required();
    exporter->add_option("--datapoint", datapoint, "datapoint id (states only)");
    exporter->add_option("--store", store_flag, "store directory");

    auto *list = app.add_subcommand("list", "list recorded runs as JSON");
    list->add_option("--store", store_flag, "store directory");

    std::string host = "127.0.0.1";
    int port = 8080;
    std::string cors_origin = "*";
    auto *serve = app.add_subcommand("serve", "serve the store over HTTP (read-only)");
    serve->add_option("--store", store_flag, "store directory");
    serve->add_option("--port", port, "port (0 picks a free one)")->check(CLI::Range(0, 65535))->capture_default_str();
    serve->add_option("--host", host, "bind address")->capture_default_str();
    serve->add_option("--cors-origin", cors_origin, "Access-Control-Allow-Origin value")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::string store_path = resolve_store(store_flag);
    if (train->parsed()) {
        return run_train(options, store_path);
    }
    if (exporter->parsed()) {
        if (what == "states" && datapoint.empty()) {
            std::cerr << "error: --what states needs --datapoint\n";
            return kExitUsage;
        }
        return run_export(store_path, run_id, what == "grid" ? QNN_EXPORT_GRID : QNN_EXPORT_STATES, epoch, datapoint);
    }
    if (list->parsed()) {
        return run_list(store_path);
    }
    return run_serve(store_path, host, port, cors_origin);
}
