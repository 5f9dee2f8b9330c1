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

#include <cstdint>
#include <string>
#include <vector>

#include "circuit.hpp"

namespace qnn_lens {

enum class ClassLabel { A, B };

const char *class_label_name(ClassLabel label);
ClassLabel class_label_from_name(const std::string &name);

/// +1 for class A, -1 for class B.
inline double label_target(ClassLabel label) { return label == ClassLabel::A ? 1.0 : -1.0; }

/// Class A iff expectation >= 0; an exact zero goes to A.
inline ClassLabel predict_class(double expectation) { return expectation >= 0.0 ? ClassLabel::A : ClassLabel::B; }

struct DataPoint {
    std::string id;
    FeatureVector features;
    ClassLabel label = ClassLabel::A;

    bool operator==(const DataPoint &) const = default;
};

struct LabeledDataset {
    /// Generator name ("blobs", "circles") or "custom".
    std::string kind = "custom";
    std::vector<DataPoint> points;

    bool operator==(const LabeledDataset &) const = default;
};

/// Throws InvalidArgument on duplicate ids or features outside [-1, 1].
void validate_dataset(const LabeledDataset &dataset);
bool has_both_classes(const LabeledDataset &dataset);

enum class OptimizerKind { Adam, SGD };

const char *optimizer_name(OptimizerKind kind);
OptimizerKind optimizer_from_name(const std::string &name);

struct TrainConfig {
    int epochs = 100;
    double learning_rate = 0.05;
    std::uint64_t seed = 42;
    OptimizerKind optimizer = OptimizerKind::Adam;

    bool operator==(const TrainConfig &) const = default;
};

void validate_config(const TrainConfig &config);

struct TrainingSnapshot {
    int epoch = 0;
    ParameterVector thetas;
    double loss = 0.0;
    double accuracy = 0.0;

    bool operator==(const TrainingSnapshot &) const = default;
};

/// Pauli-Z expectation on the circuit's measured qubit.
double circuit_expectation(const CircuitSpec &spec, std::span<const double> features, std::span<const double> params);

/// Mean squared error between expectation and the +/-1 target.
double expectation_loss(const CircuitSpec &spec, std::span<const double> params, const LabeledDataset &dataset);

/// Fraction of points whose predicted class matches the label.
double accuracy(const CircuitSpec &spec, std::span<const double> params, const LabeledDataset &dataset);

/// dLoss/dtheta via the two-term shift rule at +/- pi/2, chained through the
/// squared error.
std::vector<double> parameter_shift_gradient(const CircuitSpec &spec, std::span<const double> params,
                                             const LabeledDataset &dataset);

/// Uniform [0, 2pi) draws from a seeded mt19937_64.
ParameterVector initial_parameters(int count, std::uint64_t seed);

/// Full-batch training. Returns config.epochs + 1 snapshots; snapshot 0 is
/// the initialization and snapshot e holds the parameters after e updates.
std::vector<TrainingSnapshot> train(const CircuitSpec &spec, const LabeledDataset &dataset, const TrainConfig &config);

}  // namespace qnn_lens
