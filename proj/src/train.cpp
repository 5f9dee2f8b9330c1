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

#include "train.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "analysis.hpp"
#include "errors.hpp"

namespace qnn_lens {

const char *class_label_name(ClassLabel label) { return label == ClassLabel::A ? "A" : "B"; }

ClassLabel class_label_from_name(const std::string &name) {
    if (name == "A") {
        return ClassLabel::A;
    }
    if (name == "B") {
        return ClassLabel::B;
    }
    throw InvalidArgument("unknown class label '" + name + "'");
}

const char *optimizer_name(OptimizerKind kind) { return kind == OptimizerKind::Adam ? "adam" : "sgd"; }

OptimizerKind optimizer_from_name(const std::string &name) {
    if (name == "adam") {
        return OptimizerKind::Adam;
    }
    if (name == "sgd") {
        return OptimizerKind::SGD;
    }
    throw InvalidArgument("unknown optimizer '" + name + "'");
}

void validate_dataset(const LabeledDataset &dataset) {
    std::set<std::string> ids;
    for (const DataPoint &p : dataset.points) {
        if (!ids.insert(p.id).second) {
            throw InvalidArgument("duplicate datapoint id '" + p.id + "'");
        }
        for (double x : p.features) {
            if (!std::isfinite(x) || x < -1.0 || x > 1.0) {
                throw InvalidArgument("datapoint '" + p.id + "' has a feature outside [-1, 1]");
            }
        }
    }
}

bool has_both_classes(const LabeledDataset &dataset) {
    bool a = false;
    bool b = false;
    for (const DataPoint &p : dataset.points) {
        (p.label == ClassLabel::A ? a : b) = true;
    }
    return a && b;
}

void validate_config(const TrainConfig &config) {
    if (config.epochs < 0) {
        throw InvalidArgument("epochs must be >= 0");
    }
    if (!(config.learning_rate > 0.0) || !std::isfinite(config.learning_rate)) {
        throw InvalidArgument("learning_rate must be a positive number");
    }
}

double circuit_expectation(const CircuitSpec &spec, std::span<const double> features, std::span<const double> params) {
    return expectation_z(run_circuit(spec, features, params), spec.measured_qubit());
}

namespace {

void require_nonempty(const LabeledDataset &dataset) {
    if (dataset.points.empty()) {
        throw InvalidArgument("dataset is empty");
    }
}

}  // namespace

double expectation_loss(const CircuitSpec &spec, std::span<const double> params, const LabeledDataset &dataset) {
    require_nonempty(dataset);
    double total = 0.0;
    for (const DataPoint &p : dataset.points) {
        const double residual = circuit_expectation(spec, p.features, params) - label_target(p.label);
        total += residual * residual;
    }
    return total / static_cast<double>(dataset.points.size());
}

double accuracy(const CircuitSpec &spec, std::span<const double> params, const LabeledDataset &dataset) {
    require_nonempty(dataset);
    std::size_t correct = 0;
    for (const DataPoint &p : dataset.points) {
        if (predict_class(circuit_expectation(spec, p.features, params)) == p.label) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(dataset.points.size());
}

std::vector<double> parameter_shift_gradient(const CircuitSpec &spec, std::span<const double> params,
                                             const LabeledDataset &dataset) {
    require_nonempty(dataset);
    constexpr double kShift = std::numbers::pi / 2;
    const double scale = 2.0 / static_cast<double>(dataset.points.size());

    std::vector<double> grad(params.size(), 0.0);
    ParameterVector shifted(params.begin(), params.end());
    for (const DataPoint &p : dataset.points) {
        const double residual = circuit_expectation(spec, p.features, params) - label_target(p.label);
        for (std::size_t j = 0; j < params.size(); ++j) {
            shifted[j] = params[j] + kShift;
            const double plus = circuit_expectation(spec, p.features, shifted);
            shifted[j] = params[j] - kShift;
            const double minus = circuit_expectation(spec, p.features, shifted);
            shifted[j] = params[j];
            grad[j] += scale * residual * (plus - minus) / 2;
        }
    }
    return grad;
}

ParameterVector initial_parameters(int count, std::uint64_t seed) {
    constexpr double kFullTurn = 2 * std::numbers::pi;
    std::mt19937_64 rng(seed);
    ParameterVector thetas;
    thetas.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        // 53 high bits -> [0, 1); mt19937_64 output is fixed by the standard,
        // unlike the std:: distributions.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double theta = u * kFullTurn;
        if (theta >= kFullTurn) {
            theta = std::nextafter(kFullTurn, 0.0);
        }
        thetas.push_back(theta);
    }
    return thetas;
}

namespace {

class Adam {
  public:
    explicit Adam(std::size_t size, double lr) : lr_(lr), m_(size, 0.0), v_(size, 0.0) {}

    void step(ParameterVector &params, const std::vector<double> &grad) {
        ++t_;
        const double bias1 = 1.0 - std::pow(kBeta1, t_);
        const double bias2 = 1.0 - std::pow(kBeta2, t_);
        for (std::size_t j = 0; j < params.size(); ++j) {
            m_[j] = kBeta1 * m_[j] + (1.0 - kBeta1) * grad[j];
            v_[j] = kBeta2 * v_[j] + (1.0 - kBeta2) * grad[j] * grad[j];
            const double m_hat = m_[j] / bias1;
            const double v_hat = v_[j] / bias2;
            params[j] -= lr_ * m_hat / (std::sqrt(v_hat) + kEpsilon);
        }
    }

  private:
    static constexpr double kBeta1 = 0.9;
    static constexpr double kBeta2 = 0.999;
    static constexpr double kEpsilon = 1e-8;

    double lr_;
    int t_ = 0;
    std::vector<double> m_;
    std::vector<double> v_;
};

}  // namespace

std::vector<TrainingSnapshot> train(const CircuitSpec &spec, const LabeledDataset &dataset, const TrainConfig &config) {
    validate_config(config);
    validate_dataset(dataset);
    require_nonempty(dataset);
    if (!has_both_classes(dataset)) {
        throw InvalidArgument("training needs both classes present in the dataset");
    }

    ParameterVector params = initial_parameters(spec.num_parameters(), config.seed);
    Adam adam(params.size(), config.learning_rate);

    std::vector<TrainingSnapshot> snapshots;
    snapshots.reserve(static_cast<std::size_t>(config.epochs) + 1);
    for (int epoch = 0;; ++epoch) {
        snapshots.push_back({epoch, params, expectation_loss(spec, params, dataset), accuracy(spec, params, dataset)});
        if (epoch == config.epochs) {
            break;
        }
        const std::vector<double> grad = parameter_shift_gradient(spec, params, dataset);
        if (config.optimizer == OptimizerKind::Adam) {
            adam.step(params, grad);
        } else {
            for (std::size_t j = 0; j < params.size(); ++j) {
                params[j] -= config.learning_rate * grad[j];
            }
        }
    }
    return snapshots;
}

}  // namespace qnn_lens
