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

#include <span>
#include <string>
#include <vector>

#include "state_vector.hpp"

namespace qnn_lens {

using ParameterVector = std::vector<double>;
using FeatureVector = std::vector<double>;

enum class StepKind { Encoding, RotationLayer, EntanglingLayer };

const char *step_kind_name(StepKind kind);
StepKind step_kind_from_name(const std::string &name);

/// Where a gate takes its rotation angle from.
enum class AngleSource { None, Feature, Parameter };

struct CircuitGate {
    GateType type = GateType::RY;
    int target = 0;
    int control = -1;
    AngleSource source = AngleSource::None;
    /// Feature index for AngleSource::Feature, parameter slot for
    /// AngleSource::Parameter, unused otherwise.
    int index = -1;

    bool operator==(const CircuitGate &) const = default;
};

struct Step {
    StepKind kind = StepKind::Encoding;
    std::vector<CircuitGate> gates;

    bool operator==(const Step &) const = default;
};

/// Encoder + ansatz as an ordered list of steps. Immutable once built; the
/// factories validate every structural invariant.
class CircuitSpec {
  public:
    /// RY(x_k) encoder, then (layers - 1) x [RY layer, CNOT ring], then a
    /// final RY layer. Slot for layer l, qubit q is l * num_qubits + q.
    static CircuitSpec build_default(int num_qubits, int feature_dim, int layers, int measured_qubit = 0);

    /// Rebuilds a circuit from its serialized parts, re-checking the
    /// invariants build_default guarantees.
    static CircuitSpec from_parts(int num_qubits, int feature_dim, int layers, int measured_qubit,
                                  std::vector<Step> steps);

    int num_qubits() const noexcept { return num_qubits_; }
    int feature_dim() const noexcept { return feature_dim_; }
    int layers() const noexcept { return layers_; }
    int measured_qubit() const noexcept { return measured_qubit_; }
    int num_parameters() const noexcept { return layers_ * num_qubits_; }
    const std::vector<Step> &steps() const noexcept { return steps_; }

    bool operator==(const CircuitSpec &) const = default;

  private:
    CircuitSpec() = default;
    void validate() const;

    int num_qubits_ = 0;
    int feature_dim_ = 0;
    int layers_ = 0;
    int measured_qubit_ = 0;
    std::vector<Step> steps_;
};

CircuitSpec build_default_circuit(int num_qubits, int feature_dim, int layers);

/// Binds a circuit gate to concrete angles.
Gate bind_gate(const CircuitGate &gate, std::span<const double> datapoint, std::span<const double> params);

void apply_step(StateVector &state, const Step &step, std::span<const double> datapoint,
                std::span<const double> params);

/// State after the Encoding step applied to |0...0>.
StateVector encode(const CircuitSpec &spec, std::span<const double> datapoint);

/// Uninstrumented forward pass.
StateVector run_circuit(const CircuitSpec &spec, std::span<const double> datapoint, std::span<const double> params);

/// One state per step boundary: the initial |0...0>, then the state after
/// each step. Length is steps().size() + 1.
std::vector<StateVector> run_with_trace(const CircuitSpec &spec, std::span<const double> datapoint,
                                        std::span<const double> params);

}  // namespace qnn_lens
